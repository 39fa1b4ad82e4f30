"""Hardy Z-function lab: evaluation, zero scanning and moment checks."""
