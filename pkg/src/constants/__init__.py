"""Exact and numeric constants: Opial constants, moment constants, references."""
