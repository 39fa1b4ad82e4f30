"""Lower bounds for the normalized zero-gap statistic."""
