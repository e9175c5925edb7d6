"""Gelfand S_n-graphs."""
