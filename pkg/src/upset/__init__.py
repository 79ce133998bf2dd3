"""Executable pieces of the quadratic lower bound for random universal point sets."""

__version__ = "0.1.0"
