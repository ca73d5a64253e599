"""Pursuit-evasion engine: cop strategies on string and planar graphs."""

__version__ = "0.1.0"
