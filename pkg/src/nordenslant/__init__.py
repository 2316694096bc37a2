"""Slant submanifolds of Norden and para-complex flat spaces: numerical classification."""

__version__ = "0.1.0"
