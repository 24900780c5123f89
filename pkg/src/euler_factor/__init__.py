"""Euler Factor - minimum-length generalized Euler angles and bang-bang synthesis."""

__version__ = "0.1.0"
