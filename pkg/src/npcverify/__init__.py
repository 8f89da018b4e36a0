"""Verification toolkit for nonpositively curved complexes and their covers."""

__version__ = "0.1.0"
