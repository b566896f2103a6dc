"""Keyphrase extraction with embedding-weighted graph ranking."""

__version__ = "0.1.0"
