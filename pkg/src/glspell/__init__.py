"""Morphological spelling checker/corrector for Modern Greek."""

__version__ = "0.1.0"
