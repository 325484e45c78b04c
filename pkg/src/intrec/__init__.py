"""Exposures, intensional recursion and diagonal arguments on a runnable PCA."""

__version__ = "0.1.0"
