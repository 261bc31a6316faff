"""CAZAC sequences from Zadoff-Chu sequences interleaved by permutation polynomials."""

__version__ = "0.1.0"
