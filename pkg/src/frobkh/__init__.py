"""Khovanov-type link homology for rank-two Frobenius systems."""

__version__ = "0.1.0"
