"""Exact multivariate resultants via structured determinant quotients."""

__version__ = "0.1.0"
