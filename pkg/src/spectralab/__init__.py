"""Exact Laplace spectra, refined counting estimates, and averaged
counting-error profiles for a catalog of flat and round model surfaces,
with brute-force cross-checks of every closed-form identity."""

__version__ = "0.1.0"
