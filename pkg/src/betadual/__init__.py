"""Exact and numeric cross-verification of the high-low temperature
duality structure of the classical (Gaussian, Laguerre, Jacobi)
beta-ensembles."""

__version__ = "0.1.0"
