"""Finite-temperature correlations in long-range fermionic chains.

Exact Gaussian-state simulation of quadratic lattice models (the long-range
pairing Kitaev chain in particular), Pfaffian evaluation of monomial
expectations, power-law decay-exponent extraction, and evaluators for the
analytical decay bounds, cross-checked against a brute-force Fock-space
oracle at small sizes.
"""

from . import bounds, exactfock, fit, fourier, model, thermal, wick

__all__ = ["bounds", "exactfock", "fit", "fourier", "model", "thermal", "wick"]

__version__ = "0.1.0"
