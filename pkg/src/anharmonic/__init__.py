"""Eigenfunctions of even polynomial oscillators and the geometry of their zeros."""

from .polynomial import EvenPolynomial, StokesGeometry, parse_potential, qes_potential, stokes

__all__ = ["EvenPolynomial", "StokesGeometry", "parse_potential", "qes_potential", "stokes"]
__version__ = "0.1.0"
