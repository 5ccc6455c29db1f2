"""Exact computation of the Picard lattice of the double-sextic K3 family
w^2 = x^6 + y^6 + z^6 + t*x^2*y^2*z^2."""

__version__ = "0.1.0"
