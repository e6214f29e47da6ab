"""Exact-arithmetic enumeration of rank-2 torus-fixed sheaf combinatorics on
toric 3-folds: double box configurations, Euler-characteristic generating
functions, and equivariant DT vertex measures."""

__version__ = "0.1.0"
