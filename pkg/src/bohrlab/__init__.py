"""Numerical verification of refined Bohr-type inequalities for bounded analytic functions."""

__version__ = "0.1.0"
