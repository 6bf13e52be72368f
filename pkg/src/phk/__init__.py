"""Exact verification of partial Hopf actions, partial smash products and partial Hopf-Galois theory."""

__version__ = "0.1.0"
