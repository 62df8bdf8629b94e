"""Exact computer algebra for top Segre classes on Hilbert schemes of K3 surfaces."""
__version__ = "0.1.0"
