"""Certificates and density experiments for big monodromy of hyperelliptic Jacobians."""

__version__ = "0.1.0"
