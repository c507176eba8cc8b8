"""Exact decision procedures for norm-Euclidean quartic CM-fields."""

__version__ = "0.1.0"
