"""Exact computations with Nekrasov's instanton partition function."""

__version__ = "0.1.0"
