"""Equivariant homology of finite group actions on finite simplicial complexes."""

__version__ = "0.1.0"
