"""Subloop lattice of the smallest nonassociative simple Moufang loop."""

from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
