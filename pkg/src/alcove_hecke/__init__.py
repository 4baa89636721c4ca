"""Exact computation with J-folded alcove paths and the matrix modules
they spell out for multiparameter affine Hecke algebras."""

from .rootdata import RootSystem

__all__ = ["RootSystem"]
__version__ = "0.1.0"
