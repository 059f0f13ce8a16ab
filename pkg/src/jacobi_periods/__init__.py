"""Exact and numerical tools for the Hecke action on period functions of
index-one Jacobi forms."""

from . import arith, errors, fourier, group_ring, jacobi_group
from .arith import ClassNumberTable, hurwitz, kronecker, l_zero_chi
from .fourier import JacobiExpansion, QSeries, e21_expansion
from .group_ring import FormalSum, RingBasisElement, hecke_hat, tilde_T, tilde_V
from .jacobi_group import JacobiGroupElement, compose, generator, inverse

__all__ = [
    "ClassNumberTable", "FormalSum", "JacobiExpansion", "JacobiGroupElement",
    "QSeries", "RingBasisElement", "arith", "compose", "e21_expansion",
    "errors", "fourier", "generator", "group_ring", "hecke_hat", "hurwitz",
    "inverse", "jacobi_group", "kronecker", "l_zero_chi", "tilde_T", "tilde_V",
]
__version__ = "0.1.0"
