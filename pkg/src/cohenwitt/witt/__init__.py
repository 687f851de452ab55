"""Truncated Witt vectors."""

from .ring import (
    WittRing,
    WittVector,
    div_by_p,
    extend,
    teichmuller,
    truncate,
    verschiebung,
    witt_frobenius,
    witt_op,
    witt_ring,
)
from .structural import integral_polynomials, structural_polynomials

__all__ = [
    "WittRing",
    "WittVector",
    "div_by_p",
    "extend",
    "integral_polynomials",
    "structural_polynomials",
    "teichmuller",
    "truncate",
    "verschiebung",
    "witt_frobenius",
    "witt_op",
    "witt_ring",
]
