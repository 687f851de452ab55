"""Exact arithmetic in F_{p^d}(t_1, ..., t_r)."""

from .field import FieldDescriptor, FieldElement, RationalFunctionField
from .gf import GF, default_modulus, is_irreducible, is_prime
from .poly import PolyRing, poly_ring

__all__ = [
    "FieldDescriptor",
    "FieldElement",
    "RationalFunctionField",
    "GF",
    "PolyRing",
    "poly_ring",
    "default_modulus",
    "is_irreducible",
    "is_prime",
    "field_arith",
    "frobenius",
    "pth_root",
    "make_field",
]


def make_field(p: int, d: int = 1, r: int = 0, modulus=None) -> RationalFunctionField:
    return FieldDescriptor(p, d, r, tuple(modulus) if modulus else None).field()


def field_arith(op: str, x: FieldElement, y: FieldElement) -> FieldElement:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown field operation {op!r}")


def frobenius(x: FieldElement) -> FieldElement:
    return x.frobenius()


def pth_root(x: FieldElement):
    return x.pth_root()
