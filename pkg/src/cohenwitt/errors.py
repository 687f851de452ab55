"""Exception classes and partial-result markers.

Faults raise a subclass of :class:`CohenWittError`.  Outcomes that the theory
treats as *partial* (an element that is not a p-th power, a vector that is not
a member of the Cohen subring, ...) are returned as :class:`Marker` singletons
instead, so callers can branch on them without exception handling.
"""

from __future__ import annotations


class Marker:
    """A named, falsy sentinel for a partial result."""

    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name

    def __bool__(self) -> bool:
        return False

    def __repr__(self) -> str:
        return self.name

    def __reduce__(self):
        return (_marker, (self.name,))


_MARKERS: dict[str, Marker] = {}


def _marker(name: str) -> Marker:
    if name not in _MARKERS:
        _MARKERS[name] = Marker(name)
    return _MARKERS[name]


NOT_A_PTH_POWER = _marker("NotAPthPower")
NOT_IN_SPAN = _marker("NotInSpan")
NOT_DIVISIBLE = _marker("NotDivisible")
NOT_MEMBER = _marker("NotMember")
NOT_IN_PERFECT_CORE = _marker("NotInPerfectCore")
NOT_INTEGRAL = _marker("NotIntegral")


def is_marker(obj) -> bool:
    return isinstance(obj, Marker)


class CohenWittError(Exception):
    """Base class for all faults raised by this package."""


class DivisionByZero(CohenWittError, ZeroDivisionError):
    pass


class FieldMismatch(CohenWittError):
    pass


class FieldError(CohenWittError):
    """Invalid field descriptor (non-prime p, reducible modulus, ...)."""


class ParseError(CohenWittError, ValueError):
    pass


class LevelError(CohenWittError):
    pass


class IndexMismatch(CohenWittError):
    pass


class RingMismatch(CohenWittError):
    pass


class ModelMismatch(CohenWittError):
    pass


class SeparabilityWitnessInvalid(CohenWittError):
    pass


class StageError(CohenWittError):
    pass


class TowerIncompatible(CohenWittError):
    def __init__(self, message: str, triple=None):
        super().__init__(message)
        self.triple = triple


class PrecisionExhausted(CohenWittError):
    pass


class PrecisionError(CohenWittError):
    pass


class SortError(CohenWittError):
    pass


class UnboundVariable(CohenWittError):
    pass
