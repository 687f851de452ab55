"""The unramified valued field K = Frac(C(k)) at finite precision.

A nonzero element is p^val * u with u a unit of C_M(k), known modulo
p^(val + precision).  Zero is the single element with val = INF.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cohen import CohenRingModel
from .errors import (
    NOT_INTEGRAL,
    DivisionByZero,
    ModelMismatch,
    PrecisionError,
    PrecisionExhausted,
)
from .fields import FieldElement, RationalFunctionField
from .witt import WittVector, div_by_p, truncate, witt_ring


class _Infinity:
    """The extra element of Gamma u {inf}."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "inf"

    def __eq__(self, other) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("inf")

    def __lt__(self, other) -> bool:
        return False

    def __le__(self, other) -> bool:
        return other is self

    def __gt__(self, other) -> bool:
        return other is not self

    def __ge__(self, other) -> bool:
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__


INF = _Infinity()


def gamma_le(a, b) -> bool:
    if a is INF:
        return b is INF
    if b is INF:
        return True
    return a <= b


@dataclass(frozen=True)
class ValuedElement:
    field: "ValuedField"
    val: object  # int or INF
    unit: WittVector | None
    precision: int

    def is_zero(self) -> bool:
        return self.val is INF

    def __add__(self, other):
        return self.field.add(self, other)

    def __sub__(self, other):
        return self.field.add(self, self.field.neg(other))

    def __neg__(self):
        return self.field.neg(self)

    def __mul__(self, other):
        return self.field.mul(self, other)

    def __truediv__(self, other):
        return self.field.div(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ValuedElement):
            return NotImplemented
        if self.val is INF or other.val is INF:
            return self.val is other.val
        if self.val != other.val:
            return False
        n = min(self.precision, other.precision)
        return truncate(self.unit, n) == truncate(other.unit, n)

    def __hash__(self) -> int:
        return hash(self.val)

    def to_json(self) -> dict:
        if self.val is INF:
            return {"val": "inf", "unit": None, "precision": self.precision}
        return {"val": self.val, "unit": self.unit.to_json(), "precision": self.precision}

    def __repr__(self) -> str:
        if self.val is INF:
            return "0"
        return f"p^{self.val}*{self.unit}"


class ValuedField:
    """K over C_M(k) with Teichmuller representatives of the variable p-basis."""

    def __init__(self, field: RationalFunctionField, M: int, model: CohenRingModel | None = None):
        if M < 1:
            raise PrecisionError("precision must be positive")
        self.k = field
        self.M = M
        self.model = model or CohenRingModel(field, M)
        if self.model.m != M or self.model.field != field:
            raise ModelMismatch("model does not match the valued field")
        self.p = field.p

    # -- constructors ---------------------------------------------------------------
    def zero(self) -> ValuedElement:
        return ValuedElement(self, INF, None, self.M)

    def one(self) -> ValuedElement:
        return ValuedElement(self, 0, self.model.ring.one(), self.M)

    def p_power(self, v: int) -> ValuedElement:
        return ValuedElement(self, v, self.model.ring.one(), self.M)

    def element(self, val: int, unit, precision: int | None = None) -> ValuedElement:
        """p^val * unit; ``unit`` is a Witt vector of C_M(k) or its Cohen digits."""
        precision = self.M if precision is None else precision
        if not 1 <= precision <= self.M:
            raise PrecisionError(f"precision {precision} outside [1, {self.M}]")
        if not isinstance(unit, WittVector):
            digits = list(unit)
            digits += [0] * (self.M - len(digits))
            unit = self.model.undigitize(digits)
        if unit.m == self.M and not self.model.is_member(unit):
            raise ModelMismatch(f"{unit} is not in {self.model}")
        if not unit.is_unit():
            raise ModelMismatch(f"{unit} is not a unit")
        return ValuedElement(self, int(val), truncate(unit, precision), precision)

    def from_integral(self, a: WittVector, precision: int | None = None) -> ValuedElement:
        """The element of O_v given by a member of C_M(k)."""
        precision = self.M if precision is None else precision
        if a.is_zero():
            return self.zero()
        v = 0
        cur = a
        while not cur.is_unit():
            cur = div_by_p(cur)
            if not isinstance(cur, WittVector):
                raise ModelMismatch(f"{a} is not in {self.model}")
            v += 1
        return ValuedElement(self, v, cur, min(cur.m, precision))

    def from_int(self, n: int) -> ValuedElement:
        if n == 0:
            return self.zero()
        v = 0
        while n % self.p == 0:
            n //= self.p
            v += 1
        return ValuedElement(self, v, self.model.ring.from_int(n), self.M)

    # -- arithmetic -----------------------------------------------------------------
    def _check(self, x: ValuedElement) -> None:
        if x.field is not self and (x.field.k != self.k or x.field.M != self.M):
            raise ModelMismatch("valued elements from different fields")

    def neg(self, x: ValuedElement) -> ValuedElement:
        self._check(x)
        if x.val is INF:
            return x
        return ValuedElement(self, x.val, -x.unit, x.precision)

    def mul(self, x: ValuedElement, y: ValuedElement) -> ValuedElement:
        self._check(x)
        self._check(y)
        if x.val is INF or y.val is INF:
            return self.zero()
        n = min(x.precision, y.precision)
        return ValuedElement(self, x.val + y.val, truncate(x.unit, n) * truncate(y.unit, n), n)

    def inverse(self, x: ValuedElement) -> ValuedElement:
        self._check(x)
        if x.val is INF:
            raise DivisionByZero("division by zero in K")
        return ValuedElement(self, -x.val, x.unit.inverse(), x.precision)

    def div(self, x: ValuedElement, y: ValuedElement) -> ValuedElement:
        return self.mul(x, self.inverse(y))

    def add(self, x: ValuedElement, y: ValuedElement) -> ValuedElement:
        self._check(x)
        self._check(y)
        if x.val is INF:
            return y
        if y.val is INF:
            return x
        if y.val < x.val:
            x, y = y, x
        d = y.val - x.val
        # x + y = p^v(x) * (u_x + p^d u_y), known modulo p^(v(x) + n)
        n = min(x.precision, y.precision + d)
        if d >= n:
            return ValuedElement(self, x.val, truncate(x.unit, n), n)
        ux = truncate(x.unit, n)
        uy = _pad(truncate(y.unit, min(y.precision, n)), n)
        s = ux + uy.times_p(d)
        if s.is_unit():
            return ValuedElement(self, x.val, s, n)
        if s.is_zero():
            if n == self.M and x.precision == y.precision == self.M:
                # the digits cancel exactly at full precision
                return self.zero()
            raise PrecisionExhausted(f"cancellation consumed all {n} known digits")
        e = 0
        cur = s
        while not cur.is_unit():
            cur = div_by_p(cur)
            if not isinstance(cur, WittVector):
                raise ModelMismatch("sum left the Cohen ring")
            e += 1
        return ValuedElement(self, x.val + e, cur, cur.m)

    def sub(self, x: ValuedElement, y: ValuedElement) -> ValuedElement:
        return self.add(x, self.neg(y))

    # -- valuation and residue maps ------------------------------------------------
    def v(self, x: ValuedElement):
        return x.val

    def residue_n(self, x: ValuedElement, n: int):
        """r_n: O_v -> O_v/(p^n) as a Witt vector of length n, or NOT_INTEGRAL."""
        if not 1 <= n <= self.M:
            raise PrecisionError(f"r_{n} needs 1 <= n <= {self.M}")
        ring = witt_ring(self.k, n)
        if x.val is INF:
            return ring.zero()
        if x.val < 0:
            return NOT_INTEGRAL
        if x.val >= n:
            return ring.zero()
        if n > x.val + x.precision:
            raise PrecisionError(f"r_{n} needs {n - x.val} unit digits, only {x.precision} known")
        u = _pad(truncate(x.unit, n - x.val), n)
        return u.times_p(x.val)

    def ac_n(self, x: ValuedElement, n: int) -> WittVector:
        if not 1 <= n <= self.M:
            raise PrecisionError(f"ac_{n} needs 1 <= n <= {self.M}")
        ring = witt_ring(self.k, n)
        if x.val is INF:
            return ring.zero()
        if n > x.precision:
            raise PrecisionError(f"ac_{n} needs {n} unit digits, only {x.precision} known")
        return truncate(x.unit, n)

    def res_nm(self, a: WittVector, m: int) -> WittVector:
        return truncate(a, m)

    def residue_field(self, x: ValuedElement):
        r = self.residue_n(x, 1)
        if not isinstance(r, WittVector):
            return r
        return r.residue()

    def __repr__(self) -> str:
        return f"K({self.k}, M={self.M})"


def _pad(x: WittVector, n: int) -> WittVector:
    if x.m == n:
        return x
    z = x.field.zero()
    return WittVector(witt_ring(x.field, n), x.digits + (z,) * (n - x.m))


def vf_arith(op: str, x: ValuedElement, y: ValuedElement | None = None) -> ValuedElement:
    K = x.field
    if op == "add":
        return K.add(x, y)
    if op == "sub":
        return K.sub(x, y)
    if op == "mul":
        return K.mul(x, y)
    if op == "div":
        return K.div(x, y)
    if op == "neg":
        return K.neg(x)
    raise ValueError(f"unknown operation {op!r}")


def residue_n(x: ValuedElement, n: int):
    return x.field.residue_n(x, n)


def ac_n(x: ValuedElement, n: int):
    return x.field.ac_n(x, n)


__all__ = [
    "INF",
    "ValuedElement",
    "ValuedField",
    "ac_n",
    "gamma_le",
    "residue_n",
    "vf_arith",
    "FieldElement",
]
