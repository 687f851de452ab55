"""Concrete structures for the languages: C_n(k) and K at precision M.

A binding interprets every sort by a carrier and every symbol by an
operation.  Partial symbols (S_r off its domain, division by zero, r_n on a
non-integral element) evaluate to the default 0 and append a flag.
"""

from __future__ import annotations

from ..cohen import CohenRingModel, representative_sum
from ..errors import NOT_IN_SPAN, PrecisionError, SortError
from ..fields import FieldElement
from ..pbasis import is_p_independent, lambda_decompose
from ..valued import INF, ValuedElement, ValuedField
from ..witt import WittVector, truncate, witt_ring
from .syntax import GAMMA, A, K, Sort, k, ring_level


def _ring_apply(fn: str, args):
    if fn == "+":
        out = args[0]
        for a in args[1:]:
            out = out + a
        return out
    if fn == "*":
        out = args[0]
        for a in args[1:]:
            out = out * a
        return out
    if fn == "-":
        out = args[0]
        for a in args[1:]:
            out = out - a
        return out
    if fn == "neg":
        return -args[0]
    raise SortError(f"{fn} is not a ring operation")


class StructureBinding:
    """Interface shared by the shipped bindings."""

    name = "structure"
    sorts: frozenset = frozenset()

    def supports(self, s: Sort) -> bool:
        return s in self.sorts

    def _require(self, s: Sort) -> None:
        if not self.supports(s):
            raise SortError(f"{self.name} does not interpret sort {s}")

    # subclasses implement the following
    def contains(self, s: Sort, value) -> bool:  # pragma: no cover - interface
        raise NotImplementedError

    def num(self, s: Sort, n: int):  # pragma: no cover - interface
        raise NotImplementedError

    def literal(self, s: Sort, text: str):  # pragma: no cover - interface
        raise NotImplementedError

    def ring_op(self, s: Sort, fn: str, args, flags: list):  # pragma: no cover - interface
        raise NotImplementedError

    def function(self, kind: str, params: tuple, args, flags: list):  # pragma: no cover
        raise NotImplementedError

    def relation(self, name: str, args) -> bool:  # pragma: no cover - interface
        raise NotImplementedError

    def equal(self, s: Sort, x, y) -> bool:
        return x == y


# -- the two-sorted structure (A, k, res, Theta, S) --------------------------------------
class CohenBinding(StructureBinding):
    """(C_n(k), k, res, (Theta_r), (S_r)) for a Cohen ring model.

    ``theta``, ``S`` and ``res`` replace the canonical interpretations; they
    exist to build negative controls for the audits.
    """

    sorts = frozenset({A, k})

    def __init__(self, model: CohenRingModel, theta=None, S=None, res=None, name: str | None = None):
        self.model = model
        self.field = model.field
        self.ring = model.ring
        self.n = model.m
        self._theta = theta
        self._S = S
        self._res = res
        self._members: dict = {}
        self.name = name or f"C_{self.n}({self.field})"

    # carriers
    def contains(self, s: Sort, value) -> bool:
        if s == A:
            if not isinstance(value, WittVector) or value.ring != self.ring:
                return False
            if value not in self._members:
                self._members[value] = self.model.is_member(value)
            return self._members[value]
        if s == k:
            return isinstance(value, FieldElement) and value.field == self.field
        return False

    def num(self, s: Sort, n: int):
        self._require(s)
        return self.ring.from_int(n) if s == A else self.field.from_int(n)

    def literal(self, s: Sort, text: str):
        self._require(s)
        if s == k:
            return self.field.parse(text)
        digits = [d.strip() for d in text.split(",")]
        return self.ring.vector(digits)

    def ring_op(self, s: Sort, fn: str, args, flags: list):
        self._require(s)
        if fn in ("/", "inv"):
            if s != k:
                raise SortError(f"{fn} is not defined on {s}")
            den = args[-1]
            if den.is_zero():
                flags.append(f"{fn} by zero: default 0")
                return self.field.zero()
            return args[0] / den if fn == "/" else den.inverse()
        return _ring_apply(fn, args)

    # symbols
    def res(self, x: WittVector) -> FieldElement:
        if self._res is not None:
            return self._res(x)
        return x.residue()

    def theta(self, b) -> bool:
        if self._theta is not None:
            return self._theta(tuple(b))
        return is_p_independent(tuple(self.res(x) for x in b))

    def S(self, b, alpha: FieldElement):
        """S_r(b, alpha) or None where undefined."""
        if self._S is not None:
            return self._S(tuple(b), alpha)
        return canonical_S(self.ring, tuple(b), alpha, self.res)

    def function(self, kind: str, params: tuple, args, flags: list):
        if kind == "res":
            return self.res(args[0])
        if kind == "S":
            value = self.S(args[:-1], args[-1])
            if value is None:
                flags.append(f"S{params[0]} undefined at {tuple(map(str, args))}: default 0")
                return self.ring.zero()
            return value
        raise SortError(f"{self.name} does not interpret {kind}")

    def relation(self, name: str, args) -> bool:
        if name.startswith("Theta"):
            return self.theta(args)
        raise SortError(f"{self.name} does not interpret {name}")


def canonical_S(ring, b: tuple, alpha: FieldElement, res=None):
    """The lambda(res b, n)-representative of alpha, or None off the domain of S_r."""
    res = res or (lambda x: x.residue())
    beta = tuple(res(x) for x in b)
    if not is_p_independent(beta):
        return None
    dec = lambda_decompose(beta, ring.m, alpha)
    if dec is NOT_IN_SPAN:
        return None
    if not b:
        lam = dec.coefficients.get(())
        return ring.zero() if lam is None else ring.teichmuller(lam ** (ring.p ** ring.m))
    return representative_sum(b, dec)


def shipped_binding(n: int, field=None) -> CohenBinding:
    """C_n(F_2(t)) with the Teichmuller lift of t, unless another field is given."""
    from ..fields import make_field

    field = field or make_field(2, 1, 1)
    return CohenBinding(CohenRingModel(field, n))


# -- the ac-valued structure (K, A, Gamma, R_n) ------------------------------------------
class ValuedBinding(StructureBinding):
    """K at precision M with A = O_v, Gamma = Z u {inf} and R_n = C_n(k) for n <= M.

    Elements of A are the valued elements with v >= 0; elements of R_n are
    Witt vectors of length n for n >= 2 and field elements for n = 1.
    """

    def __init__(self, vf: ValuedField, ac=None, r=None, name: str | None = None):
        self.vf = vf
        self.field = vf.k
        self.M = vf.M
        self._ac = ac
        self._r = r
        self.name = name or f"K({self.field}, M={self.M})"

    def supports(self, s: Sort) -> bool:
        if s in (K, A, GAMMA, k):
            return True
        lvl = ring_level(s)
        return lvl is not None and lvl <= self.M

    def contains(self, s: Sort, value) -> bool:
        if s == K:
            return isinstance(value, ValuedElement)
        if s == A:
            return isinstance(value, ValuedElement) and (value.val is INF or value.val >= 0)
        if s == GAMMA:
            return value is INF or isinstance(value, int)
        if s == k:
            return isinstance(value, FieldElement) and value.field == self.field
        lvl = ring_level(s)
        return (lvl is not None and isinstance(value, WittVector) and value.m == lvl
                and value.field == self.field)

    def _rn_ring(self, s: Sort):
        lvl = ring_level(s)
        if lvl is None or lvl > self.M:
            raise PrecisionError(f"sort {s} exceeds precision {self.M}")
        return witt_ring(self.field, lvl)

    def num(self, s: Sort, n: int):
        self._require(s)
        if s in (K, A):
            return self.vf.from_int(n)
        if s == GAMMA:
            return n
        if s == k:
            return self.field.from_int(n)
        return self._rn_ring(s).from_int(n)

    def literal(self, s: Sort, text: str):
        self._require(s)
        if s == GAMMA:
            if text == "inf":
                return INF
            return int(text)
        if s == k:
            return self.field.parse(text)
        if s in (K, A):
            # "val|d0,d1,..." with Cohen digits of the unit
            val, _, digits = text.partition("|")
            if val.strip() == "inf":
                return self.vf.zero()
            return self.vf.element(int(val), [d.strip() for d in digits.split(",")])
        return self._rn_ring(s).vector([d.strip() for d in text.split(",")])

    def ring_op(self, s: Sort, fn: str, args, flags: list):
        self._require(s)
        if s == GAMMA:
            if fn == "+":
                out = args[0]
                for a in args[1:]:
                    out = INF if (out is INF or a is INF) else out + a
                return out
            if fn in ("-", "neg"):
                vals = list(args) if fn == "-" else [0, args[0]]
                if vals[-1] is INF or any(a is INF for a in vals[1:]):
                    flags.append(f"{fn} of inf: default 0")
                    return 0
                out = vals[0]
                for a in vals[1:]:
                    out = INF if out is INF else out - a
                return out
            raise SortError(f"{fn} is not defined on {s}")
        if fn in ("/", "inv"):
            den = args[-1]
            if den.is_zero():
                flags.append(f"{fn} by zero: default 0")
                return self.num(s, 0)
            if s == k:
                return args[0] / den if fn == "/" else den.inverse()
            inv = self.vf.inverse(den)
            return self.vf.mul(args[0], inv) if fn == "/" else inv
        out = _ring_apply(fn, args)
        if s == A and not self.contains(A, out):
            raise SortError("A is not closed under this operation")  # pragma: no cover
        return out

    def r(self, x: ValuedElement, n: int):
        if self._r is not None:
            return self._r(x, n)
        out = self.vf.residue_n(x, n)
        return out.residue() if n == 1 and isinstance(out, WittVector) else out

    def ac(self, x: ValuedElement, n: int):
        if self._ac is not None:
            return self._ac(x, n)
        out = self.vf.ac_n(x, n)
        return out.residue() if n == 1 else out

    def function(self, kind: str, params: tuple, args, flags: list):
        x = args[0]
        if kind == "v":
            return x.val
        if kind == "r":
            return self.r(x, params[0])
        if kind == "ac":
            return self.ac(x, params[0])
        if kind == "resnm":
            n, m = params
            if m == n:
                return x
            y = truncate(x, m)
            return y.residue() if m == 1 else y
        raise SortError(f"{self.name} does not interpret {kind}")

    def relation(self, name: str, args) -> bool:
        a, b = args
        if name == "<=":
            return b is INF or (a is not INF and a <= b)
        if name == "<":
            return a != b and (b is INF or (a is not INF and a < b))
        raise SortError(f"{self.name} does not interpret {name}")


__all__ = [
    "CohenBinding",
    "StructureBinding",
    "ValuedBinding",
    "canonical_S",
    "shipped_binding",
]
