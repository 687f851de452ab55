"""The computable fields k = F_{p^d}(t_1, ..., t_r) and their elements."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from ..errors import (
    NOT_A_PTH_POWER,
    DivisionByZero,
    FieldError,
    FieldMismatch,
)
from .gf import GF, default_modulus
from .poly import Poly, grlex_key, poly_ring


@dataclass(frozen=True)
class FieldDescriptor:
    p: int
    d: int = 1
    r: int = 0
    modulus: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.modulus is None:
            object.__setattr__(self, "modulus", default_modulus(self.p, self.d) if self.d > 1 else (0, 1))
        else:
            object.__setattr__(self, "modulus", tuple(int(c) for c in self.modulus))
        if self.r < 0:
            raise FieldError("r must be non-negative")

    def to_json(self) -> dict:
        return {"p": self.p, "d": self.d, "modulus": list(self.modulus), "r": self.r}

    @classmethod
    def from_json(cls, obj: dict) -> "FieldDescriptor":
        mod = obj.get("modulus")
        return cls(int(obj["p"]), int(obj.get("d", 1)), int(obj.get("r", 0)), tuple(mod) if mod else None)

    def field(self) -> "RationalFunctionField":
        return RationalFunctionField.get(self)


class RationalFunctionField:
    """k = F_q(t_1..t_r); r = 0 gives the finite field F_q itself."""

    def __init__(self, desc: FieldDescriptor):
        self.desc = desc
        self.p = desc.p
        self.r = desc.r
        self.gf = GF(desc.p, desc.d, desc.modulus if desc.d > 1 else None)
        self.R = poly_ring(self.gf, desc.r)
        if self.r == 1:
            self.var_names = ("t",)
        else:
            self.var_names = tuple(f"t{i + 1}" for i in range(self.r))

    @staticmethod
    @lru_cache(maxsize=None)
    def get(desc: FieldDescriptor) -> "RationalFunctionField":
        return RationalFunctionField(desc)

    @property
    def is_perfect(self) -> bool:
        return self.r == 0

    # -- element constructors ----------------------------------------------------
    def _make(self, num: Poly, den: Poly) -> "FieldElement":
        x = FieldElement.__new__(FieldElement)
        x.field = self
        x.num = num
        x.den = den
        return x

    def element(self, num: Poly, den: Poly | None = None) -> "FieldElement":
        """Canonicalize num/den."""
        R = self.R
        if den is None:
            den = R.one()
        if not den:
            raise DivisionByZero("zero denominator")
        if not num:
            return self._make({}, R.one())
        if not R.is_const(den):
            g = R.gcd(num, den)
            if not R.is_one(g):
                num = R.divexact(num, g)
                den = R.divexact(den, g)
        den, c = R.monic(den)
        if c != 1:
            num = R.scale(num, self.gf.inv(c))
        return self._make(num, den)

    def zero(self) -> "FieldElement":
        return self._make({}, self.R.one())

    def one(self) -> "FieldElement":
        return self._make(self.R.one(), self.R.one())

    def from_int(self, n: int) -> "FieldElement":
        return self._make(self.R.const(self.gf.from_int(n)), self.R.one())

    def const(self, c: int) -> "FieldElement":
        """Element of the coefficient field F_q given by its table index."""
        return self._make(self.R.const(c), self.R.one())

    def gen(self, i: int = 0) -> "FieldElement":
        if not 0 <= i < self.r:
            raise FieldError(f"no variable t{i + 1} in {self}")
        return self._make(self.R.var(i), self.R.one())

    def gens(self) -> tuple["FieldElement", ...]:
        return tuple(self.gen(i) for i in range(self.r))

    def w(self) -> "FieldElement":
        return self.const(self.gf.generator())

    def parse(self, text: str) -> "FieldElement":
        from .parse import parse_element

        return parse_element(self, text)

    def random_poly(self, rng: random.Random, max_deg: int = 2, max_terms: int = 4) -> Poly:
        R = self.R
        out: Poly = {}
        for _ in range(rng.randint(1, max_terms)):
            e = [0] * self.r
            budget = rng.randint(0, max_deg)
            for _ in range(budget):
                if self.r:
                    e[rng.randrange(self.r)] += 1
            c = rng.randrange(1, self.gf.q)
            out = R.add(out, {tuple(e): c})
        return out

    def random_element(self, rng: random.Random, max_deg: int = 2, allow_zero: bool = True,
                       rational: bool = True) -> "FieldElement":
        while True:
            num = self.random_poly(rng, max_deg)
            den = self.random_poly(rng, max_deg) if (rational and self.r) else self.R.one()
            if not den:
                continue
            if rng.random() < 0.1 and allow_zero:
                num = {}
            x = self.element(num, den)
            if allow_zero or not x.is_zero():
                return x

    def elements_of_degree(self, max_deg: int):
        """All polynomials (not fractions) of total degree <= max_deg (small fields only)."""
        import itertools

        monos = [e for e in itertools.product(range(max_deg + 1), repeat=self.r) if sum(e) <= max_deg]
        for coefs in itertools.product(range(self.gf.q), repeat=len(monos)):
            yield self._make({e: c for e, c in zip(monos, coefs) if c}, self.R.one())

    def check_same(self, other: "RationalFunctionField") -> None:
        if other is not self and other.desc != self.desc:
            raise FieldMismatch(f"{self} vs {other}")

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalFunctionField) and other.desc == self.desc

    def __hash__(self) -> int:
        return hash(self.desc)

    def __repr__(self) -> str:
        base = f"F_{self.p}" if self.desc.d == 1 else f"F_{self.p}^{self.desc.d}"
        if self.r:
            return f"{base}({','.join(self.var_names)})"
        return base


class FieldElement:
    """An element num/den of k in canonical form (coprime, den monic)."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field: RationalFunctionField, num: Poly, den: Poly | None = None):
        x = field.element(num, den)
        self.field, self.num, self.den = x.field, x.num, x.den

    # -- predicates ----------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        R = self.field.R
        return R.is_one(self.num) and R.is_one(self.den)

    def is_constant(self) -> bool:
        R = self.field.R
        return R.is_const(self.num) and R.is_const(self.den)

    def degree(self) -> int:
        R = self.field.R
        return max(R.total_degree(self.num), R.total_degree(self.den))

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            self.field.check_same(other.field)
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")

    # -- arithmetic ----------------------------------------------------------------
    def __add__(self, other) -> "FieldElement":
        other = self._coerce(other)
        k, R = self.field, self.field.R
        if not self.num:
            return other
        if not other.num:
            return self
        if self.den == other.den:
            if R.is_one(self.den):
                return k._make(R.add(self.num, other.num), self.den)
            return k.element(R.add(self.num, other.num), self.den)
        num = R.add(R.mul(self.num, other.den), R.mul(other.num, self.den))
        return k.element(num, R.mul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self) -> "FieldElement":
        return self.field._make(self.field.R.neg(self.num), self.den)

    def __sub__(self, other) -> "FieldElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "FieldElement":
        return self._coerce(other) - self

    def __mul__(self, other) -> "FieldElement":
        other = self._coerce(other)
        k, R = self.field, self.field.R
        if not self.num or not other.num:
            return k.zero()
        a, b, c, d = self.num, self.den, other.num, other.den
        if not R.is_one(d):
            g = R.gcd(a, d)
            if not R.is_one(g):
                a, d = R.divexact(a, g), R.divexact(d, g)
        if not R.is_one(b):
            g = R.gcd(c, b)
            if not R.is_one(g):
                c, b = R.divexact(c, g), R.divexact(b, g)
        return k._make(R.mul(a, c), R.mul(b, d))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if not self.num:
            raise DivisionByZero("inverse of zero")
        k, R = self.field, self.field.R
        den, c = R.monic(self.num)
        num = R.scale(self.den, k.gf.inv(c)) if c != 1 else self.den
        return k._make(num, den)

    def __truediv__(self, other) -> "FieldElement":
        other = self._coerce(other)
        if other.is_zero():
            raise DivisionByZero("division by zero")
        return self * other.inverse()

    def __rtruediv__(self, other) -> "FieldElement":
        return self._coerce(other) / self

    def __pow__(self, n: int) -> "FieldElement":
        if n < 0:
            return self.inverse() ** (-n)
        k, R = self.field, self.field.R
        if n == 0:
            return k.one()
        # powers of a reduced fraction stay reduced, monic den stays monic
        p = k.p
        x = self
        while n % p == 0:
            x = x.frobenius()
            n //= p
        if n == 1:
            return x
        return k._make(R.pow(x.num, n), R.pow(x.den, n))

    def frobenius(self) -> "FieldElement":
        R = self.field.R
        return self.field._make(R.frobenius(self.num), R.frobenius(self.den))

    def pth_root(self):
        """The unique y with y^p = self, or the NotAPthPower marker."""
        R = self.field.R
        num = R.pth_root(self.num)
        if num is None:
            return NOT_A_PTH_POWER
        den = R.pth_root(self.den)
        if den is None:
            return NOT_A_PTH_POWER
        return self.field._make(num, den)

    def frobenius_power(self, n: int) -> "FieldElement":
        x = self
        for _ in range(n):
            x = x.frobenius()
        return x

    def pth_root_iter(self, n: int):
        x = self
        for _ in range(n):
            x = x.pth_root()
            if x is NOT_A_PTH_POWER:
                return x
        return x

    # -- comparison ------------------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.field.from_int(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return other.field == self.field and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((frozenset(self.num.items()), frozenset(self.den.items())))

    def sort_key(self):
        return (sorted(self.num.items(), key=lambda it: grlex_key(it[0])),
                sorted(self.den.items(), key=lambda it: grlex_key(it[0])))

    # -- text --------------------------------------------------------------------------
    def __str__(self) -> str:
        from .parse import format_element

        return format_element(self)

    def __repr__(self) -> str:
        return f"FieldElement({self}, {self.field})"
