"""Truncated Witt rings W_m(k) over the supported fields."""

from __future__ import annotations

from functools import lru_cache

from ..errors import NOT_A_PTH_POWER, NOT_DIVISIBLE, LevelError, RingMismatch
from ..fields import FieldDescriptor, FieldElement, RationalFunctionField
from .ghostlift import witt_op_finite
from .structural import structural_polynomials

ROUTES = ("auto", "structural", "ghost")


class WittRing:
    """W_m(k).  Obtain instances through :func:`witt_ring` so they are shared."""

    def __init__(self, field: RationalFunctionField, m: int):
        if m < 1:
            raise LevelError("Witt length must be at least 1")
        self.field = field
        self.m = m
        self.p = field.p

    # -- constructors ------------------------------------------------------------
    def vector(self, digits) -> "WittVector":
        k = self.field
        ds = []
        for a in digits:
            if isinstance(a, FieldElement):
                k.check_same(a.field)
            elif isinstance(a, int):
                a = k.from_int(a)
            else:
                a = k.parse(str(a))
            ds.append(a)
        if len(ds) != self.m:
            raise LevelError(f"expected {self.m} digits, got {len(ds)}")
        return WittVector(self, tuple(ds))

    def zero(self) -> "WittVector":
        z = self.field.zero()
        return WittVector(self, (z,) * self.m)

    def one(self) -> "WittVector":
        return self.teichmuller(self.field.one())

    def teichmuller(self, alpha: FieldElement) -> "WittVector":
        self.field.check_same(alpha.field)
        z = self.field.zero()
        return WittVector(self, (alpha,) + (z,) * (self.m - 1))

    def from_int(self, n: int) -> "WittVector":
        return _int_vector(self, n % self.p**self.m)

    def from_json(self, obj) -> "WittVector":
        return self.vector(list(obj))

    # -- arithmetic --------------------------------------------------------------
    def op(self, op: str, x: "WittVector", y: "WittVector | None" = None, route: str = "auto") -> "WittVector":
        x = self._coerce(x)
        if op == "sub":
            return self.op("add", x, self.op("neg", self._coerce(y), route=route), route=route)
        if op not in ("add", "mul", "neg"):
            raise ValueError(f"unknown Witt operation {op!r}")
        if op != "neg":
            y = self._coerce(y)
        if route not in ROUTES:
            raise ValueError(f"unknown route {route!r}")
        if route == "auto":
            route = "ghost" if self.field.r == 0 else "structural"
        if route == "ghost":
            if self.field.r:
                raise ValueError("the ghost route needs a finite coefficient field")
            gf = self.field.gf
            xs = [_code(a) for a in x.digits]
            ys = [_code(a) for a in y.digits] if y is not None else None
            out = witt_op_finite(gf, op, xs, ys)
            return WittVector(self, tuple(self.field.const(c) for c in out))
        polys = structural_polynomials(self.p, self.m, op)
        return WittVector(self, _eval_structural(self.field, polys, op, x.digits, y.digits if y else None))

    def _coerce(self, x) -> "WittVector":
        if isinstance(x, int):
            return self.from_int(x)
        if not isinstance(x, WittVector):
            raise TypeError(f"expected a WittVector, got {type(x).__name__}")
        if x.ring is not self and (x.ring.m != self.m or x.ring.field != self.field):
            raise RingMismatch(f"{x.ring} vs {self}")
        return x

    def __repr__(self) -> str:
        return f"W_{self.m}({self.field})"

    def __eq__(self, other) -> bool:
        return isinstance(other, WittRing) and other.m == self.m and other.field == self.field

    def __hash__(self) -> int:
        return hash((self.field, self.m))

    def descriptor(self) -> dict:
        d = self.field.desc.to_json()
        d["m"] = self.m
        return d

    @classmethod
    def from_descriptor(cls, obj: dict) -> "WittRing":
        return witt_ring(FieldDescriptor.from_json(obj).field(), int(obj["m"]))


@lru_cache(maxsize=None)
def witt_ring(field: RationalFunctionField, m: int) -> WittRing:
    return WittRing(field, m)


def _code(a: FieldElement) -> int:
    # r = 0: the element is a constant polynomial
    return a.num.get((), 0)


def _int_vector(ring: WittRing, n: int) -> "WittVector":
    # n = sum c_i p^i and p^i * 1 = V^i(1)
    p = ring.p
    acc = ring.zero()
    i = 0
    while n:
        c = n % p
        if c:
            unit = ring.zero()
            one_shift = list(unit.digits)
            one_shift[i] = ring.field.one()
            v = WittVector(ring, tuple(one_shift))
            for _ in range(c):
                acc = ring.op("add", acc, v)
        n //= p
        i += 1
    return acc


class WittVector:
    """An element (x_0, ..., x_{m-1}) of W_m(k); immutable."""

    __slots__ = ("ring", "digits")

    def __init__(self, ring: WittRing, digits: tuple):
        self.ring = ring
        self.digits = digits

    @property
    def m(self) -> int:
        return self.ring.m

    @property
    def field(self) -> RationalFunctionField:
        return self.ring.field

    def __getitem__(self, i: int) -> FieldElement:
        return self.digits[i]

    def __len__(self) -> int:
        return len(self.digits)

    def residue(self) -> FieldElement:
        return self.digits[0]

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.digits)

    def is_unit(self) -> bool:
        return not self.digits[0].is_zero()

    # -- ring operations -----------------------------------------------------------
    def __add__(self, other) -> "WittVector":
        return self.ring.op("add", self, other)

    __radd__ = __add__

    def __sub__(self, other) -> "WittVector":
        return self.ring.op("sub", self, other)

    def __rsub__(self, other) -> "WittVector":
        return self.ring.op("sub", self.ring._coerce(other), self)

    def __mul__(self, other) -> "WittVector":
        return self.ring.op("mul", self, other)

    __rmul__ = __mul__

    def __neg__(self) -> "WittVector":
        return self.ring.op("neg", self)

    def __pow__(self, n: int) -> "WittVector":
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def times_p(self, i: int = 1) -> "WittVector":
        """p^i * x = V^i F^i x."""
        x = self
        for _ in range(i):
            x = verschiebung(witt_frobenius(x))
        return x

    def teichmuller_scale(self, c: FieldElement) -> "WittVector":
        """[c] * x, digit-wise (c^(p^i) x_i)."""
        out = []
        ci = c
        for a in self.digits:
            out.append(ci * a)
            ci = ci.frobenius()
        return WittVector(self.ring, tuple(out))

    def inverse(self) -> "WittVector":
        if not self.is_unit():
            from ..errors import DivisionByZero

            raise DivisionByZero("Witt vector with zero residue is not a unit")
        ring = self.ring
        y = ring.teichmuller(self.digits[0].inverse())
        two = ring.from_int(2)
        prec = 1
        while prec < ring.m:
            y = y * (two - self * y)
            prec *= 2
        return y

    # -- comparison / text -----------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.ring.from_int(other)
        if not isinstance(other, WittVector):
            return NotImplemented
        return other.ring == self.ring and other.digits == self.digits

    def __hash__(self) -> int:
        return hash(self.digits)

    def to_json(self) -> list[str]:
        return [str(a) for a in self.digits]

    def __str__(self) -> str:
        return "(" + ", ".join(str(a) for a in self.digits) + ")"

    def __repr__(self) -> str:
        return f"WittVector{self} in {self.ring}"


# -- free functions -------------------------------------------------------------------
def witt_op(op: str, x: WittVector, y: WittVector | None = None, route: str = "auto") -> WittVector:
    if not isinstance(x, WittVector):
        raise TypeError("witt_op expects WittVector arguments")
    if y is not None and isinstance(y, WittVector) and y.ring != x.ring:
        raise RingMismatch(f"{x.ring} vs {y.ring}")
    return x.ring.op(op, x, y, route=route)


def teichmuller(alpha: FieldElement, m: int) -> WittVector:
    return witt_ring(alpha.field, m).teichmuller(alpha)


def verschiebung(x: WittVector) -> WittVector:
    z = x.field.zero()
    return WittVector(x.ring, (z,) + x.digits[:-1])


def witt_frobenius(x: WittVector) -> WittVector:
    return WittVector(x.ring, tuple(a.frobenius() for a in x.digits))


def truncate(x: WittVector, m: int) -> WittVector:
    if not 1 <= m <= x.m:
        raise LevelError(f"cannot truncate length {x.m} to {m}")
    if m == x.m:
        return x
    return WittVector(witt_ring(x.field, m), x.digits[:m])


def extend(x: WittVector, m: int) -> WittVector:
    """Pad with zero digits (a set-theoretic section of truncation, not a ring map)."""
    if m < x.m:
        raise LevelError(f"cannot extend length {x.m} to {m}")
    z = x.field.zero()
    return WittVector(witt_ring(x.field, m), x.digits + (z,) * (m - x.m))


def div_by_p(x: WittVector):
    """b of length m-1 with p*b = x, or NOT_DIVISIBLE.

    p*(b_0..b_{m-1}) = (0, b_0^p, ..., b_{m-2}^p), so x is divisible iff
    x_0 = 0 and every later digit is a p-th power; b_{m-1} is not determined
    and the returned vector stops before it.
    """
    if x.m < 2:
        raise LevelError("division by p needs length at least 2")
    if not x.digits[0].is_zero():
        return NOT_DIVISIBLE
    roots = []
    for a in x.digits[1:]:
        r = a.pth_root()
        if r is NOT_A_PTH_POWER:
            return NOT_DIVISIBLE
        roots.append(r)
    return WittVector(witt_ring(x.field, x.m - 1), tuple(roots))


# -- structural polynomial evaluation ---------------------------------------------------
def _lcm(R, a, b):
    g = R.gcd(a, b)
    return R.mul(R.divexact(a, g), b)


def _frob_n(R, f, n: int):
    for _ in range(n):
        f = R.frobenius(f)
    return f


def _lcm_dens(R, digits):
    D = R.one()
    for a in digits:
        if not R.is_one(a.den):
            D = _lcm(R, D, a.den)
    return D


def _common(R, digits):
    """(D, [a_j]) with x_j = a_j / D^(p^j)."""
    return _common_with(R, _lcm_dens(R, digits), digits)


class _PowerCache:
    def __init__(self, R, p, values):
        self.R, self.p, self.values = R, p, values
        self.cache: dict = {}

    def get(self, j: int, e: int):
        key = (j, e)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        R, p = self.R, self.p
        s, e1 = 0, e
        while e1 % p == 0:
            e1 //= p
            s += 1
        base = self.values[j]
        v = _frob_n(R, R.pow(base, e1) if e1 > 1 else base, s)
        self.cache[key] = v
        return v


def _eval_structural(k: RationalFunctionField, polys, op: str, xd, yd):
    R, p = k.R, k.p
    if op == "mul":
        Dx, ax = _common(R, xd)
        Dy, ay = _common(R, yd)
        Dprod = R.mul(Dx, Dy)
    elif op == "add":
        Dx = _lcm_dens(R, tuple(xd) + tuple(yd))
        _, ax = _common_with(R, Dx, xd)
        _, ay = _common_with(R, Dx, yd)
        Dprod = Dx
    else:
        Dx, ax = _common(R, xd)
        ay = None
        Dprod = Dx
    px = _PowerCache(R, p, ax)
    py = _PowerCache(R, p, ay) if ay is not None else None
    out = []
    for n, poly in enumerate(polys):
        acc: dict = {}
        for xe, ye, c in poly.terms:
            term = R.const(c)
            for j, e in enumerate(xe):
                if e:
                    term = R.mul(term, px.get(j, e))
                    if not term:
                        break
            if term and py is not None:
                for j, e in enumerate(ye):
                    if e:
                        term = R.mul(term, py.get(j, e))
                        if not term:
                            break
            if term:
                acc = R.add(acc, term)
        if R.is_one(Dprod):
            out.append(k._make(acc, R.one()) if acc else k.zero())
        else:
            out.append(k.element(acc, _frob_n(R, Dprod, n)))
    return tuple(out)


def _common_with(R, D, digits):
    if R.is_one(D):
        return D, [a.num for a in digits]
    out = []
    for j, a in enumerate(digits):
        Dj = _frob_n(R, D, j)
        out.append(R.mul(a.num, Dj if R.is_one(a.den) else R.divexact(Dj, a.den)))
    return D, out
