"""Sparse multivariate polynomials over F_q.

A polynomial is a ``dict`` mapping exponent tuples (length ``nvars``) to
nonzero ``int`` coefficients of the underlying :class:`GF`.  Dicts are treated
as immutable once returned.  Monomials are ordered graded-lexicographically.
"""

from __future__ import annotations

from functools import lru_cache

from .gf import GF

Poly = dict


def grlex_key(e: tuple[int, ...]):
    return (sum(e), e)


class PolyRing:
    """F_q[x_1, ..., x_n] with the operations needed for canonical fractions."""

    def __init__(self, gf: GF, nvars: int):
        self.gf = gf
        self.nvars = nvars
        self.zero_exp = (0,) * nvars

    # -- constructors ----------------------------------------------------------
    def const(self, c: int) -> Poly:
        return {self.zero_exp: c} if c else {}

    def one(self) -> Poly:
        return {self.zero_exp: 1}

    def var(self, i: int) -> Poly:
        e = [0] * self.nvars
        e[i] = 1
        return {tuple(e): 1}

    # -- predicates ------------------------------------------------------------
    def is_const(self, f: Poly) -> bool:
        return not f or (len(f) == 1 and self.zero_exp in f)

    def is_one(self, f: Poly) -> bool:
        return len(f) == 1 and f.get(self.zero_exp) == 1

    def leading_exp(self, f: Poly):
        return max(f, key=grlex_key)

    def lc(self, f: Poly) -> int:
        return f[self.leading_exp(f)]

    def total_degree(self, f: Poly) -> int:
        return max((sum(e) for e in f), default=-1)

    # -- arithmetic ------------------------------------------------------------
    def add(self, f: Poly, g: Poly) -> Poly:
        if len(f) < len(g):
            f, g = g, f
        out = dict(f)
        gf = self.gf
        for e, c in g.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                s = gf.add(v, c)
                if s:
                    out[e] = s
                else:
                    del out[e]
        return out

    def neg(self, f: Poly) -> Poly:
        neg = self.gf.neg
        return {e: neg(c) for e, c in f.items()}

    def sub(self, f: Poly, g: Poly) -> Poly:
        return self.add(f, self.neg(g))

    def scale(self, f: Poly, c: int) -> Poly:
        if c == 0:
            return {}
        if c == 1:
            return f
        mul = self.gf.mul
        return {e: mul(v, c) for e, v in f.items()}

    def mul(self, f: Poly, g: Poly) -> Poly:
        if not f or not g:
            return {}
        if len(f) < len(g):
            f, g = g, f
        gf = self.gf
        if gf.q == 2 and self.nvars == 1:
            return _from_bits(_bits_mul(_to_bits(f), _to_bits(g)))
        if gf.d == 1:
            p = gf.p
            acc: dict = {}
            for e1, c1 in g.items():
                for e2, c2 in f.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    acc[e] = acc.get(e, 0) + c1 * c2
            return {e: c % p for e, c in acc.items() if c % p}
        out: dict = {}
        add, mul = gf.add, gf.mul
        for e1, c1 in g.items():
            for e2, c2 in f.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0)
                out[e] = add(v, mul(c1, c2))
        return {e: c for e, c in out.items() if c}

    def mul_monomial(self, f: Poly, e0: tuple[int, ...], c0: int = 1) -> Poly:
        mul = self.gf.mul
        return {tuple(a + b for a, b in zip(e, e0)): mul(c, c0) for e, c in f.items()}

    def pow(self, f: Poly, n: int) -> Poly:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = self.one()
        base = f
        while n:
            if n & 1:
                result = self.mul(result, base)
            n >>= 1
            if n:
                base = self.mul(base, base)
        return result

    def frobenius(self, f: Poly) -> Poly:
        """f^p, computed coefficient-wise (char p)."""
        p = self.gf.p
        fr = self.gf.frobenius
        return {tuple(a * p for a in e): fr(c) for e, c in f.items()}

    def pth_root(self, f: Poly):
        """The unique g with g^p = f, or None if f is not a p-th power."""
        p = self.gf.p
        out = {}
        fi = self.gf.frobenius_inverse
        for e, c in f.items():
            if any(a % p for a in e):
                return None
            out[tuple(a // p for a in e)] = fi(c)
        return out

    def monic(self, f: Poly) -> tuple[Poly, int]:
        """Return (f / lc(f), lc(f))."""
        if not f:
            return f, 1
        c = self.lc(f)
        if c == 1:
            return f, 1
        return self.scale(f, self.gf.inv(c)), c

    # -- division ------------------------------------------------------------------
    def divexact(self, f: Poly, g: Poly) -> Poly:
        """f / g, raising ArithmeticError if g does not divide f."""
        if not g:
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_const(g):
            return self.scale(f, self.gf.inv(g[self.zero_exp]))
        gf = self.gf
        if gf.q == 2 and self.nvars == 1:
            q, r = _bits_divmod(_to_bits(f), _to_bits(g))
            if r:
                raise ArithmeticError("inexact polynomial division")
            return _from_bits(q)
        lg = self.leading_exp(g)
        inv_lc = gf.inv(g[lg])
        rem = dict(f)
        quo: dict = {}
        while rem:
            le = self.leading_exp(rem)
            diff = tuple(a - b for a, b in zip(le, lg))
            if min(diff) < 0:
                raise ArithmeticError("inexact polynomial division")
            c = gf.mul(rem[le], inv_lc)
            quo[diff] = c
            for e, v in g.items():
                ee = tuple(a + b for a, b in zip(e, diff))
                t = gf.sub(rem.get(ee, 0), gf.mul(c, v))
                if t:
                    rem[ee] = t
                else:
                    rem.pop(ee, None)
        return quo

    # -- gcd -----------------------------------------------------------------------
    def gcd(self, f: Poly, g: Poly) -> Poly:
        """Monic (grlex) greatest common divisor; gcd(0, 0) = 0."""
        if not f:
            return self.monic(g)[0]
        if not g:
            return self.monic(f)[0]
        if self.is_const(f) or self.is_const(g):
            return self.one()
        if self.nvars == 1:
            return _univariate_gcd(self, f, g)
        return _recursive_gcd(self, f, g)


@lru_cache(maxsize=None)
def poly_ring(gf: GF, nvars: int) -> PolyRing:
    return PolyRing(gf, nvars)


def _to_dense(f: Poly) -> list[int]:
    deg = max(e[0] for e in f)
    out = [0] * (deg + 1)
    for e, c in f.items():
        out[e[0]] = c
    return out


# F_2[t] as Python ints: bit i is the coefficient of t^i.
def _to_bits(f: Poly) -> int:
    x = 0
    for e in f:
        x |= 1 << e[0]
    return x


def _from_bits(x: int) -> Poly:
    out = {}
    i = 0
    while x:
        if x & 1:
            out[(i,)] = 1
        x >>= 1
        i += 1
    return out


def _bits_mod(a: int, b: int) -> int:
    db = b.bit_length()
    while a.bit_length() >= db:
        a ^= b << (a.bit_length() - db)
    return a


def _bits_divmod(a: int, b: int) -> tuple[int, int]:
    db = b.bit_length()
    q = 0
    while a.bit_length() >= db:
        s = a.bit_length() - db
        q |= 1 << s
        a ^= b << s
    return q, a


def _bits_mul(a: int, b: int) -> int:
    if a.bit_count() > b.bit_count():
        a, b = b, a
    out = 0
    while a:
        low = a & -a
        out ^= b << (low.bit_length() - 1)
        a ^= low
    return out


def _univariate_gcd(R: PolyRing, f: Poly, g: Poly) -> Poly:
    gf = R.gf
    if gf.q == 2:
        a, b = _to_bits(f), _to_bits(g)
        while b:
            a, b = b, _bits_mod(a, b)
        return _from_bits(a)
    if gf.d == 1:
        return _univariate_gcd_prime(gf.p, f, g)
    a, b = _to_dense(f), _to_dense(g)
    if len(a) < len(b):
        a, b = b, a
    while b:
        # a <- a mod b
        inv = gf.inv(b[-1])
        db = len(b) - 1
        while len(a) - 1 >= db:
            c = gf.mul(a[-1], inv)
            shift = len(a) - 1 - db
            if c:
                for i in range(db + 1):
                    a[shift + i] = gf.sub(a[shift + i], gf.mul(c, b[i]))
            a.pop()
            while a and a[-1] == 0:
                a.pop()
        a, b = b, a
    inv = gf.inv(a[-1])
    return {(i,): gf.mul(c, inv) for i, c in enumerate(a) if c}


# Recursive (primitive PRS) gcd over D[x_n], D = F_q[x_1..x_{n-1}].

def _split_last(f: Poly) -> dict[int, Poly]:
    out: dict[int, Poly] = {}
    for e, c in f.items():
        out.setdefault(e[-1], {})[e[:-1]] = c
    return out


def _join_last(F: dict[int, Poly]) -> Poly:
    out = {}
    for k, coef in F.items():
        for e, c in coef.items():
            out[e + (k,)] = c
    return out


def _content(D: PolyRing, F: dict[int, Poly]) -> Poly:
    g: Poly = {}
    for coef in F.values():
        g = D.gcd(g, coef)
        if D.is_one(g):
            break
    return g


def _prim_part(D: PolyRing, F: dict[int, Poly]) -> dict[int, Poly]:
    c = _content(D, F)
    if D.is_one(c):
        return F
    return {k: D.divexact(v, c) for k, v in F.items()}


def _prem(D: PolyRing, A: dict[int, Poly], B: dict[int, Poly]) -> dict[int, Poly]:
    db = max(B)
    lb = B[db]
    A = dict(A)
    while A and max(A) >= db:
        da = max(A)
        la = A[da]
        shift = da - db
        new = {k: D.mul(v, lb) for k, v in A.items()}
        for k, v in B.items():
            kk = k + shift
            t = D.sub(new.get(kk, {}), D.mul(la, v))
            if t:
                new[kk] = t
            else:
                new.pop(kk, None)
        A = new
    return A


def _recursive_gcd(R: PolyRing, f: Poly, g: Poly) -> Poly:
    D = poly_ring(R.gf, R.nvars - 1)
    F, G = _split_last(f), _split_last(g)
    cont = D.gcd(_content(D, F), _content(D, G))
    F, G = _prim_part(D, F), _prim_part(D, G)
    if max(F) < max(G):
        F, G = G, F
    while G and max(G) > 0:
        Rm = _prem(D, F, G)
        F = G
        G = _prim_part(D, Rm) if Rm else {}
    if G:  # G is a nonzero element of D: the primitive gcd is 1
        H = {0: D.one()}
    else:
        H = F
    H = _prim_part(D, H)
    out = _join_last({k: D.mul(v, cont) for k, v in H.items()})
    return R.monic(out)[0]


def _univariate_gcd_prime(p: int, f: Poly, g: Poly) -> Poly:
    a, b = _to_dense(f), _to_dense(g)
    if len(a) < len(b):
        a, b = b, a
    while b:
        inv = pow(b[-1], p - 2, p)
        db = len(b) - 1
        while len(a) - 1 >= db:
            c = a[-1] * inv % p
            shift = len(a) - 1 - db
            if c:
                for i in range(db):
                    a[shift + i] = (a[shift + i] - c * b[i]) % p
            a.pop()
            while a and a[-1] == 0:
                a.pop()
        a, b = b, a
    inv = pow(a[-1], p - 2, p)
    return {(i,): c * inv % p for i, c in enumerate(a) if c}
