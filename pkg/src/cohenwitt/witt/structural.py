"""Witt structural polynomials.

The sum, product and negation polynomials are defined by the ghost
identities w_n(S(X, Y)) = w_n(X) + w_n(Y), w_n(P(X, Y)) = w_n(X) w_n(Y) and
w_n(N(X)) = -w_n(X), where w_n(X) = sum_{j<=n} p^j X_j^(p^(n-j)).  Solving
for the top digit gives the integral recursion

    S_n = (w_n(X) + w_n(Y) - sum_{j<n} p^j S_j^(p^(n-j))) / p^n.

Polynomials are dicts from exponent tuples over the 2m variables
(X_0..X_{m-1}, Y_0..Y_{m-1}) to integer coefficients.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

IntPoly = dict


def _add(f: IntPoly, g: IntPoly, scale: int = 1, mod: int | None = None) -> IntPoly:
    out = dict(f)
    for e, c in g.items():
        v = out.get(e, 0) + scale * c
        if mod is not None:
            v %= mod
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _mul(f: IntPoly, g: IntPoly, mod: int | None = None) -> IntPoly:
    if len(f) < len(g):
        f, g = g, f
    acc: dict = {}
    for e1, c1 in g.items():
        for e2, c2 in f.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            acc[e] = acc.get(e, 0) + c1 * c2
    if mod is not None:
        return {e: c % mod for e, c in acc.items() if c % mod}
    return {e: c for e, c in acc.items() if c}


def _pow(f: IntPoly, n: int, nvars: int, mod: int | None = None) -> IntPoly:
    result: IntPoly = {(0,) * nvars: 1}
    base = f
    while n:
        if n & 1:
            result = _mul(result, base, mod)
        n >>= 1
        if n:
            base = _mul(base, base, mod)
    return result


def _var(i: int, nvars: int) -> IntPoly:
    e = [0] * nvars
    e[i] = 1
    return {tuple(e): 1}


def ghost(p: int, n: int, offset: int, nvars: int, mod: int | None = None) -> IntPoly:
    """w_n in the variables offset..offset+n."""
    out: IntPoly = {}
    for j in range(n + 1):
        out = _add(out, _pow(_var(offset + j, nvars), p ** (n - j), nvars), p**j, mod)
    return out


def _solve(p: int, m: int, target, exact: bool) -> list[IntPoly]:
    """Solve w_n(Z) = target(n) for Z_0..Z_{m-1}.

    With ``exact`` the integer polynomials are returned.  Otherwise stage n
    works modulo p^(n+1), which is enough to fix Z_n mod p because Z_j^(p^e)
    mod p^(e+1) depends only on Z_j mod p; the results are reduced mod p.
    """
    nvars = 2 * m
    out: list[IntPoly] = []
    for n in range(m):
        mod = None if exact else p ** (n + 1)
        num = target(n, mod)
        for j in range(n):
            zj = out[j] if exact else {e: c for e, c in out[j].items()}
            num = _add(num, _pow(zj, p ** (n - j), nvars, None if exact else p ** (n - j + 1)), -(p**j), mod)
        pn = p**n
        zn = {}
        for e, c in num.items():
            if mod is not None:
                c %= mod
            if c % pn:
                raise ArithmeticError("ghost recursion is not integral")
            c //= pn
            if not exact:
                c %= p
            if c:
                zn[e] = c
        out.append(zn)
    return out


def integral_polynomials(p: int, m: int, op: str) -> list[IntPoly]:
    """Exact integer structural polynomials (small p^m only)."""
    return _build(p, m, op, exact=True)


def _build(p: int, m: int, op: str, exact: bool) -> list[IntPoly]:
    nvars = 2 * m
    if op == "add":
        def target(n, mod):
            return _add(ghost(p, n, 0, nvars, mod), ghost(p, n, m, nvars, mod), 1, mod)
    elif op == "mul":
        def target(n, mod):
            return _mul(ghost(p, n, 0, nvars, mod), ghost(p, n, m, nvars, mod), mod)
    elif op == "neg":
        def target(n, mod):
            return {e: (-c if mod is None else -c % mod) for e, c in ghost(p, n, 0, nvars, mod).items()}
    else:
        raise ValueError(f"unknown Witt operation {op!r}")
    return _solve(p, m, target, exact)


def ghost_eval(poly: IntPoly, values) -> int:
    total = 0
    for e, c in poly.items():
        term = c
        for v, a in zip(values, e):
            if a:
                term *= v**a
        total += term
    return total


@dataclass(frozen=True)
class ReducedPolynomial:
    """A structural polynomial reduced mod p, split into X- and Y-parts."""

    terms: tuple[tuple[tuple[int, ...], tuple[int, ...], int], ...]  # (x_exps, y_exps, coef mod p)
    m: int

    @classmethod
    def from_intpoly(cls, poly: IntPoly, m: int, p: int) -> "ReducedPolynomial":
        terms = []
        for e in sorted(poly):
            c = poly[e] % p
            if c:
                terms.append((e[:m], e[m:], c))
        return cls(tuple(terms), m)

    def __len__(self) -> int:
        return len(self.terms)


class StructuralCache:
    """Read-mostly cache of reduced structural polynomials keyed by (p, m, op).

    Readers only ever see fully built entries: an entry is installed with a
    single dict assignment after it is complete.  Concurrent duplicate builds
    are allowed; they produce identical values.
    """

    def __init__(self):
        self._entries: dict = {}
        self._lock = threading.Lock()

    def get(self, p: int, m: int, op: str) -> tuple[ReducedPolynomial, ...]:
        key = (p, m, op)
        hit = self._entries.get(key)
        if hit is not None:
            return hit
        # a longer cached list contains the shorter one as a prefix
        for (pp, mm, oo), polys in list(self._entries.items()):
            if pp == p and oo == op and mm > m:
                built = tuple(ReducedPolynomial(_restrict(rp.terms, mm, m), m) for rp in polys[:m])
                break
        else:
            raw = _build(p, m, op, exact=False)
            built = tuple(ReducedPolynomial.from_intpoly(poly, m, p) for poly in raw)
        with self._lock:
            self._entries.setdefault(key, built)
        return self._entries[key]

    def clear(self) -> None:
        with self._lock:
            self._entries.clear()


def _restrict(terms, big_m: int, m: int):
    out = []
    for xe, ye, c in terms:
        if any(xe[m:]) or any(ye[m:]):
            raise AssertionError("digit n polynomial uses a later variable")
        out.append((xe[:m], ye[:m], c))
    return tuple(out)


CACHE = StructuralCache()


def structural_polynomials(p: int, m: int, op: str) -> tuple[ReducedPolynomial, ...]:
    return CACHE.get(p, m, op)
