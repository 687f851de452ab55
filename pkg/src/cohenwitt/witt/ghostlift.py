"""Witt arithmetic over a finite field F_q through ghost components.

Digits are lifted to the Galois ring GR(p^m, d) = (Z/p^m)[w]/(f~), f~ the
integer lift of the defining polynomial of F_q.  Digit n of a Witt sum,
product or negative is then

    z_n = (W_n - sum_{j<n} p^j z~_j^(p^(n-j))) / p^n  mod p,

with W_n the ghost target evaluated on the lifts.  Only z_j mod p is needed
in the correction sum because z^(p^e) mod p^(e+1) depends on z mod p, so
every quantity stays bounded by p^m.  Unlike the structural polynomials this
scales to long vectors (W_9(F_2) costs a few hundred multiplications).
"""

from __future__ import annotations

from functools import lru_cache


class GaloisRing:
    """GR(p^N, d) with elements as coefficient tuples of length d."""

    def __init__(self, p: int, d: int, modulus: tuple[int, ...], N: int):
        self.p, self.d, self.N = p, d, N
        self.mod = p**N
        # reduction rule w^d = -sum_{i<d} f_i w^i
        self.tail = tuple(-c % self.mod for c in modulus[:d])
        self.zero = (0,) * d
        self.one = (1,) + (0,) * (d - 1)

    def lift(self, digits: list[int]) -> tuple[int, ...]:
        return tuple(digits)

    def add(self, a, b):
        M = self.mod
        return tuple((x + y) % M for x, y in zip(a, b))

    def scale(self, a, c: int):
        M = self.mod
        return tuple(x * c % M for x in a)

    def mul(self, a, b):
        d, M = self.d, self.mod
        if d == 1:
            return (a[0] * b[0] % M,)
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k] % M
            if c:
                for i, t in enumerate(self.tail):
                    prod[k - d + i] += c * t
        return tuple(c % M for c in prod[:d])

    def pow(self, a, e: int):
        if self.d == 1:
            return (pow(a[0], e, self.mod),)
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result


@lru_cache(maxsize=None)
def galois_ring(p: int, d: int, modulus: tuple[int, ...], N: int) -> GaloisRing:
    return GaloisRing(p, d, modulus, N)


def _ghost(gr: GaloisRing, lifts, n: int):
    p = gr.p
    acc = gr.zero
    for j in range(n + 1):
        acc = gr.add(acc, gr.scale(gr.pow(lifts[j], p ** (n - j)), p**j))
    return acc


def _solve(gr: GaloisRing, targets, m: int, to_digits):
    p = gr.p
    z_lifts = []
    out = []
    for n in range(m):
        acc = targets[n]
        for j in range(n):
            acc = gr.add(acc, gr.scale(gr.pow(z_lifts[j], p ** (n - j)), -(p**j)))
        pn = p**n
        coeffs = []
        for c in acc:
            if c % pn:
                raise ArithmeticError("ghost component not divisible")
            coeffs.append((c // pn) % p)
        z_lifts.append(tuple(coeffs))
        out.append(to_digits(coeffs))
    return out


def witt_op_finite(gf, op: str, x: list[int], y: list[int] | None) -> list[int]:
    """Digit codes of x op y in W_m(F_q); ``gf`` is the coefficient field."""
    p, d = gf.p, gf.d
    m = len(x)
    gr = galois_ring(p, d, tuple(gf.modulus) if d > 1 else (0, 1), m)
    lx = [tuple(gf._digits(a)) if d > 1 else (a,) for a in x]
    gx = [_ghost(gr, lx, n) for n in range(m)]
    if op == "neg":
        targets = [gr.scale(g, -1) for g in gx]
    else:
        ly = [tuple(gf._digits(a)) if d > 1 else (a,) for a in y]
        gy = [_ghost(gr, ly, n) for n in range(m)]
        if op == "add":
            targets = [gr.add(a, b) for a, b in zip(gx, gy)]
        elif op == "mul":
            targets = [gr.mul(a, b) for a, b in zip(gx, gy)]
        else:
            raise ValueError(f"unknown Witt operation {op!r}")
    to_digits = gf._from_digits if d > 1 else (lambda cs: cs[0])
    return _solve(gr, targets, m, to_digits)
