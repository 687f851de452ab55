"""Finite fields F_{p^d} with table-driven arithmetic.

An element is an ``int`` in ``[0, p^d)`` whose base-p digits are the
coefficients of a polynomial in the generator ``w`` (lowest degree first)
reduced modulo a fixed monic irreducible modulus.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from ..errors import FieldError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _poly_mod_p(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of a by monic-or-not b over F_p (coefficient lists, low first)."""
    a = a[:]
    inv = pow(b[-1], p - 2, p)
    db = len(b) - 1
    while len(a) - 1 >= db and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < db:
            break
        c = a[-1] * inv % p
        shift = len(a) - 1 - db
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def is_irreducible(modulus: tuple[int, ...], p: int) -> bool:
    """Brute-force irreducibility over F_p: no monic factor of degree <= d/2."""
    d = len(modulus) - 1
    if d < 1 or modulus[-1] % p == 0:
        return False
    if d == 1:
        return True
    f = [c % p for c in modulus]
    for deg in range(1, d // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            if not _poly_mod_p(f, list(low) + [1], p):
                return False
    return True


@lru_cache(maxsize=None)
def default_modulus(p: int, d: int) -> tuple[int, ...]:
    """First monic irreducible of degree d in lexicographic order of low coefficients."""
    if d == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=d):
        cand = tuple(reversed(low))  # vary the constant term slowest
        mod = cand + (1,)
        if mod[0] != 0 and is_irreducible(mod, p):
            return mod
    raise FieldError(f"no irreducible polynomial of degree {d} over F_{p}")


class GF:
    """The field F_q, q = p^d, with log/antilog and addition tables."""

    def __init__(self, p: int, d: int = 1, modulus: tuple[int, ...] | None = None):
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if d < 1:
            raise FieldError("degree d must be positive")
        if modulus is None:
            modulus = default_modulus(p, d)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != d + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {d}")
        if not is_irreducible(modulus, p):
            raise FieldError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.d = d
        self.q = p**d
        self.modulus = modulus
        if d > 1:
            self._build_tables()

    # -- construction helpers --------------------------------------------------
    def _digits(self, x: int) -> list[int]:
        out = []
        for _ in range(self.d):
            out.append(x % self.p)
            x //= self.p
        return out

    def _from_digits(self, digs) -> int:
        x = 0
        for c in reversed(list(digs)):
            x = x * self.p + c
        return x

    def _slow_mul(self, a: int, b: int) -> int:
        p, d = self.p, self.d
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        red = _poly_mod_p(prod, list(self.modulus), p)
        red += [0] * (d - len(red))
        return self._from_digits(red)

    def _build_tables(self) -> None:
        q, p = self.q, self.p
        digs = np.array([self._digits(x) for x in range(q)], dtype=np.int64)
        weights = p ** np.arange(self.d, dtype=np.int64)
        self.add_table = (((digs[:, None, :] + digs[None, :, :]) % p) @ weights).astype(np.int64)
        self.neg_table = (((-digs) % p) @ weights).astype(np.int64)
        # find a primitive element
        for g in range(2, q):
            exp = [1]
            x = 1
            for _ in range(q - 2):
                x = self._slow_mul(x, g)
                if x == 1:
                    break
                exp.append(x)
            if len(exp) == q - 1:
                break
        else:  # pragma: no cover - every finite field has a primitive element
            raise FieldError("no primitive element found")
        self.exp_table = np.array(exp + exp, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        log[np.array(exp)] = np.arange(q - 1)
        self.log_table = log
        self._add = self.add_table.tolist()
        self._neg = self.neg_table.tolist()
        self._exp = self.exp_table.tolist()
        self._log = log.tolist()

    # -- arithmetic --------------------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.d == 1:
            return (a + b) % self.p
        return self._add[a][b]

    def neg(self, a: int) -> int:
        if self.d == 1:
            return -a % self.p
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.d == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_q")
        if self.d == 1:
            return pow(a, self.p - 2, self.p)
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def pow(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            return 0
        if self.d == 1:
            return pow(a, e, self.p)
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def frobenius_inverse(self, a: int) -> int:
        # Frobenius has order d on F_{p^d}
        return self.pow(a, self.p ** (self.d - 1))

    def from_int(self, n: int) -> int:
        return n % self.p

    def elements(self):
        return range(self.q)

    # -- text ------------------------------------------------------------------
    def to_str(self, a: int) -> str:
        if self.d == 1:
            return str(a)
        terms = []
        for i, c in enumerate(self._digits(a)):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = "w" if i == 1 else f"w^{i}"
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(terms) if terms else "0"

    def generator(self) -> int:
        """The class of w (requires d > 1)."""
        if self.d == 1:
            raise FieldError("F_p has no extension generator w")
        return self.p

    def __eq__(self, other) -> bool:
        return isinstance(other, GF) and (self.p, self.d, self.modulus) == (other.p, other.d, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.d, self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.d})"
