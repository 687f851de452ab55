"""Batch Witt arithmetic over F_p for exhaustive checks.

Both kernels run the ghost-lift recursion of :mod:`.ghostlift` on arrays of
digit rows (N, m) with int64 arithmetic modulo p^m.  The numba kernel is used
unless ``COHENWITT_DISABLE_NUMBA=1`` is set or numba is missing; the numpy
kernel vectorizes over rows instead.
"""

from __future__ import annotations

import os

import numpy as np

OPS = {"add": 0, "mul": 1, "neg": 2}
MAX_MODULUS = 1 << 31

try:  # pragma: no cover - exercised indirectly
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False


def numba_enabled() -> bool:
    return HAVE_NUMBA and os.environ.get("COHENWITT_DISABLE_NUMBA", "0") not in ("1", "true", "yes")


def _check(p: int, m: int) -> None:
    if p**m >= MAX_MODULUS:
        raise ValueError(f"p^m = {p**m} is too large for the int64 batch kernels")


# -- numpy -----------------------------------------------------------------------------
def _np_powmod(a: np.ndarray, e: int, mod: int) -> np.ndarray:
    result = np.ones_like(a)
    base = a % mod
    while e:
        if e & 1:
            result = result * base % mod
        e >>= 1
        if e:
            base = base * base % mod
    return result


def _np_ghost(digits: np.ndarray, p: int, m: int, mod: int) -> np.ndarray:
    out = np.zeros_like(digits)
    for n in range(m):
        acc = np.zeros(digits.shape[0], dtype=np.int64)
        for j in range(n + 1):
            acc = (acc + p**j * _np_powmod(digits[:, j], p ** (n - j), mod)) % mod
        out[:, n] = acc
    return out


def batch_numpy(op: str, x: np.ndarray, y: np.ndarray | None, p: int) -> np.ndarray:
    m = x.shape[1]
    _check(p, m)
    mod = p**m
    gx = _np_ghost(x.astype(np.int64), p, m, mod)
    if op == "neg":
        target = (-gx) % mod
    else:
        gy = _np_ghost(y.astype(np.int64), p, m, mod)
        target = (gx + gy) % mod if op == "add" else gx * gy % mod
    z = np.zeros_like(gx)
    for n in range(m):
        acc = target[:, n].copy()
        for j in range(n):
            acc = (acc - p**j * _np_powmod(z[:, j], p ** (n - j), mod)) % mod
        z[:, n] = (acc // p**n) % p
    return z


# -- numba -----------------------------------------------------------------------------
if HAVE_NUMBA:

    @numba.njit(cache=True)
    def _nb_powmod(a, e, mod):
        result = 1
        base = a % mod
        while e:
            if e & 1:
                result = result * base % mod
            e >>= 1
            if e:
                base = base * base % mod
        return result

    @numba.njit(cache=True)
    def _nb_kernel(opcode, x, y, p, m):
        mod = 1
        for _ in range(m):
            mod *= p
        N = x.shape[0]
        z = np.zeros((N, m), dtype=np.int64)
        gx = np.zeros(m, dtype=np.int64)
        gy = np.zeros(m, dtype=np.int64)
        for r in range(N):
            for n in range(m):
                ax = 0
                ay = 0
                pj = 1
                for j in range(n + 1):
                    e = 1
                    for _ in range(n - j):
                        e *= p
                    ax = (ax + pj * _nb_powmod(x[r, j], e, mod)) % mod
                    if opcode != 2:
                        ay = (ay + pj * _nb_powmod(y[r, j], e, mod)) % mod
                    pj *= p
                gx[n] = ax
                gy[n] = ay
            pn = 1
            for n in range(m):
                if opcode == 0:
                    acc = (gx[n] + gy[n]) % mod
                elif opcode == 1:
                    acc = gx[n] * gy[n] % mod
                else:
                    acc = (mod - gx[n]) % mod
                pj = 1
                for j in range(n):
                    e = 1
                    for _ in range(n - j):
                        e *= p
                    acc = (acc - pj * _nb_powmod(z[r, j], e, mod)) % mod
                    pj *= p
                z[r, n] = (acc // pn) % p
                pn *= p
        return z


def batch_numba(op: str, x: np.ndarray, y: np.ndarray | None, p: int) -> np.ndarray:
    if not HAVE_NUMBA:  # pragma: no cover
        raise RuntimeError("numba is not installed")
    m = x.shape[1]
    _check(p, m)
    xx = np.ascontiguousarray(x, dtype=np.int64)
    yy = np.ascontiguousarray(y if y is not None else x, dtype=np.int64)
    return _nb_kernel(OPS[op], xx, yy, p, m)


def batch_op(op: str, x: np.ndarray, y: np.ndarray | None, p: int) -> np.ndarray:
    """Digits of x op y row-wise in W_m(F_p); x, y are (N, m) int arrays."""
    if op not in OPS:
        raise ValueError(f"unknown Witt operation {op!r}")
    if numba_enabled():
        return batch_numba(op, x, y, p)
    return batch_numpy(op, x, y, p)
