"""Reference computations that do not go through the package's Witt code.

W_m(F_p) is identified with Z/p^m by (x_0, ..., x_{m-1}) -> sum p^i tau(x_i),
where tau(a) = a^(p^(m-1)) mod p^m is the Teichmuller lift of a.
"""

import numpy as np
import sympy


def tau(a: int, p: int, m: int) -> int:
    mod = p**m
    a = int(a) % p
    return pow(a, p ** (m - 1), mod) if a else 0


def witt_to_int(digits, p: int) -> int:
    m = len(digits)
    return sum(p**i * tau(a, p, m) for i, a in enumerate(digits)) % p**m


def int_to_witt(n: int, p: int, m: int) -> tuple:
    """Inverse of witt_to_int, by peeling one Teichmuller digit per power of p."""
    mod = p**m
    n %= mod
    out = []
    for i in range(m):
        a = (n // p**i) % p
        out.append(a)
        n = (n - p**i * tau(a, p, m)) % mod
    assert n == 0
    return tuple(out)


def witt_to_int_array(digits: np.ndarray, p: int) -> np.ndarray:
    """Row-wise witt_to_int for an (N, m) digit array."""
    m = digits.shape[1]
    table = np.array([tau(a, p, m) for a in range(p)], dtype=np.int64)
    weights = np.array([p**i for i in range(m)], dtype=np.int64)
    return (table[digits] * weights).sum(axis=1) % p**m


def int_to_witt_array(values: np.ndarray, p: int, m: int) -> np.ndarray:
    """Row-wise int_to_witt."""
    mod = p**m
    table = np.array([tau(a, p, m) for a in range(p)], dtype=np.int64)
    n = values % mod
    out = np.empty((len(values), m), dtype=np.int64)
    for i in range(m):
        a = (n // p**i) % p
        out[:, i] = a
        n = (n - p**i * table[a]) % mod
    assert not n.any()
    return out


def naive_to_int(digits, p: int) -> int:
    """x_0 + p x_1 + ...: not a ring map once p > 2 or m > 2."""
    return sum(p**i * a for i, a in enumerate(digits)) % p ** len(digits)


def ghost_poly(p: int, n: int, xs):
    return sum(p**j * xs[j] ** (p ** (n - j)) for j in range(n + 1))


def to_sympy(poly: dict, gens):
    total = sympy.Integer(0)
    for exps, c in poly.items():
        term = sympy.Integer(c)
        for g, e in zip(gens, exps):
            if e:
                term *= g**e
        total += term
    return total


def ghost_identity_holds(p: int, m: int, op: str, polys) -> bool:
    """w_n(S(X, Y)) == w_n(X) op w_n(Y) as integer polynomials for every n < m."""
    X = sympy.symbols(f"X0:{m}")
    Y = sympy.symbols(f"Y0:{m}")
    S = [to_sympy(f, X + Y) for f in polys]
    for n in range(m):
        lhs = ghost_poly(p, n, S)
        if op == "add":
            rhs = ghost_poly(p, n, X) + ghost_poly(p, n, Y)
        elif op == "mul":
            rhs = ghost_poly(p, n, X) * ghost_poly(p, n, Y)
        else:
            rhs = -ghost_poly(p, n, X)
        if sympy.expand(lhs - rhs) != 0:
            return False
    return True


def z4_tower_defect():
    """S_3(1/(1+t)) - S_2(1/(1+t)) read in (Z/4)[T] localized at (2), s(t) = T.

    At level m, 1/(1+t) = (1+t)^(2^m - 1) / (1+t)^(2^m), so every lambda
    coefficient equals 1/(1+t) and S_m = (1 + T + ... + T^(2^m - 1)) / (1+T)^(2^m).
    Returns the numerator of S_3 - S_2 over the common unit (1+T)^8, mod 4.
    """
    T = sympy.symbols("T")
    s2_num = sum(T**i for i in range(4))
    s3_num = sum(T**i for i in range(8))
    diff = sympy.expand(s3_num - s2_num * (1 + T) ** 4)
    return sympy.Poly(diff, T, modulus=4), T


def gfp_poly(poly: dict, p: int, t):
    """A univariate package polynomial {(i,): c} as a sympy Poly over F_p."""
    expr = sum((c * t**e[0] for e, c in poly.items()), sympy.Integer(0))
    return sympy.Poly(expr, t, modulus=p)


def gfp_ratio(x, t):
    p = x.field.p
    return gfp_poly(x.num, p, t), gfp_poly(x.den, p, t)


def derivative(x, i: int):
    """d/dt_i of a package field element, by the quotient rule on its numerator and denominator."""
    k = x.field

    def dpoly(f):
        out = {}
        for e, c in f.items():
            if e[i] and (c * e[i]) % k.p:
                e2 = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[e2] = k.gf.mul(c, k.gf.from_int(e[i]))
        return k.element({e: c for e, c in out.items() if c}) if out else k.zero()

    num, den = k.element(x.num), k.element(x.den)
    return (dpoly(x.num) * den - num * dpoly(x.den)) / (den * den)


def jacobian_independent(beta) -> bool:
    """In characteristic p, beta is p-independent in F_q(t_1..t_r) iff its Jacobian has rank len(beta)."""
    if not beta:
        return True
    k = beta[0].field
    rows = [[derivative(b, j) for j in range(k.r)] for b in beta]
    if len(beta) > k.r:
        return False
    if len(beta) == 1:
        return any(not d.is_zero() for d in rows[0])
    if len(beta) == 2 and k.r == 2:
        det = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
        return not det.is_zero()
    raise NotImplementedError("only tuples of length <= 2 in at most two variables")
