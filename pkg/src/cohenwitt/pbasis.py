"""Multi-indices, p-independence and the lambda-maps of a p-independent tuple.

For a p-independent tuple beta = (beta_0, ..., beta_{nu-1}) in k and alpha in
the p^m-span k^{p^m}(beta) there are unique coefficients lambda_I(alpha),
indexed by exponent tuples I with entries in [0, p^m), such that

    alpha = sum_I beta^I * lambda_I(alpha)^(p^m).

Two independent routes compute them:

* ``"split"``: when beta is the variable tuple (t_1, ..., t_r) of
  k = F_q(t_1..t_r), write alpha = f g^(p^m - 1) / g^(p^m) and split every
  exponent of the numerator into its residue mod p^m and its quotient.
* ``"linear"``: for an arbitrary beta, solve the level-1 problem as a linear
  system over k in the coordinates of the variable basis, then recurse on the
  level using lambda_J o lambda_I = lambda_{I (+) J}.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field

from .errors import NOT_IN_SPAN, IndexMismatch, LevelError
from .fields.field import FieldElement, RationalFunctionField
from .fields.poly import grlex_key


@dataclass(frozen=True)
class MultiIndex:
    """An exponent tuple in P_{nu,m}: every entry lies in [0, p^m)."""

    exps: tuple[int, ...]
    level: int
    p: int

    def __post_init__(self):
        bound = self.p**self.level
        if any(not 0 <= e < bound for e in self.exps):
            raise LevelError(f"exponents {self.exps} not in [0, {bound})")

    @property
    def nu(self) -> int:
        return len(self.exps)

    @property
    def entries(self) -> dict[int, int]:
        """The finite support as a sparse map mu -> i_mu."""
        return {mu: e for mu, e in enumerate(self.exps) if e}

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.exps)) + ")"


def all_indices(nu: int, m: int, p: int) -> list[MultiIndex]:
    """P_{nu,m} in graded-lex order."""
    exps = sorted(itertools.product(range(p**m), repeat=nu), key=grlex_key)
    return [MultiIndex(e, m, p) for e in exps]


def mindex_reduce(index: MultiIndex, l: int) -> MultiIndex:
    if l > index.level or l < 0:
        raise LevelError(f"cannot reduce level {index.level} index to level {l}")
    mod = index.p**l
    return MultiIndex(tuple(e % mod for e in index.exps), l, index.p)


def mindex_oplus(i: MultiIndex, j: MultiIndex) -> MultiIndex:
    """I (+) J = (i_mu + p^l j_mu), landing at level l + level(J)."""
    if i.p != j.p:
        raise LevelError("indices for different primes")
    if i.nu != j.nu:
        raise IndexMismatch(f"index lengths {i.nu} and {j.nu} differ")
    shift = i.p**i.level
    return MultiIndex(tuple(a + shift * b for a, b in zip(i.exps, j.exps)), i.level + j.level, i.p)


def mindex_split(index: MultiIndex, l: int) -> tuple[MultiIndex, MultiIndex]:
    """Inverse of oplus: index = I (+) J with I at level l."""
    if l > index.level:
        raise LevelError(f"split level {l} above {index.level}")
    mod = index.p**l
    return (MultiIndex(tuple(e % mod for e in index.exps), l, index.p),
            MultiIndex(tuple(e // mod for e in index.exps), index.level - l, index.p))


def monomial(beta, index) -> FieldElement:
    """beta^I = prod beta_mu^(i_mu)."""
    beta = tuple(beta.beta if isinstance(beta, PBasisTuple) else beta)
    exps = index.exps if isinstance(index, MultiIndex) else tuple(index)
    if len(beta) != len(exps):
        raise IndexMismatch(f"{len(beta)} basis elements but index of length {len(exps)}")
    if not beta:
        raise IndexMismatch("empty tuple has no field to take a monomial in")
    out = beta[0].field.one()
    for b, e in zip(beta, exps):
        if e:
            out = out * b**e
    return out


# -- level-1 linear algebra ------------------------------------------------------------

def _standard_coords(alpha: FieldElement, m: int = 1) -> dict[tuple[int, ...], FieldElement]:
    """lambda-coefficients of alpha w.r.t. the variable p-basis (split route)."""
    k = alpha.field
    R, gf, p = k.R, k.gf, k.p
    if alpha.is_zero():
        return {}
    f, g = alpha.num, alpha.den
    h = f
    if not R.is_one(g):
        gp1 = R.pow(g, p - 1)
        factor = gp1
        for _ in range(m):
            h = R.mul(h, factor)
            factor = R.frobenius(factor)
    pm = p**m
    root_exp = p ** ((-m) % gf.d)
    buckets: dict[tuple[int, ...], dict] = {}
    for e in sorted(h, key=grlex_key):
        c = h[e]
        i = tuple(a % pm for a in e)
        q = tuple(a // pm for a in e)
        buckets.setdefault(i, {})[q] = gf.pow(c, root_exp)
    return {i: k.element(poly, g) for i, poly in buckets.items()}


def _level1_matrix(beta: tuple[FieldElement, ...], rows: list[MultiIndex]):
    k = beta[0].field
    cols = [e.exps for e in all_indices(k.r, 1, k.p)]
    matrix = []
    for idx in rows:
        coords = _standard_coords(monomial(beta, idx), 1)
        matrix.append([coords.get(c, k.zero()) for c in cols])
    return matrix, cols


def _row_reduce(rows: list[list[FieldElement]], ncols: int) -> tuple[list[list[FieldElement]], list[int]]:
    """Reduced row echelon form over k; returns (rows, pivot columns)."""
    rows = [list(r) for r in rows]
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if not rows[i][col].is_zero()), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = rows[rank][col].inverse()
        rows[rank] = [x * inv for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and not rows[i][col].is_zero():
                c = rows[i][col]
                rows[i] = [a - c * b for a, b in zip(rows[i], rows[rank])]
        pivots.append(col)
        rank += 1
    return rows, pivots


def is_p_independent(beta, m: int = 1) -> bool:
    """True iff the p^m monomials beta^I are linearly independent over k^(p^m).

    Independence at level 1 implies it at every level, so the level-1
    system decides it: the decomposition of an element in the span is unique
    iff the monomial coordinate vectors have full rank.
    """
    beta = tuple(beta.beta if isinstance(beta, PBasisTuple) else beta)
    if not beta:
        return True
    k = beta[0].field
    if len(beta) > k.r or any(b.is_zero() for b in beta):
        return False
    rows = all_indices(len(beta), 1, k.p)
    matrix, cols = _level1_matrix(beta, rows)
    # transpose: unknowns are the rows
    transposed = [[matrix[i][j] for i in range(len(rows))] for j in range(len(cols))]
    _, pivots = _row_reduce(transposed, len(rows))
    return len(pivots) == len(rows)


@dataclass(frozen=True)
class PBasisTuple:
    beta: tuple[FieldElement, ...]
    certified_level: int = 1

    @classmethod
    def certify(cls, beta, m: int = 1) -> "PBasisTuple":
        beta = tuple(beta)
        if not is_p_independent(beta, 1):
            raise ValueError(f"tuple {tuple(map(str, beta))} is not p-independent")
        return cls(beta, max(m, 1))

    @property
    def nu(self) -> int:
        return len(self.beta)

    def is_variable_basis(self) -> bool:
        if not self.beta:
            return False
        k = self.beta[0].field
        return self.beta == k.gens()

    def is_full(self) -> bool:
        """True iff this tuple is a p-basis of the whole field."""
        if not self.beta:
            return True
        return self.nu == self.beta[0].field.r

    def __len__(self) -> int:
        return len(self.beta)


@dataclass
class LambdaDecomposition:
    beta: tuple[FieldElement, ...]
    level: int
    coefficients: dict = dc_field(default_factory=dict)

    def __getitem__(self, index) -> FieldElement:
        exps = index.exps if isinstance(index, MultiIndex) else tuple(index)
        if exps in self.coefficients:
            return self.coefficients[exps]
        return self.beta[0].field.zero() if self.beta else None

    def reconstruct(self, field: RationalFunctionField | None = None) -> FieldElement:
        if field is None:
            if self.beta:
                field = self.beta[0].field
            elif self.coefficients:
                field = next(iter(self.coefficients.values())).field
            else:
                raise ValueError("empty decomposition of the empty tuple: pass the field")
        pm = field.p**self.level
        R = field.R
        # terms mostly share a denominator: add numerators per denominator, reduce once
        groups: dict = {}
        for exps, lam in self.coefficients.items():
            mono = monomial(self.beta, exps) if self.beta else field.one()
            num = R.mul(mono.num, R.pow(lam.num, pm))
            den = R.mul(mono.den, R.pow(lam.den, pm))
            key = tuple(sorted(den.items()))
            if key in groups:
                groups[key] = (R.add(groups[key][0], num), den)
            else:
                groups[key] = (num, den)
        total = field.zero()
        for num, den in groups.values():
            total = total + field.element(num, den)
        return total

    def to_json(self) -> dict:
        out = {}
        for exps in sorted(self.coefficients, key=grlex_key):
            out["(" + ",".join(map(str, exps)) + ")"] = str(self.coefficients[exps])
        return out


def _decompose_linear(beta, m, alpha, rng: random.Random | None):
    """Level-m coefficients by level-1 linear solves and the composition law."""
    k = alpha.field
    p = k.p
    rows = all_indices(len(beta), 1, p)
    order = list(range(len(rows)))
    if rng is not None:
        rng.shuffle(order)
    rows = [rows[i] for i in order]
    matrix, cols = _level1_matrix(beta, rows)
    # eliminate once on [A | I]; each solve is then a matrix-vector product
    n_eq, n_unk = len(cols), len(rows)
    aug = [[matrix[i][j] for i in range(n_unk)] + [k.one() if c == j else k.zero() for c in range(n_eq)]
           for j in range(n_eq)]
    red, pivots = _row_reduce(aug, n_unk)
    if len(pivots) < n_unk:
        raise ValueError("beta is not p-independent")
    transform = [row[n_unk:] for row in red]

    def combine(row, coords):
        total = k.zero()
        for coef, c in zip(row, cols):
            v = coords.get(c)
            if v is not None and not coef.is_zero():
                total = total + coef * v
        return total

    def level1(gamma: FieldElement):
        # sum_I c_I X[I][J] = a_J after taking p-th roots of both sides
        coords = _standard_coords(gamma, 1)
        for row in transform[n_unk:]:
            if not combine(row, coords).is_zero():
                return NOT_IN_SPAN
        sol = {}
        for r_i, col in enumerate(pivots):
            val = combine(transform[r_i], coords)
            if not val.is_zero():
                sol[rows[col].exps] = val
        return sol

    def recurse(gamma: FieldElement, level: int):
        if gamma.is_zero():
            return {}
        first = level1(gamma)
        if first is NOT_IN_SPAN:
            return NOT_IN_SPAN
        if level == 1:
            return first
        out = {}
        for i_exps, lam in first.items():
            inner = recurse(lam, level - 1)
            if inner is NOT_IN_SPAN:
                return NOT_IN_SPAN
            I = MultiIndex(i_exps, 1, p)
            for j_exps, mu in inner.items():
                out[mindex_oplus(I, MultiIndex(j_exps, level - 1, p)).exps] = mu
        return out

    return recurse(alpha, m)


def lambda_decompose(beta, m: int, alpha: FieldElement, method: str = "auto",
                     order_seed: int | None = None):
    """The unique lambda-coefficients of alpha at level m, or NOT_IN_SPAN.

    ``method`` picks ``"split"`` (variable basis only), ``"linear"`` or
    ``"auto"``.  ``order_seed`` shuffles the unknown order of the linear route.
    """
    beta = tuple(beta.beta if isinstance(beta, PBasisTuple) else beta)
    if m < 1:
        raise LevelError("level must be >= 1")
    k = alpha.field
    for b in beta:
        k.check_same(b.field)
    if not beta:
        # the p^m-span of the empty tuple is k^(p^m)
        root = alpha.pth_root_iter(m)
        if not isinstance(root, FieldElement):
            return NOT_IN_SPAN
        coeffs = {(): root} if not root.is_zero() else {}
        return LambdaDecomposition((), m, coeffs)
    if method == "auto":
        method = "split" if beta == k.gens() else "linear"
    if method == "split":
        if beta != k.gens():
            raise IndexMismatch("split route needs beta = (t1, ..., tr)")
        coeffs = {e: v for e, v in _standard_coords(alpha, m).items() if not v.is_zero()}
    elif method == "linear":
        rng = random.Random(order_seed) if order_seed is not None else None
        coeffs = _decompose_linear(beta, m, alpha, rng)
        if coeffs is NOT_IN_SPAN:
            return NOT_IN_SPAN
    else:
        raise ValueError(f"unknown method {method!r}")
    return LambdaDecomposition(beta, m, coeffs)


def lambda_map(beta, index: MultiIndex, alpha: FieldElement):
    """lambda_I(alpha) for a single index."""
    dec = lambda_decompose(beta, index.level, alpha)
    if dec is NOT_IN_SPAN:
        return dec
    return dec[index]
