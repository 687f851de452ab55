"""Cohen-Witt rings C_m(k) inside W_m(k).

An element of C_m(k) is stored as a Witt vector of the ambient W_m(k);
membership is decided by :func:`digitize`, which peels off one canonical
representative per power of p.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property

from .errors import (
    NOT_IN_PERFECT_CORE,
    NOT_IN_SPAN,
    NOT_MEMBER,
    LevelError,
    ModelMismatch,
    TowerIncompatible,
)
from .fields import FieldDescriptor, FieldElement, RationalFunctionField
from .pbasis import LambdaDecomposition, is_p_independent, lambda_decompose, monomial
from .witt import WittVector, div_by_p, truncate, witt_ring


@dataclass(frozen=True)
class CohenDigits:
    digits: tuple[FieldElement, ...]

    def __len__(self) -> int:
        return len(self.digits)

    def __getitem__(self, i: int) -> FieldElement:
        return self.digits[i]

    def to_json(self) -> list[str]:
        return [str(a) for a in self.digits]


def _lookup(cache, exps, reps):
    """b^I, memoized; b^I = b^(I - e_mu) * b_mu for the last non-zero mu."""
    if exps in cache:
        return cache[exps]
    if not any(exps):
        cache[exps] = reps[0].ring.one()
        return cache[exps]
    mu = max(i for i, e in enumerate(exps) if e)
    prev = exps[:mu] + (exps[mu] - 1,) + exps[mu + 1:]
    cache[exps] = _lookup(cache, prev, reps) * reps[mu]
    return cache[exps]


def _is_teichmuller(x: WittVector) -> bool:
    return all(a.is_zero() for a in x.digits[1:])


def representative_sum(reps, dec: LambdaDecomposition, lifts=None, monomials=None) -> WittVector:
    """sum_I b^I * lift(lambda_I)^(p^m) in the ring of ``reps``.

    ``lifts`` may map an exponent tuple to a Witt vector lifting lambda_I; the
    default lift is the Teichmuller one, for which the p^m-th power is again
    Teichmuller and the product is a digit-wise scaling.
    """
    ring = reps[0].ring
    pm = ring.p**dec.level
    total = ring.zero()
    beta = tuple(b.residue() for b in reps)
    all_teich = all(_is_teichmuller(b) for b in reps)
    if monomials is None:
        monomials = {}
    for exps, lam in dec.coefficients.items():
        if all_teich:
            mono = ring.teichmuller(monomial(beta, exps))
        else:
            mono = _lookup(monomials, exps, reps)
        if lifts is not None and exps in lifts:
            term = mono * lifts[exps] ** pm
        else:
            term = mono.teichmuller_scale(lam**pm)
        total = total + term
    return total


def S(b, alpha: FieldElement, lifts=None):
    """The lambda(b, m)-representative of alpha, or NOT_IN_SPAN.

    ``b`` is a tuple of Witt vectors of one ring W_m(k) whose residues are
    p-independent.
    """
    b = tuple(b)
    if not b:
        raise ValueError("S needs at least one representative (use multiplicative_representative)")
    ring = b[0].ring
    beta = tuple(x.residue() for x in b)
    ring.field.check_same(alpha.field)
    dec = lambda_decompose(beta, ring.m, alpha)
    if dec is NOT_IN_SPAN:
        return NOT_IN_SPAN
    return representative_sum(b, dec, lifts)


class CohenRingModel:
    """C_m(k) with a p-basis beta and representatives s(beta_mu) in W_m(k)."""

    def __init__(self, field: RationalFunctionField, m: int, pbasis=None, reps=None, check: bool = True):
        if m < 1:
            raise LevelError("m must be >= 1")
        self.field = field
        self.m = m
        self.ring = witt_ring(field, m)
        self.pbasis = tuple(pbasis) if pbasis is not None else field.gens()
        if reps is None:
            reps = tuple(self.ring.teichmuller(b) for b in self.pbasis)
        else:
            reps = tuple(r if isinstance(r, WittVector) else self.ring.vector(r) for r in reps)
        self.reps = reps
        if check:
            self._check()

    def _check(self) -> None:
        if len(self.reps) != len(self.pbasis):
            raise ModelMismatch("one representative per p-basis element is required")
        for b, s in zip(self.pbasis, self.reps):
            if s.ring != self.ring:
                raise ModelMismatch(f"representative {s} does not lie in {self.ring}")
            if s.residue() != b:
                raise ModelMismatch(f"representative {s} has residue {s.residue()}, expected {b}")
        if len(self.pbasis) != self.field.r or not is_p_independent(self.pbasis):
            raise ModelMismatch("pbasis must be a p-basis of the field")

    @property
    def p(self) -> int:
        return self.field.p

    @cached_property
    def _monomials(self) -> dict:
        return {}

    def is_teichmuller(self) -> bool:
        return all(_is_teichmuller(s) for s in self.reps)

    # -- representatives --------------------------------------------------------------
    def lambda_representative(self, alpha: FieldElement, lifts=None) -> WittVector:
        self.field.check_same(alpha.field)
        if not self.pbasis:
            # a perfect field: S is the multiplicative section
            return self.ring.teichmuller(alpha)
        dec = lambda_decompose(self.pbasis, self.m, alpha)
        if dec is NOT_IN_SPAN:
            return NOT_IN_SPAN
        monos = None if self.is_teichmuller() else self._monomials
        return representative_sum(self.reps, dec, lifts, monos)

    def multiplicative_representative(self, alpha: FieldElement):
        """lift(alpha^(p^-m))^(p^m) for alpha in the perfect core, else NOT_IN_PERFECT_CORE.

        On k = F_q(t_1..t_r) the perfect core is F_q; alpha lies in it iff
        repeated p-th roots succeed until a constant is reached, which takes
        at most log_p(deg alpha) + 1 steps.
        """
        self.field.check_same(alpha.field)
        x = alpha
        while not x.is_constant():
            x = x.pth_root()
            if not isinstance(x, FieldElement):
                return NOT_IN_PERFECT_CORE
        root = alpha.pth_root_iter(self.m)
        return self.ring.teichmuller(root) ** (self.p**self.m)

    # -- digits ---------------------------------------------------------------------
    def truncated(self, m: int) -> "CohenRingModel":
        if not 1 <= m <= self.m:
            raise LevelError(f"cannot truncate C_{self.m} to level {m}")
        if m == self.m:
            return self
        return _truncated(self, m)

    def digitize(self, a: WittVector):
        """Digits (alpha_0..alpha_{m-1}) with a = sum_i p^i S(alpha_i), or NOT_MEMBER.

        a - S(alpha_0) = p * a_1 fixes a_1 only modulo p^(m-1), so the
        recursion continues in W_{m-1}(k) against truncations of the level-m
        map S of this ring.
        """
        if a.ring != self.ring:
            raise ModelMismatch(f"{a} is not in {self.ring}")
        digits = []
        cur = a
        for level in range(self.m, 0, -1):
            alpha = cur.residue()
            digits.append(alpha)
            if level == 1:
                break
            rest = cur - truncate(self.lambda_representative(alpha), level)
            cur = div_by_p(rest)
            if not isinstance(cur, WittVector):
                return NOT_MEMBER
        return CohenDigits(tuple(digits))

    def undigitize(self, d) -> WittVector:
        digits = d.digits if isinstance(d, CohenDigits) else tuple(d)
        if len(digits) != self.m:
            raise LevelError(f"expected {self.m} digits")
        total = self.ring.zero()
        for i, alpha in enumerate(digits):
            if isinstance(alpha, int):
                alpha = self.field.from_int(alpha)
            elif isinstance(alpha, str):
                alpha = self.field.parse(alpha)
            if alpha.is_zero():
                continue
            total = total + self.lambda_representative(alpha).times_p(i)
        return total

    def is_member(self, a: WittVector) -> bool:
        return isinstance(self.digitize(a), CohenDigits)

    # -- serialization ---------------------------------------------------------------
    def descriptor(self) -> dict:
        return {
            "field": self.field.desc.to_json(),
            "m": self.m,
            "pbasis": [str(b) for b in self.pbasis],
            "reps": [s.to_json() for s in self.reps],
        }

    @classmethod
    def from_descriptor(cls, obj: dict) -> "CohenRingModel":
        k = FieldDescriptor.from_json(obj["field"]).field()
        m = int(obj["m"])
        pbasis = [k.parse(b) for b in obj["pbasis"]] if "pbasis" in obj else None
        ring = witt_ring(k, m)
        reps = [ring.from_json(r) for r in obj["reps"]] if "reps" in obj else None
        return cls(k, m, pbasis, reps)

    def __repr__(self) -> str:
        return f"C_{self.m}({self.field}; beta={tuple(map(str, self.pbasis))})"


def _truncated(model: CohenRingModel, m: int) -> CohenRingModel:
    cache = model.__dict__.setdefault("_trunc_cache", {})
    if m not in cache:
        cache[m] = CohenRingModel(model.field, m, model.pbasis, tuple(truncate(s, m) for s in model.reps),
                                  check=False)
    return cache[m]


# -- free-function API ------------------------------------------------------------------
def lambda_representative(model: CohenRingModel, alpha: FieldElement, lifts=None):
    return model.lambda_representative(alpha, lifts)


def digitize(model: CohenRingModel, a: WittVector):
    return model.digitize(a)


def undigitize(model: CohenRingModel, d) -> WittVector:
    return model.undigitize(d)


def multiplicative_representative(model: CohenRingModel, alpha: FieldElement):
    return model.multiplicative_representative(alpha)


@dataclass
class Tower:
    """C_1(k) <- C_2(k) <- ... <- C_M(k) with truncation maps."""

    models: tuple[CohenRingModel, ...]

    @property
    def M(self) -> int:
        return len(self.models)

    def level(self, m: int) -> CohenRingModel:
        return self.models[m - 1]

    def project(self, a: WittVector, m: int) -> WittVector:
        return truncate(a, m)


def tower(models, samples=None, n_samples: int = 20, seed: int = 0) -> Tower:
    """Verify that models[i] has level i+1 and that truncation commutes with S.

    Checks res_{n,m}(S_n(b, alpha)) = S_m(res_{n,m}(b), alpha) on the p-basis
    elements and on random samples; raises TowerIncompatible with the first
    failing (n, m, alpha).
    """
    models = tuple(models)
    if not models:
        raise ValueError("empty tower")
    k = models[0].field
    for i, mod in enumerate(models):
        if mod.m != i + 1:
            raise TowerIncompatible(f"level {i + 1} has m = {mod.m}", (i + 1, None, None))
        if mod.field != k or mod.pbasis != models[0].pbasis:
            raise TowerIncompatible("models differ in field or p-basis", (i + 1, None, None))
    if samples is None:
        rng = random.Random(seed)
        samples = [k.random_element(rng) for _ in range(n_samples)]
    alphas = list(models[0].pbasis) + list(samples)
    for n in range(2, len(models) + 1):
        for alpha in alphas:
            top = models[n - 1].lambda_representative(alpha)
            for m in range(1, n):
                if truncate(top, m) != models[m - 1].lambda_representative(alpha):
                    raise TowerIncompatible(
                        f"truncation of S_{n}({alpha}) differs from S_{m}({alpha})", (n, m, alpha))
    return Tower(models)


def standard_tower(field: RationalFunctionField, M: int, reps_top=None) -> Tower:
    """The tower of truncations of the level-M model."""
    top = CohenRingModel(field, M, reps=reps_top)
    return tower([CohenRingModel(field, m, top.pbasis, tuple(truncate(s, m) for s in top.reps))
                  for m in range(1, M + 1)])
