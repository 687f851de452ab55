"""Morphisms of Cohen-Witt rings.

A morphism C_m(k_1) -> C_m(k_2) is fixed by a residue map phi_k and the
images of representatives b of a p-basis of k_1.  Writing a = sum p^i S(b, alpha_i)
and alpha = sum_I beta^I lambda_I(alpha)^(p^m), it is evaluated by

    phi(a) = sum_i p^i sum_I phi(b)^I [phi_k(lambda_I(alpha_i))]^(p^m).

This only needs lambda-maps in the source, so it also covers residue maps
whose image is not separable (the Frobenius twist, the TEP inclusion).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .cohen import CohenRingModel, S, _lookup, representative_sum
from .errors import (
    NOT_IN_SPAN,
    DivisionByZero,
    ModelMismatch,
    SeparabilityWitnessInvalid,
    StageError,
)
from .fields import FieldElement, RationalFunctionField
from .pbasis import is_p_independent, lambda_decompose
from .witt import WittVector


class FieldMap:
    """A homomorphism F_q(t_1..t_r) -> k_2 fixing F_q, given by the images of the t_i."""

    def __init__(self, source: RationalFunctionField, target: RationalFunctionField, images):
        images = tuple(target.parse(x) if isinstance(x, str) else x for x in images)
        if len(images) != source.r:
            raise ModelMismatch(f"need {source.r} generator images, got {len(images)}")
        if source.gf != target.gf:
            raise ModelMismatch("residue maps must fix the coefficient field F_q")
        for x in images:
            target.check_same(x.field)
        self.source, self.target, self.images = source, target, images

    @classmethod
    def identity(cls, k: RationalFunctionField) -> "FieldMap":
        return cls(k, k, k.gens())

    def is_identity(self) -> bool:
        return self.source == self.target and self.images == self.source.gens()

    def _poly(self, f):
        k2 = self.target
        total = k2.zero()
        cache: dict = {}
        for e, c in f.items():
            term = k2.const(c)
            for i, a in enumerate(e):
                if a:
                    key = (i, a)
                    if key not in cache:
                        cache[key] = self.images[i] ** a
                    term = term * cache[key]
            total = total + term
        return total

    def __call__(self, x: FieldElement) -> FieldElement:
        self.source.check_same(x.field)
        if self.is_identity():
            return x
        num, den = self._poly(x.num), self._poly(x.den)
        if den.is_zero():
            raise DivisionByZero(f"residue map sends the denominator of {x} to 0")
        return num / den

    def compose(self, other: "FieldMap") -> "FieldMap":
        """self o other."""
        return FieldMap(other.source, self.target, tuple(self(x) for x in other.images))

    def on_vector(self, x: WittVector, ring) -> WittVector:
        """W_m(phi_k): digit-wise application."""
        return WittVector(ring, tuple(self(a) for a in x.digits))

    def to_json(self) -> list[str]:
        return [str(x) for x in self.images]

    def __eq__(self, other) -> bool:
        return (isinstance(other, FieldMap) and self.source == other.source
                and self.target == other.target and self.images == other.images)

    def __hash__(self) -> int:
        return hash(self.images)


def _transport_one(basis_reps, images, target_ring, phi_k, alpha: FieldElement, cache) -> WittVector:
    """phi(S(b, alpha)) = sum_I phi(b)^I [phi_k(lambda_I(alpha))]^(p^m)."""
    m, p = target_ring.m, target_ring.p
    pm = p**m
    if not basis_reps:
        dec = lambda_decompose((), m, alpha)
        lam = dec[()] if dec.coefficients else alpha.field.zero()
        return target_ring.teichmuller(phi_k(lam) ** pm)
    beta = tuple(b.residue() for b in basis_reps)
    dec = lambda_decompose(beta, m, alpha)
    if dec is NOT_IN_SPAN:
        raise ModelMismatch(f"{alpha} is not in the span of the source p-basis")
    total = target_ring.zero()
    for exps, lam in dec.coefficients.items():
        mono = _lookup(cache, exps, images)
        total = total + mono.teichmuller_scale(phi_k(lam) ** pm)
    return total


@dataclass
class CohenMorphism:
    """phi: source -> target respecting basis_reps -> rep_images over residue_map.

    ``route`` selects the evaluation: ``"transport"`` (the formula above),
    ``"digits"`` (undigitize_target o digitize_source; needs the identity on
    k and the same p-basis) or ``"digitwise"`` (W_m(phi_k); valid when the
    source representatives are Teichmuller and rep_images are their
    digit-wise images).
    """

    source: CohenRingModel
    target: CohenRingModel
    residue_map: FieldMap
    basis_reps: tuple
    rep_images: tuple
    route: str = "transport"
    name: str = ""
    extras: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.source.m != self.target.m:
            raise ModelMismatch("source and target have different characteristic")
        if len(self.basis_reps) != len(self.rep_images):
            raise ModelMismatch("one image per source representative is required")
        for b in self.basis_reps:
            if b.ring != self.source.ring:
                raise ModelMismatch(f"{b} is not in the source ring")
        for c in self.rep_images:
            if c.ring != self.target.ring:
                raise ModelMismatch(f"{c} is not in the target ring")
        for b, c in zip(self.basis_reps, self.rep_images):
            if self.residue_map(b.residue()) != c.residue():
                raise ModelMismatch(f"image {c} of {b} does not lie over phi_k({b.residue()})")
        if tuple(self.basis_reps) == tuple(self.source.reps):
            self._digit_model = self.source
        else:
            beta = tuple(b.residue() for b in self.basis_reps)
            self._digit_model = CohenRingModel(self.source.field, self.source.m, beta, self.basis_reps)
        self._cache: dict = {}

    @property
    def m(self) -> int:
        return self.source.m

    def __call__(self, a: WittVector, route: str | None = None) -> WittVector:
        route = route or self.route
        if a.ring != self.source.ring:
            raise ModelMismatch(f"{a} is not in the source ring {self.source.ring}")
        if route == "digitwise":
            return self.residue_map.on_vector(a, self.target.ring)
        digits = self._digit_model.digitize(a)
        if not digits:
            raise ModelMismatch(f"{a} is not a member of {self.source}")
        if route == "digits":
            if not self.residue_map.is_identity() or self.source.pbasis != self.target.pbasis:
                raise ModelMismatch("the digit route needs the identity on k and a shared p-basis")
            return self.target.undigitize(digits)
        if route != "transport":
            raise ValueError(f"unknown route {route!r}")
        ring = self.target.ring
        total = ring.zero()
        for i, alpha in enumerate(digits.digits):
            if alpha.is_zero():
                continue
            t = _transport_one(self.basis_reps, self.rep_images, ring, self.residue_map, alpha, self._cache)
            total = total + t.times_p(i)
        return total

    def respects(self) -> bool:
        return all(self(b) == c for b, c in zip(self.basis_reps, self.rep_images))

    def descriptor(self) -> dict:
        return {
            "source": self.source.descriptor(),
            "target": self.target.descriptor(),
            "residue_map": self.residue_map.to_json(),
            "basis_reps": [b.to_json() for b in self.basis_reps],
            "rep_images": [c.to_json() for c in self.rep_images],
        }

    def __repr__(self) -> str:
        return f"CohenMorphism({self.name or 'phi'}: {self.source} -> {self.target})"


def identity_morphism(model: CohenRingModel) -> CohenMorphism:
    return CohenMorphism(model, model, FieldMap.identity(model.field), model.reps, model.reps, name="id")


def structure_isomorphism(m1: CohenRingModel, m2: CohenRingModel) -> CohenMorphism:
    """The unique isomorphism C_m(k) -> C_m(k) over the identity with s_1 -> s_2."""
    if m1.field != m2.field:
        raise ModelMismatch("structure isomorphism needs the same residue field")
    if m1.m != m2.m:
        raise ModelMismatch("structure isomorphism needs the same characteristic")
    if m1.pbasis != m2.pbasis:
        raise ModelMismatch("structure isomorphism needs the same p-basis")
    return CohenMorphism(m1, m2, FieldMap.identity(m1.field), m1.reps, m2.reps, route="digits",
                         name="structure")


def p_rank(elements) -> int:
    """Size of a maximal p-independent subtuple (greedy)."""
    chosen: list = []
    for x in elements:
        if is_p_independent(tuple(chosen) + (x,)):
            chosen.append(x)
    return len(chosen)


def embedding_over_base(base: CohenRingModel, m1: CohenRingModel, m2: CohenRingModel, phi_k: FieldMap,
                        relative_basis, iota1: FieldMap, iota2: FieldMap,
                        base_images1=None, base_images2=None) -> CohenMorphism:
    """The morphism C(k_1) -> C(k_2) over phi_k extending the base embeddings.

    ``relative_basis`` is the caller's witness: a tuple in k_1, p-independent
    over k_1^p(iota1(k_0)), which together with part of iota1(beta_0) forms a
    p-basis of k_1.  The base embeddings send s_0(beta_0) to ``base_images``
    (default: the lambda-representatives of iota_i(beta_0)).
    """
    if not (base.m == m1.m == m2.m):
        raise ModelMismatch("all three models must have the same characteristic")
    if phi_k.source != m1.field or phi_k.target != m2.field:
        raise ModelMismatch("phi_k must map k_1 to k_2")
    if iota1.source != base.field or iota1.target != m1.field:
        raise ModelMismatch("iota1 must map k_0 to k_1")
    if iota2.source != base.field or iota2.target != m2.field:
        raise ModelMismatch("iota2 must map k_0 to k_2")
    for g in base.field.gens():
        if phi_k(iota1(g)) != iota2(g):
            raise ModelMismatch(f"phi_k o iota1 and iota2 differ on {g}")
    gamma = tuple(m1.field.parse(x) if isinstance(x, str) else x for x in relative_basis)
    beta0_1 = tuple(iota1(b) for b in base.pbasis)
    base_rank = p_rank(beta0_1)
    if p_rank(beta0_1 + gamma) != base_rank + len(gamma) or not is_p_independent(gamma):
        raise SeparabilityWitnessInvalid("relative tuple is not p-independent over the base")

    if base_images1 is None:
        base_images1 = tuple(m1.lambda_representative(x) for x in beta0_1)
    if base_images2 is None:
        base_images2 = tuple(m2.lambda_representative(iota2(b)) for b in base.pbasis)
    iota_A1 = CohenMorphism(base, m1, iota1, base.reps, tuple(base_images1), name="iota1")
    iota_A2 = CohenMorphism(base, m2, iota2, base.reps, tuple(base_images2), name="iota2")

    # gamma first, then greedily the base basis
    chosen = list(gamma)
    reps = [m1.lambda_representative(g) for g in gamma]
    images = [m2.lambda_representative(phi_k(g)) for g in gamma]
    skipped = []
    for mu, x in enumerate(beta0_1):
        if is_p_independent(tuple(chosen) + (x,)):
            chosen.append(x)
            reps.append(base_images1[mu])
            images.append(base_images2[mu])
        else:
            skipped.append(mu)
    if len(chosen) != m1.field.r:
        raise SeparabilityWitnessInvalid("relative tuple and base p-basis do not span k_1")
    phi = CohenMorphism(m1, m2, phi_k, tuple(reps), tuple(images), name="over-base",
                        extras={"iota_A1": iota_A1, "iota_A2": iota_A2})
    for mu in skipped:
        if phi(base_images1[mu]) != base_images2[mu]:
            raise ModelMismatch(f"the extension disagrees with the base on s_0({base.pbasis[mu]})")
    return phi


def tep_embed(model: CohenRingModel, n: int) -> CohenMorphism:
    """Adjoin p^n-th roots of the p-basis: C_m(k) -> C_m(k(beta^(p^-n))).

    The target residue field is F_q(u_1..u_r) with t_i = u_i^(p^n); it is
    stored as a fresh copy of F_q(t_1..t_r) whose variables play the u_i.
    Each s(beta_mu) goes to the Teichmuller lift of phi_k(beta_mu), which is
    the p^n-th power of the witness [phi_k(beta_mu)^(p^-n)].
    """
    if not 0 <= n <= model.m:
        raise StageError(f"stage {n} not in [0, {model.m}]")
    if n == 0:
        phi = identity_morphism(model)
        phi.extras["witnesses"] = model.reps
        return phi
    k = model.field
    q = k.p**n
    phi_k = FieldMap(k, k, tuple(g**q for g in k.gens()))
    target = CohenRingModel(k, model.m)
    images = tuple(target.ring.teichmuller(phi_k(b)) for b in model.pbasis)
    witnesses = []
    for b in model.pbasis:
        root = phi_k(b).pth_root_iter(n)
        witnesses.append(target.ring.teichmuller(root))
    phi = CohenMorphism(model, target, phi_k, model.reps, images, name=f"tep{n}",
                        extras={"witnesses": tuple(witnesses), "stage": n,
                                "digitwise_ok": model.is_teichmuller()})
    return phi


# -- enrichment -------------------------------------------------------------------------
@dataclass
class EnrichmentReport:
    checked: int
    mode: str
    discrepancies: list

    @property
    def ok(self) -> bool:
        return not self.discrepancies


def random_member(model: CohenRingModel, rng: random.Random, residue: FieldElement | None = None,
                  max_deg: int = 2) -> WittVector:
    k = model.field
    digits = [k.random_element(rng, max_deg) for _ in range(model.m)]
    if residue is not None:
        digits[0] = residue
    return model.undigitize(digits)


def random_p_independent(k: RationalFunctionField, rng: random.Random, nu: int | None = None, max_deg: int = 2):
    nu = k.r if nu is None else nu
    while True:
        beta = tuple(k.random_element(rng, max_deg, allow_zero=False) for _ in range(nu))
        if is_p_independent(beta):
            return beta


def check_enrichment(phi, samples=None, n_samples: int = 50, seed: int = 0) -> EnrichmentReport:
    """Compare phi(S_1(b, alpha)) with S_2(phi(b), phi_k(alpha)).

    When phi_k(res b) is not p-independent in k_2 (a purely inseparable
    residue map such as the TEP inclusion) S_2 is evaluated on the image
    Cohen subring over phi_k(k_1): sum_I phi(b)^I [phi_k(lambda_I(alpha))]^(p^m),
    and phi itself is applied digit-wise when that route is valid.
    """
    src, tgt = phi.source, phi.target
    phi_k = phi.residue_map
    if samples is None:
        rng = random.Random(seed)
        samples = []
        for _ in range(n_samples):
            beta = random_p_independent(src.field, rng)
            b = tuple(random_member(src, rng, residue=x) for x in beta)
            samples.append((b, src.field.random_element(rng)))
    mode = "separable"
    bad = []
    extras = getattr(phi, "extras", {})
    route = "digitwise" if extras.get("digitwise_ok") else None
    ev = (lambda a: phi(a, route=route)) if route else phi
    for b, alpha in samples:
        lhs = ev(S(b, alpha))
        phib = tuple(ev(x) for x in b)
        image_beta = tuple(x.residue() for x in phib)
        if is_p_independent(image_beta):
            rhs = S(phib, phi_k(alpha))
        else:
            mode = "image-subring"
            dec = lambda_decompose(tuple(x.residue() for x in b), src.m, alpha)
            mapped = type(dec)(image_beta, dec.level, {e: phi_k(v) for e, v in dec.coefficients.items()})
            rhs = representative_sum(phib, mapped)
        if lhs != rhs:
            bad.append((b, alpha, lhs, rhs))
    return EnrichmentReport(len(samples), mode, bad)


class CorruptedMorphism:
    """Negative control: phi with the last digit of every output shifted by 1."""

    def __init__(self, phi: CohenMorphism):
        self.phi = phi
        self.source, self.target, self.residue_map = phi.source, phi.target, phi.residue_map

    def __call__(self, a: WittVector) -> WittVector:
        out = self.phi(a)
        digits = list(out.digits)
        digits[-1] = digits[-1] + 1
        return WittVector(out.ring, tuple(digits))


def compose(psi: CohenMorphism, phi: CohenMorphism):
    """psi o phi as a callable."""
    if phi.target.ring != psi.source.ring:
        raise ModelMismatch("morphisms are not composable")
    return lambda a: psi(phi(a))


__all__ = [
    "CohenMorphism",
    "CorruptedMorphism",
    "EnrichmentReport",
    "FieldMap",
    "check_enrichment",
    "compose",
    "embedding_over_base",
    "identity_morphism",
    "p_rank",
    "random_member",
    "random_p_independent",
    "structure_isomorphism",
    "tep_embed",
]
