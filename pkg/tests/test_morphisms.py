import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cohenwitt import (
    CohenRingModel,
    FieldMap,
    check_enrichment,
    embedding_over_base,
    identity_morphism,
    make_field,
    structure_isomorphism,
    tep_embed,
)
from cohenwitt.errors import DivisionByZero, ModelMismatch, SeparabilityWitnessInvalid, StageError
from cohenwitt.morphisms import CohenMorphism, CorruptedMorphism, compose, p_rank, random_member

from strategies import members

F2 = make_field(2)
F2T = make_field(2, 1, 1)
F3T = make_field(3, 1, 1)
F2T2 = make_field(2, 1, 2)

C1 = CohenRingModel(F2T, 2)
C2 = CohenRingModel(F2T, 2, reps=[["t", "1"]])


def test_structure_isomorphism_examples():
    phi = structure_isomorphism(C1, C2)
    R = C1.ring
    assert phi(R.vector(["t", 0])) == R.vector(["t", 1])
    assert phi(R.one()) == R.one()
    # digits of (t,1) for s_1 are (t, 1); reassembled for s_2: (t,1) + p = (t,0)
    assert phi(R.vector(["t", 1])) == R.vector(["t", 0])
    x = R.vector(["t", 0])
    assert phi(x * x) == phi(x) * phi(x)
    assert phi.respects()


ISO_CASES = [
    (CohenRingModel(F2T, 2), CohenRingModel(F2T, 2, reps=[["t", "t"]])),
    (CohenRingModel(F2T, 3), CohenRingModel(F2T, 3, reps=[["t", "1", "t"]])),
    (CohenRingModel(F3T, 2), CohenRingModel(F3T, 2, reps=[["t", "2+t"]])),
    (CohenRingModel(F2T2, 2), CohenRingModel(F2T2, 2, reps=[["t1", "t2"], ["t2", "1"]])),
]


@pytest.mark.parametrize("src,tgt", ISO_CASES, ids=lambda c: repr(c))
@settings(max_examples=20)
@given(data=st.data())
def test_structure_isomorphism_is_a_ring_map(src, tgt, data):
    phi = structure_isomorphism(src, tgt)
    a = data.draw(members(src, 1))
    b = data.draw(members(src, 1))
    assert phi(a + b) == phi(a) + phi(b)
    assert phi(a * b) == phi(a) * phi(b)
    assert phi(a).residue() == a.residue()
    assert tgt.is_member(phi(a))
    # the transport formula and the digit route agree
    assert phi(a, route="transport") == phi(a, route="digits")
    back = structure_isomorphism(tgt, src)
    assert back(phi(a)) == a


def test_isomorphism_validation(F2t, F3t):
    with pytest.raises(ModelMismatch):
        structure_isomorphism(CohenRingModel(F2t, 2), CohenRingModel(F3t, 2))
    with pytest.raises(ModelMismatch):
        structure_isomorphism(CohenRingModel(F2t, 2), CohenRingModel(F2t, 3))
    phi = structure_isomorphism(C1, C2)
    with pytest.raises(ModelMismatch):
        phi(CohenRingModel(F2t, 3).ring.one())
    with pytest.raises(ModelMismatch):
        phi(C1.ring.vector([0, "t"]))


def test_morphism_needs_images_over_the_residue_map(F2t):
    R = C1.ring
    with pytest.raises(ModelMismatch):
        CohenMorphism(C1, C1, FieldMap.identity(F2t), C1.reps, (R.vector(["1+t", 0]),))


def test_field_map(F2t, F2t2):
    sq = FieldMap(F2t, F2t, ("t^2",))
    t = F2t.gen()
    assert sq(1 / (1 + t)) == 1 / (1 + t**2)
    assert sq.compose(sq)(t) == t**4
    assert FieldMap.identity(F2t).is_identity()
    with pytest.raises(ModelMismatch):
        FieldMap(F2t, F2t, ())
    with pytest.raises(DivisionByZero):
        FieldMap(F2t, F2t, ("1",))(1 / (1 + t))
    to2 = FieldMap(F2t, F2t2, ("t1*t2",))
    assert to2(t + 1) == F2t2.parse("1+t1*t2")


# -- embeddings over a base ------------------------------------------------------------
def test_embedding_over_prime_model_equals_structure_isomorphism(F2t):
    base = CohenRingModel(F2, 2)
    iota = FieldMap(F2, F2t, ())
    phi = embedding_over_base(base, C1, C2, FieldMap.identity(F2t), ("t",), iota, iota)
    psi = structure_isomorphism(C1, C2)
    rng = random.Random(5)
    for _ in range(30):
        a = random_member(C1, rng)
        assert phi(a) == psi(a)


def test_frobenius_twisted_embedding(F2t):
    base = CohenRingModel(F2, 2)
    iota = FieldMap(F2, F2t, ())
    twist = FieldMap(F2t, F2t, ("t^2",))
    phi = embedding_over_base(base, C1, C1, twist, ("t",), iota, iota)
    assert phi(C1.reps[0]) == C1.lambda_representative(F2t.gen() ** 2)
    rng = random.Random(6)
    for _ in range(30):
        a, b = random_member(C1, rng), random_member(C1, rng)
        assert phi(a + b) == phi(a) + phi(b)
        assert phi(a * b) == phi(a) * phi(b)
        assert phi(a).residue() == twist(a.residue())
    assert check_enrichment(phi, n_samples=20).ok


def test_embedding_over_a_function_field_base(F2t, F2t2):
    # k_0 = F_2(t) -> k_1 = k_2 = F_2(t1, t2) via t -> t1, relative basis (t2)
    base = CohenRingModel(F2t, 2)
    m1 = CohenRingModel(F2t2, 2)
    m2 = CohenRingModel(F2t2, 2, reps=[["t1", "1"], ["t2", "t1"]])
    iota = FieldMap(F2t, F2t2, ("t1",))
    phi = embedding_over_base(base, m1, m2, FieldMap.identity(F2t2), ("t2",), iota, iota,
                              base_images2=(m2.reps[0],))
    assert phi.extras["iota_A1"](base.reps[0]) == m1.reps[0]
    rng = random.Random(7)
    for _ in range(10):
        a = base.undigitize([F2t.random_element(rng, 1) for _ in range(2)])
        assert phi(phi.extras["iota_A1"](a)) == phi.extras["iota_A2"](a)
        x, y = random_member(m1, rng, max_deg=1), random_member(m1, rng, max_deg=1)
        assert phi(x * y) == phi(x) * phi(y)
        assert phi(x + y) == phi(x) + phi(y)


def test_separability_witness_is_checked(F2t, F2t2):
    base = CohenRingModel(F2t, 2)
    m1 = CohenRingModel(F2t2, 2)
    iota = FieldMap(F2t, F2t2, ("t1",))
    with pytest.raises(SeparabilityWitnessInvalid):
        embedding_over_base(base, m1, m1, FieldMap.identity(F2t2), ("t1^2*t2^2",), iota, iota)
    with pytest.raises(SeparabilityWitnessInvalid):
        embedding_over_base(base, m1, m1, FieldMap.identity(F2t2), ("t1",), iota, iota)
    assert p_rank([F2t2.parse("t1"), F2t2.parse("t1^2"), F2t2.parse("t2")]) == 2


# -- TEP -------------------------------------------------------------------------------
def test_tep_examples(F2t):
    phi = tep_embed(C1, 1)
    R = C1.ring
    t = F2t.gen()
    # s(t) = [t] goes to [u]^2 = [u^2]; the target variable plays u
    assert phi(R.teichmuller(t)) == R.teichmuller(t**2)
    w = phi.extras["witnesses"][0]
    assert w == R.teichmuller(t)
    assert w * w == phi(C1.reps[0])
    ident = tep_embed(C1, 0)
    a = R.vector(["1+t", "t"])
    assert ident(a) == a
    with pytest.raises(StageError):
        tep_embed(C1, 3)


@pytest.mark.parametrize("n", [1, 2])
@given(data=st.data())
def test_tep_is_an_injective_ring_map(n, data):
    phi = tep_embed(C1, n)
    a = data.draw(members(C1, 2))
    b = data.draw(members(C1, 2))
    assert phi(a + b) == phi(a) + phi(b)
    assert phi(a * b) == phi(a) * phi(b)
    assert (phi(a) == phi(b)) == (a == b)
    assert phi(a).residue() == phi.residue_map(a.residue())
    # the transport formula and W_m(phi_k) agree for Teichmuller representatives
    assert phi(a, route="transport") == phi(a, route="digitwise")


def test_tep_witness_has_the_right_power(F2t):
    for n in (1, 2):
        phi = tep_embed(C1, n)
        w = phi.extras["witnesses"][0]
        assert w ** (2**n) == phi(C1.reps[0])


def test_tep_from_a_non_teichmuller_model():
    phi = tep_embed(C2, 1)
    rng = random.Random(8)
    for _ in range(20):
        a, b = random_member(C2, rng), random_member(C2, rng)
        assert phi(a * b) == phi(a) * phi(b)
        assert phi(a + b) == phi(a) + phi(b)
    assert phi(C2.reps[0]) == phi.rep_images[0]


# -- enrichment ------------------------------------------------------------------------
def test_enrichment_reports():
    assert check_enrichment(identity_morphism(C1), n_samples=30).ok
    rep = check_enrichment(structure_isomorphism(C1, C2), n_samples=100)
    assert rep.ok and rep.checked == 100 and rep.mode == "separable"
    tep = check_enrichment(tep_embed(C1, 1), n_samples=30)
    assert tep.ok and tep.mode == "image-subring"
    bad = check_enrichment(CorruptedMorphism(structure_isomorphism(C1, C2)), n_samples=30)
    assert not bad.ok


def test_compose_with_inverse():
    phi = structure_isomorphism(C1, C2)
    ident = compose(structure_isomorphism(C2, C1), phi)
    rng = random.Random(9)
    for _ in range(20):
        a = random_member(C1, rng)
        assert ident(a) == a
    with pytest.raises(ModelMismatch):
        compose(phi, structure_isomorphism(CohenRingModel(F3T, 2), CohenRingModel(F3T, 2)))


def test_descriptor(F2t):
    d = structure_isomorphism(C1, C2).descriptor()
    assert d["rep_images"] == [["t", "1"]] and d["residue_map"] == ["t"]
