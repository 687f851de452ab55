import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cohenwitt import CohenRingModel, ValuedField, make_field, structure_isomorphism, tep_embed
from cohenwitt.errors import ParseError, SortError, UnboundVariable
from cohenwitt.lang import (
    GAMMA,
    L2_BATTERY,
    L2S_BATTERY,
    BATTERY_SORTS,
    A,
    CohenBinding,
    K,
    R,
    ValuedBinding,
    ac_negative_controls,
    audit_axioms,
    check_morphism_preserves_qf,
    eval_qf,
    eval_term,
    k,
    negative_controls,
    parse_formula,
    parse_sort,
    parse_term,
    shipped_binding,
)
from cohenwitt.morphisms import CorruptedMorphism, identity_morphism, random_member

from strategies import members

F2T = make_field(2, 1, 1)
B2 = shipped_binding(2)


def vec(*digits):
    return B2.ring.vector(list(digits))


# -- syntax ----------------------------------------------------------------------------
def test_sorts():
    assert R(1) == k
    assert parse_sort("R2") == parse_sort("R_2") == R(2)
    assert parse_sort("Gamma") == parse_sort("G") == GAMMA
    with pytest.raises(SortError):
        parse_sort("B")


def test_parse_infers_sorts():
    t = parse_term("(+ (res x) 1)", {"x": "A"})
    assert t.sort == k
    f = parse_formula("(= (* x 2) y)", {"x": "A", "y": "A"})
    assert f.free_vars() == {"x": A, "y": A}
    assert parse_term("(v x:K)").sort == GAMMA
    assert parse_term("(ac2 x:K)").sort == R(2)
    assert parse_term("(ac1 x:K)").sort == k
    assert parse_term("(res3_1 y:R3)").sort == k


@pytest.mark.parametrize("text", [
    "(forall x (= x x))", "(exists y:A (= y 0))", "(∀ x (= x x))",
])
def test_quantifiers_are_rejected(text):
    with pytest.raises(ParseError, match="quantifier"):
        parse_formula(text, {"x": "A"})


@pytest.mark.parametrize("text,sorts", [
    ("(= x a)", {"x": "A", "a": "k"}),
    ("(= 1 0)", {}),
    ("(= (res a) a)", {"a": "k"}),
    ("(/ x y)", {"x": "A", "y": "A"}),
    ("(Theta2 x)", {"x": "A"}),
    ("(= x:A x:k)", {}),
    ("(= y 0)", {}),
])
def test_ill_sorted_input(text, sorts):
    with pytest.raises((SortError, ParseError)):
        parse_formula(text, sorts) if text.startswith("(=") or "Theta" in text else parse_term(text, sorts)


def test_malformed_input():
    for text in ["(= x", "(foo x y)", "()", "(not (= x x) (= x x))"]:
        with pytest.raises((ParseError, SortError)):
            parse_formula(text, {"x": "A"})


# -- evaluation ------------------------------------------------------------------------
def test_eval_examples():
    t = F2T.gen()
    flags = []
    term = parse_term("(S1 x a)", {"x": "A", "a": "k"})
    assert eval_term(B2, term, {"x": vec("t", 0), "a": t + 1}, flags) == vec("1+t", "t")
    assert flags == []
    assert eval_term(B2, term, {"x": vec("t", 0), "a": t + 1}) == B2.model.lambda_representative(t + 1)
    assert eval_term(B2, parse_term('(res "t,1":A)'), {}) == t
    out = eval_term(B2, term, {"x": vec("t^2", 0), "a": t}, flags)
    assert out == B2.ring.zero() and len(flags) == 1 and "S1" in flags[0]
    assert eval_qf(B2, parse_formula("(Theta1 x)", {"x": "A"}), {"x": vec("t", 0)})
    assert not eval_qf(B2, parse_formula("(Theta2 x y)", {"x": "A", "y": "A"}),
                       {"x": vec("t", 0), "y": vec("t^2", 0)})
    assert eval_qf(B2, parse_formula("(Theta0)"), {})


@given(x=members(B2.model), y=members(B2.model))
def test_res_is_multiplicative(x, y):
    f = parse_formula("(= (* (res x) (res y)) (res (* x y)))", {"x": "A", "y": "A"})
    assert eval_qf(B2, f, {"x": x, "y": y})


def test_connectives_and_numerals():
    env = {"x": vec("t", 1)}
    s = {"x": "A"}
    assert eval_qf(B2, parse_formula("(= 4:A 0:A)"), {})
    assert not eval_qf(B2, parse_formula("(= 2:A 0:A)"), {})
    assert eval_qf(B2, parse_formula("(implies (= x 0) false)", s), env)
    assert eval_qf(B2, parse_formula("(iff (= x x) true)", s), env)
    assert eval_qf(B2, parse_formula("(or false (not (= (res x) 0)))", s), env)
    assert eval_qf(B2, parse_formula("(= (neg (neg x)) x)", s), env)


def test_division_in_k_is_totalized():
    flags = []
    term = parse_term("(/ a b)", {"a": "k", "b": "k"})
    assert eval_term(B2, term, {"a": F2T.gen(), "b": F2T.zero()}, flags).is_zero()
    assert flags and "default 0" in flags[0]
    assert eval_term(B2, parse_term("(inv a)", {"a": "k"}), {"a": F2T.gen()}) == 1 / F2T.gen()


def test_unbound_and_out_of_carrier_values():
    f = parse_formula("(= x y)", {"x": "A", "y": "A"})
    with pytest.raises(UnboundVariable):
        eval_qf(B2, f, {"x": vec(0, 0)})
    with pytest.raises(SortError):
        eval_qf(B2, f, {"x": vec(0, "t"), "y": vec(0, 0)})
    with pytest.raises(SortError):
        eval_term(B2, parse_term("(v x:K)"), {"x": None})


def test_valued_binding_terms():
    vf = ValuedField(F2T, 2)
    VB = ValuedBinding(vf)
    x = vf.element(1, ["t", "1"])
    y = vf.element(-1, ["1+t", "0"])
    s = {"x": "K", "y": "K"}
    assert eval_term(VB, parse_term("(v (* x y))", s), {"x": x, "y": y}) == 0
    assert eval_qf(VB, parse_formula("(< (v y) (v x))", s), {"x": x, "y": y})
    assert eval_qf(VB, parse_formula("(<= (v x) inf)", s), {"x": x})
    assert eval_qf(VB, parse_formula("(= (+ (v x) (v y)) 0)", s), {"x": x, "y": y})
    assert eval_term(VB, parse_term("(ac2 x)", s), {"x": x}) == vf.model.ring.vector(["t", "1"])
    assert eval_term(VB, parse_term("(ac1 x)", s), {"x": x}) == F2T.gen()
    assert eval_term(VB, parse_term("(r2 x:A)"), {"x": x}) == vf.model.ring.vector([0, "t^2"])
    assert eval_term(VB, parse_term("(res2_1 (ac2 x))", s), {"x": x}) == F2T.gen()
    lit = eval_term(VB, parse_term('"1|t,1":K'), {})
    assert lit == x
    flags = []
    assert eval_term(VB, parse_term("(- 1:G inf)"), {}, flags) == 0 and flags
    flags = []
    assert eval_term(VB, parse_term("(/ x 0:K)", s), {"x": x}, flags).is_zero() and flags
    with pytest.raises(SortError):
        eval_qf(VB, parse_formula("(= (r1 x:A) 0:k)"), {"x": y})


# -- audits ----------------------------------------------------------------------------
@pytest.mark.parametrize("n", [1, 2])
def test_shipped_bindings_satisfy_t2(n):
    report = audit_axioms(shipped_binding(n), "T2", samples=60, seed=n)
    assert report.passed, report.failures()
    assert report["IV"].status == "unauditable"
    names = [r.name for r in report.results]
    for name in ["I", "II", "III", f"V_{n}", f"VI_{n}", f"VII_{n}"]:
        assert name in names and report[name].status == "pass" and report[name].checked > 0


def test_theta_constant_true_fails_with_a_witness():
    binding, axiom = negative_controls(B2.model)["theta-constant-true"]
    report = audit_axioms(binding, "T2", samples=40)
    assert axiom == "VI_2"
    assert report[axiom].status == "fail"
    assert "t^2" in report[axiom].witness


def test_every_negative_control_fails_its_axiom():
    for name, (binding, axiom) in negative_controls(B2.model).items():
        report = audit_axioms(binding, "T2", samples=40)
        assert report[axiom].status == "fail", name
        assert report[axiom].witness


def test_wrong_level_fails_v():
    report = audit_axioms(B2, "T2(3)", samples=20)
    assert report["V_3"].status == "fail"


def test_ac_audit_and_controls():
    vf = ValuedField(F2T, 2)
    report = audit_axioms(ValuedBinding(vf), "ac-axioms", samples=100)
    assert report.passed
    assert {r.name for r in report.results} == {"ac(1)", "ac(2)", "ac(3)", "ac-system"}
    tac = audit_axioms(ValuedBinding(vf), "Tac-core", samples=60)
    assert tac.passed, tac.failures()
    for name, (binding, item) in ac_negative_controls(vf).items():
        bad = audit_axioms(binding, "ac-axioms", samples=50)
        assert bad[item].status == "fail" and bad[item].witness, name


def test_audit_group_validation():
    with pytest.raises(SortError):
        audit_axioms(ValuedBinding(ValuedField(F2T, 2)), "T2")
    with pytest.raises(SortError):
        audit_axioms(B2, "ac-axioms")
    with pytest.raises(ValueError):
        audit_axioms(B2, "T3")
    assert audit_axioms(B2, "T2", samples=10).to_json()["passed"]


# -- preservation of QF formulas -------------------------------------------------------
def test_battery_is_fixed():
    assert len(L2_BATTERY) == 20
    assert len(set(L2_BATTERY)) == 20


def test_identity_preserves_everything():
    rep = check_morphism_preserves_qf(identity_morphism(B2.model), L2_BATTERY + L2S_BATTERY, samples=30)
    assert rep.ok and rep.checked == 30 * 26


def test_structure_isomorphism_preserves_the_battery():
    tgt = CohenRingModel(F2T, 2, reps=[["t", "1"]])
    phi = structure_isomorphism(B2.model, tgt)
    assert check_morphism_preserves_qf(phi, samples=100).ok
    assert check_morphism_preserves_qf(phi, L2S_BATTERY, samples=40).ok


def test_corrupted_morphism_is_caught():
    tgt = CohenRingModel(F2T, 2, reps=[["t", "1"]])
    rep = check_morphism_preserves_qf(CorruptedMorphism(structure_isomorphism(B2.model, tgt)), samples=50)
    assert not rep.ok
    assert rep.to_json()["discrepancies"]


def test_tep_preserves_l2_but_not_theta():
    phi = tep_embed(B2.model, 1)
    assert check_morphism_preserves_qf(phi, samples=60).ok
    # p-independence is not preserved by adjoining p-th roots
    rep = check_morphism_preserves_qf(phi, ["(Theta1 x)"], samples=60)
    assert not rep.ok


def test_audit_is_deterministic():
    a = audit_axioms(B2, "T2", samples=20, seed=3).to_json()
    b = audit_axioms(B2, "T2", samples=20, seed=3).to_json()
    assert a == b


def test_cohen_binding_carrier():
    C = CohenBinding(CohenRingModel(F2T, 2))
    rng = random.Random(0)
    assert C.contains(A, random_member(C.model, rng))
    assert not C.contains(A, C.ring.vector([0, "t"]))
    assert not C.contains(K, C.ring.one())
    with pytest.raises(SortError):
        C.num(K, 1)


@st.composite
def battery_env(draw):
    x = draw(members(B2.model, 1))
    y = draw(members(B2.model, 1))
    return {"x": x, "y": y, "z": x * y, "a": x.residue(), "b": F2T.gen()}


@given(env=battery_env())
def test_battery_formulas_evaluate_without_flags(env):
    for text in L2_BATTERY:
        flags = []
        f = parse_formula(text, BATTERY_SORTS)
        eval_qf(B2, f, {v: env[v] for v in f.free_vars()}, flags)
        assert flags == []
