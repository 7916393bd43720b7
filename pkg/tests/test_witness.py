import pytest

from quadgb.algebra import build_quotient
from quadgb.fields import extend, make_field
from quadgb.groebner import IdealPresentation
from quadgb.nets import normal_form
from quadgb.poly import PolyRing
from quadgb.witness import (CaseHypothesisFailed, HypothesisViolation, NeedsExtension, Witness,
                            case2_applicable, case3_applicable, check_trace, find_witness,
                            lemma22_case, solve_quadratic, verify_witness)

PATHS = {
    "squares7": ["L-case1"],
    "pair": ["P-case2", "L-case2"],
    "triple": ["P-case3", "ell-from-t", "restart with ℓ", "P-case1", "partner-in-quotient", "L-case3"],
    "line": ["L-case4"],
}


@pytest.mark.parametrize("name", sorted(PATHS))
@pytest.mark.parametrize("p", [5, 7, 11, 101])
def test_examples_give_verified_witnesses(example, name, p):
    R = build_quotient(example(name, p), 4)
    out = find_witness(R)
    assert out.kind == "witness"
    assert out.verification["passed"] and out.verification["max_degree"] <= 2
    assert out.verification["hilbert_3"] == 0
    A = R.base_change(out.witness.field) if out.extension else R
    assert check_trace(A, out.trace) == []
    if p == 101:
        assert out.trace.path == PATHS[name]


def test_applicability_triple(example):
    R = build_quotient(example("triple"), 4)
    var = {n: R.form_coords(R.ring.parse(n)) for n in "ywt"}
    assert not case2_applicable(R, var["y"]) and not case3_applicable(R, var["y"])
    for n in "wt":
        assert case3_applicable(R, var[n]) and not case2_applicable(R, var[n])


def test_case1_leading_terms(example):
    from quadgb import linalg
    from quadgb.groebner import buchberger
    from quadgb.poly import monomials_of_degree
    I = example("squares7")
    w = find_witness(build_quotient(I, 4)).witness
    J = I.substitute(linalg.inverse(w.matrix, w.field), PolyRing(w.field, w.names))
    gb = buchberger(J, w.order())
    lms = set(gb.leading_monomials())
    y = w.names.index("y")
    want = {m for m in monomials_of_degree(4, 2) if m[y] in (0, 2)}
    assert want <= lms


def test_case4_quotient(example):
    R = build_quotient(example("line"), 4)
    y = R.form_coords(R.ring.parse("y - z"))
    forms, names, priority = lemma22_case(R, 4, y)
    assert len(forms) == 4 and priority[-1] == "y"


def test_solve_quadratic():
    K = make_field(7)
    assert sorted(solve_quadratic(K(1), K(0), K(-4), K)) == [2, 5]     # s^2 - 4
    assert solve_quadratic(K(0), K(1), K(2), K) == [K(-1)]              # 2s + 2
    with pytest.raises(NeedsExtension):
        solve_quadratic(K(1), K(0), K(-3), K)                          # 3 is not a square mod 7
    with pytest.raises(CaseHypothesisFailed):
        solve_quadratic(K(0), K(0), K(0), K)
    L = extend(K, 2)
    r = solve_quadratic(L(1), L(0), L(-3), L)
    assert len(r) == 2 and all(L.mul(x, x) == L(3) for x in r)


def test_hypotheses():
    K = make_field(101)
    ring = PolyRing(K, ["x", "y", "z", "w"])
    I = IdealPresentation(ring, [ring.parse(g) for g in ["x^2", "y^2", "z^2", "w^2"]])
    with pytest.raises(HypothesisViolation):
        find_witness(build_quotient(I, 4))
    I = IdealPresentation(ring, [ring.parse("x^3")])
    with pytest.raises(HypothesisViolation):
        find_witness(build_quotient(I, 4))


def test_verify_rejects_a_bad_witness(example):
    I = example("triple")
    K = I.field
    ident = [[K.one if i == j else K.zero for j in range(4)] for i in range(4)]
    rep = verify_witness(I, Witness(ident, list(I.names), list(I.names), K))
    assert rep["passed"] is False and rep["max_degree"] == 3


def test_singular_witness_rejected():
    K = make_field(101)
    with pytest.raises(ValueError):
        Witness([[K.one, K.zero], [K.one, K.zero]], ["a", "b"], ["a", "b"], K)


@pytest.mark.parametrize("k, gq", [(3, True), (5, True), (13, True), (15, False)])
def test_complete_intersections(k, gq):
    R = build_quotient(normal_form(k, make_field(101)).ideal(), 4)
    out = find_witness(R)
    assert out.kind == "ci_exception" and out.gquadratic is gq
    if gq:
        assert out.witness is not None and out.verification["passed"]


def test_socle_extension_lifts():
    K = make_field(101)
    ring = PolyRing(K, ["x", "y", "z", "s"])
    gens = ["x^2", "y^2", "z^2", "s*x", "s*y", "s*z", "s^2"]
    R = build_quotient(IdealPresentation(ring, [ring.parse(g) for g in gens]), 4)
    out = find_witness(R)
    assert out.kind == "ci_exception" and out.witness.names[-1] == "s1"
    assert out.verification["passed"]
