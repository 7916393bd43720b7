import pytest

from quadgb.algebra import build_quotient
from quadgb.fields import make_field, make_rng
from quadgb.groebner import IdealPresentation, buchberger, hilbert_profile, random_invertible
from quadgb.koszul import (BettiTable, DegreeBoundExceeded, betti, euler_check, first_nonlinear,
                           is_linear_up_to)
from quadgb.nets import normal_form
from quadgb.poly import PolyRing


def ideal(names, gens, p=101):
    ring = PolyRing(make_field(p) if p else make_field(0), names)
    return IdealPresentation(ring, [ring.parse(g) for g in gens])


def hf(I, top):
    return hilbert_profile(buchberger(I, degree_cap=top + 1), top)


def test_dual_numbers():
    t = betti(ideal(["x"], ["x^2"]), 4, 4)
    assert [t[i, i] for i in range(5)] == [1] * 5
    assert is_linear_up_to(t)


def test_complete_intersection_over_Q():
    I = ideal(["x", "y", "z"], ["x^2", "y^2", "z^2"], p=0)
    t = betti(I, 4, 4)
    assert [t[i, i] for i in range(5)] == [1, 3, 6, 10, 15]
    assert euler_check(t, hf(I, 4))


def test_polynomial_ring_is_koszul_complex():
    # R = K[x, y] itself (no relations beyond degree bound): Betti numbers 1, 2, 1
    I = ideal(["x", "y"], ["x^6"])
    t = betti(I, 3, 3)
    assert [t[i, i] for i in range(4)] == [1, 2, 1, 0]


def test_quadric_generators_counted_in_second_column():
    I = normal_form(5, make_field(101)).ideal()
    t = betti(I, 2, 3)
    assert t[1, 1] == 3 and t[2, 2] == 9 - 3


def test_nonkoszul_nets():
    for k in (12, 14):
        I = normal_form(k, make_field(101)).ideal()
        t = betti(I, 5, 5)
        assert first_nonlinear(t) == (3, 4)
        assert euler_check(t, hf(I, 5))


def test_coordinate_invariance():
    K = make_field(101)
    I = normal_form(9, K).ideal()
    J = I.substitute(random_invertible(3, K, make_rng(2)))
    assert betti(I, 4, 4).values == betti(J, 4, 4).values


def test_bounds():
    with pytest.raises(DegreeBoundExceeded):
        betti(ideal(["x"], ["x^2"]), 4, 3)
    t = betti(ideal(["x"], ["x^2"]), 2, 3)
    with pytest.raises(KeyError):
        t[3, 3]
    assert "?" in t.to_text()


def test_accepts_quotient_and_roundtrips(example):
    R = build_quotient(example("pair"), 4)
    t = betti(R, 3, 3)
    assert BettiTable.from_json(t.to_json()) == t
    assert t[1, 1] == 4 and t[2, 2] == 16 - 3


def test_euler_check_detects_tampering():
    I = ideal(["x", "y", "z"], ["x^2", "y^2", "z^2"])
    t = betti(I, 3, 3)
    t.values[2][2] += 1
    assert not euler_check(t, hf(I, 3))
