import pytest

from quadgb.algebra import (SearchExhausted, build_quotient, rank_linear_form, rank_zero_forms,
                            square_zero_forms, trivial_extension_reduce)
from quadgb.fields import make_field
from quadgb.groebner import IdealPresentation
from quadgb.poly import PolyRing


def test_example_dims_and_classes(example):
    R = build_quotient(example("pair"), 4)
    assert R.dims == [1, 4, 3, 0, 0]
    res = square_zero_forms(R)
    assert res.exhaustive
    found = {str(R.form_poly(v)): r for v, r in res.classes}
    assert found == {"y": 2, "t": 2}


def test_multiplication_tables(example):
    R = build_quotient(example("triple"), 4)
    y = R.form_coords(R.ring.parse("y"))
    assert R.square(y) == [0] * 3
    assert rank_linear_form(R, y) == 2
    assert len(R.annihilator(y)) == 2


def test_all_rank_three(example):
    R = build_quotient(example("squares7"), 4)
    res = square_zero_forms(R)
    assert res.classes and all(r == 3 for _, r in res.classes)


def test_no_square_zero_over_base_field():
    from quadgb.nets import normal_form
    # the Hesse net with j = 2 contains no square of a linear form
    R = build_quotient(normal_form(15, make_field(101)).ideal(), 4)
    with pytest.raises(SearchExhausted):
        square_zero_forms(R)


def test_trivial_extension():
    K = make_field(101)
    ring = PolyRing(K, ["x", "y", "z", "s"])
    gens = [ring.parse(g) for g in ["x^2", "y^2", "z^2", "s*x", "s*y", "s*z", "s^2"]]
    R = build_quotient(IdealPresentation(ring, gens), 4)
    assert len(rank_zero_forms(R)) == 1
    core, removed = trivial_extension_reduce(R)
    assert removed == 1 and core.n == 3 and core.dims[:4] == [1, 3, 3, 1]


def test_base_change(example):
    from quadgb.fields import extend
    R = build_quotient(example("line", p=7), 4)
    L = extend(R.field, 2)
    Q = R.base_change(L)
    assert Q.dims == R.dims and Q.field == L
