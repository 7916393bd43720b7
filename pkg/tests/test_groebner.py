import math

import pytest

from quadgb.acceptance import check_groebner
from quadgb.fields import make_field, make_rng
from quadgb.groebner import (INFINITE, IdealPresentation, buchberger, count_projective_points,
                             format_ideal, hilbert_profile, is_quadratic_gb, parse_ideal,
                             random_invertible)
from quadgb.poly import ParseError, PolyRing, TermOrder

K = make_field(101)
R = PolyRing(K, ["x", "y", "z"])


def ideal(*gens):
    return IdealPresentation(R, [R.parse(g) for g in gens])


def test_twisted_cubic():
    I = ideal("x*z - y^2", "x^2*y - z^3")      # not a basis as given
    gb = buchberger(I)
    assert check_groebner(gb) is None
    assert gb.max_degree >= 3


def test_reduced_basis_is_unique_across_generators():
    a = buchberger(ideal("x^2 - y*z", "x*y"))
    b = buchberger(ideal("x^2 - y*z + x*y", "x*y"))
    assert a.elements == b.elements


def test_hilbert_and_dimension():
    gb = buchberger(ideal("x^2", "y^2", "z^2"))
    assert hilbert_profile(gb, 4) == [1, 3, 3, 1, 0]
    assert gb.krull_dimension() == 0
    assert buchberger(ideal("x^2", "y^2")).krull_dimension() == 1
    assert buchberger(ideal("x", "y", "z", "x + 1")).is_unit_ideal()


def test_quadratic_basis_depends_on_order():
    # net 6 has no quadratic basis in the listed coordinates
    ok, gb = is_quadratic_gb(ideal("x*z", "y*z", "z^2 + x*y"))
    assert not ok and gb.max_degree == 3
    ok, _ = is_quadratic_gb(ideal("x^2", "y^2", "x*z"))
    assert ok


def test_degree_cap():
    gb = buchberger(ideal("x*z - y^2", "x^2*y - z^3"), degree_cap=3)
    assert gb.truncated_at == 3


def test_point_counts():
    assert count_projective_points(ideal("x^2", "x*y", "y^2")) == 1
    assert count_projective_points(ideal("x*y", "x*z", "y*z")) == 3
    assert count_projective_points(ideal("x^2", "x*y", "x*z")) == INFINITE
    assert count_projective_points(ideal("x^2", "y^2", "z^2")) == 0
    # four general points: a conic pencil
    assert count_projective_points(ideal("x*y - y*z", "x*z - y*z")) == 4
    assert math.isinf(INFINITE)


def test_point_count_coordinate_free():
    I = ideal("x*y", "x*z", "y*z")
    rng = make_rng(5)
    for _ in range(5):
        assert count_projective_points(I.substitute(random_invertible(3, K, rng))) == 3


def test_ideal_file_roundtrip():
    text = "# a comment\nfield 7\nvars a,b\na^2 + 3*a*b\nb^2\n"
    I = parse_ideal(text)
    assert I.field.p == 7 and list(I.names) == ["a", "b"]
    J = parse_ideal(format_ideal(I))
    assert [str(g) for g in J.gens] == [str(g) for g in I.gens]
    assert parse_ideal(text, p=11).field.p == 11


@pytest.mark.parametrize("text, line", [
    ("field 7\nvars a,b\na^^2\n", 3),
    ("field 8\nvars a\na\n", 1),
    ("vars a\n", 1),
])
def test_ideal_file_errors(text, line):
    with pytest.raises(ParseError) as err:
        parse_ideal(text)
    assert err.value.line == line


def test_lex_elimination():
    I = ideal("x - y^2", "y^3 - z*y")
    gb = buchberger(I, TermOrder.lex(3))
    assert check_groebner(gb) is None
