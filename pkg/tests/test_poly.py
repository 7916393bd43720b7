import pytest
from hypothesis import given, settings, strategies as st

from quadgb.fields import make_field, make_rng
from quadgb.poly import (ParseError, PolyRing, TermOrder, monomials_of_degree, reduce,
                         substitute_linear)

K = make_field(101)
R = PolyRing(K, ["x", "y", "z"])


def rand_poly(seed, terms=5, top=3):
    rng = make_rng(seed)
    mons = [m for d in range(top + 1) for m in monomials_of_degree(3, d)]
    return R.from_terms([(K.random(rng), rng.choice(mons)) for _ in range(terms)])


def test_parse_and_print():
    f = R.parse("3*x^2*y - y*z + 7")
    assert f.degree == 3 and not f.is_homogeneous()
    assert R.parse(str(f)) == f
    x, y, _ = R.gens
    assert (x + y) ** 2 == R.parse("x^2 + 2x*y + y^2")
    assert R.parse(" -z^2 ") == R.parse("-1*z^2")


@pytest.mark.parametrize("text", ["x^^2", "x +", "w^2", "x^-1", "2**x", "(x + y)^2"])
def test_parse_errors(text):
    with pytest.raises(ParseError) as err:
        R.parse(text, line=4)
    assert err.value.line == 4


def test_degrevlex_and_lex():
    o = TermOrder.degrevlex(3)
    assert o.compare((1, 1, 0), (0, 0, 2)) > 0      # xy > z^2
    assert o.compare((1, 0, 1), (0, 2, 0)) < 0      # xz < y^2
    lex = TermOrder.lex(3)
    assert lex.compare((1, 0, 0), (0, 5, 5)) > 0
    # priority lists the variables from the highest down
    o2 = TermOrder.degrevlex(3, (2, 1, 0))
    assert o2.compare((0, 0, 1), (1, 0, 0)) > 0


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))
def test_ring_axioms(a, b, c):
    f, g, h = rand_poly(a), rand_poly(b), rand_poly(c)
    assert (f + g) * h == f * h + g * h
    assert (f * g) * h == f * (g * h)
    assert f - f == R.zero
    assert f * g == g * f


def test_reduce_remainder_is_reduced():
    G = [R.parse("x^2 - y*z"), R.parse("y^2 - x*z")]
    o = TermOrder.degrevlex(3)
    r = reduce(R.parse("x^3*y + y^3"), G, o)
    lms = [g.leading_monomial(o) for g in G]
    for e, _ in r.items():
        assert not any(all(a >= b for a, b in zip(e, m)) for m in lms)


def test_substitute_linear():
    f = R.parse("x^2 + y*z")
    M = [[K(1), K(1), K(0)], [K(0), K(1), K(0)], [K(0), K(0), K(1)]]   # x -> x + y
    assert substitute_linear(f, M) == R.parse("x^2 + 2*x*y + y^2 + y*z")


def test_derivative_and_evaluate():
    f = R.parse("x^3 + x*y*z")
    assert f.derivative(0) == R.parse("3*x^2 + y*z")
    assert f.evaluate([K(1), K(2), K(3)]) == K(7)
