from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quadgb.fields import (ExtensionField, FieldError, extend, field_from_spec, make_field,
                           RationalField)
from quadgb import univariate


@pytest.mark.parametrize("p", [2, 3, 4, 100])
def test_rejected_fields(p):
    with pytest.raises(FieldError):
        make_field(p)


def test_prime_field_basics():
    K = make_field(7)
    assert K.is_finite and K.order == 7
    assert K.mul(K(3), K.inv(K(3))) == K.one
    assert K(Fraction(1, 2)) == K(4)
    assert K.sqrt(K(2)) in (3, 4)
    assert K.sqrt(K(3)) is None


@given(st.integers(1, 100), st.integers(0, 100))
def test_prime_field_inverse(a, b):
    K = make_field(101)
    assert K.mul(K(a), K.inv(K(a))) == K.one
    assert K.add(K.sub(K(b), K(a)), K(a)) == K(b)


def test_sqrt_all_squares():
    for p in (5, 13, 17, 101):
        K = make_field(p)
        for a in K.elements():
            r = K.sqrt(K.mul(a, a))
            assert K.mul(r, r) == K.mul(a, a)


def test_extension_field():
    K = make_field(5)
    L = extend(K, 2)
    assert L.order == 25 and L.degree == 2
    nonsq = next(a for a in K.elements() if a and K.sqrt(a) is None)
    r = L.sqrt(L.embed(nonsq))
    assert r is not None and L.mul(r, r) == L.embed(nonsq)
    for a in L.elements():
        if a != L.zero:
            assert L.mul(a, L.inv(a)) == L.one
    assert field_from_spec(L.spec()) == L
    with pytest.raises(FieldError):
        extend(L, 2)


def test_rationals():
    Q = make_field(0)
    assert isinstance(Q, RationalField) and not Q.is_finite
    assert Q.sqrt(Q(Fraction(9, 4))) == Fraction(3, 2)
    assert Q.sqrt(Q(2)) is None


def test_univariate_roots():
    K = make_field(11)
    f = univariate.mul([K(-1), K.one], [K(-3), K.one], K)      # (s - 1)(s - 3)
    f = univariate.mul(f, [K(-3), K.one], K)
    assert univariate.count_distinct_roots(f, K) == 2
    assert sorted(univariate.roots(f, K)) == [1, 3]
    assert univariate.is_irreducible(K, [K.one, K.zero, K.one])   # s^2 + 1, 11 = 3 mod 4
    assert isinstance(extend(K, 2), ExtensionField)
