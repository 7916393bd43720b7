import pytest

from quadgb.fields import make_field, make_rng
from quadgb.groebner import INFINITE, random_invertible
from quadgb.nets import (TABLE, InvalidParameter, Net, NoMatch, classify_by_fingerprint,
                         count_base_points, count_square_lines, dual_net, format_table,
                         gquad_status, hilbert_class, is_gradient_type, net_report,
                         normal_form, table_csv)

K = make_field(101)


@pytest.mark.parametrize("k", range(1, 16))
def test_invariants_match_table(k):
    V = normal_form(k, K)
    H, q, p, _, _, _, grad = TABLE[k]
    assert hilbert_class(V) == H
    assert count_square_lines(V) == q
    assert count_base_points(V) == p
    assert (is_gradient_type(V) is not None) == grad


def test_gradient_is_a_potential():
    V = normal_form(3, K)
    f = is_gradient_type(V)
    partials = Net.from_polynomials([f.derivative(i) for i in range(3)])
    assert partials.same_space(V)


def test_dual_is_involution():
    for k in range(1, 16):
        V = normal_form(k, K)
        assert dual_net(dual_net(V)).same_space(V)


def test_dual_swaps_counts():
    V = normal_form(2, K)
    assert count_square_lines(dual_net(V)) == count_base_points(V) == INFINITE


def test_hesse_parameter():
    with pytest.raises(InvalidParameter):
        normal_form(15, K, j=1)
    with pytest.raises(InvalidParameter):
        normal_form(15, K, j=0)
    with pytest.raises(InvalidParameter):
        normal_form(3, K, j=2)
    assert classify_by_fingerprint(normal_form(15, K, j=5)) == 15


def test_classifier_under_coordinate_change():
    rng = make_rng(3)
    for k in (5, 6, 9, 13, 14):
        W = normal_form(k, K).substitute(random_invertible(3, K, rng))
        assert classify_by_fingerprint(W) == k


def test_not_a_net():
    ring = normal_form(1, K).ideal().ring
    with pytest.raises((NoMatch, ValueError)):
        hilbert_class(Net.from_polynomials([ring.parse("x^2"), ring.parse("x^2 + y^2"),
                                             ring.parse("y^2")]))


def test_gquad_statuses():
    assert gquad_status(normal_form(12, K))[0] == "no_by_series_e"
    assert gquad_status(normal_form(15, K), 15)[0] == "search_failed"
    status, cert = gquad_status(normal_form(6, K), 6)
    assert status == "yes_with_certificate" and cert["coordinates"] == "changed"
    status, cert = gquad_status(normal_form(7, K), 7)
    assert cert["coordinates"] == "given"


def test_report_and_output():
    rep = net_report(9, K)
    assert rep.mismatches == []
    assert "9)" in format_table([rep])
    assert table_csv([rep]).splitlines()[1].startswith("9,d,2,1")
