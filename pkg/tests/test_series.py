from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gcuntz.fusion import FusionData, FusionDataError
from gcuntz.pathalg import first_return_basis
from gcuntz.series import (
    INFINITE,
    RationalSeries,
    SeriesError,
    evaluate,
    h_series,
    k_direct,
    k_from_h,
    skeleton_dim,
)
from gcuntz.spectral import classify

from oracles import expand, first_return_count

PHI = (1 + 5**0.5) / 2


def test_h_series_a4(a4):
    assert h_series(a4, 5).integers() == [1, 1, 2, 3, 5, 8]


def test_h_series_lee_yang(lee_yang):
    assert h_series(lee_yang, 5).integers() == [1, 0, 1, 1, 2, 3]


@pytest.mark.parametrize("d", [1, 2, 3, 7])
def test_h_series_inner(d):
    assert h_series(FusionData(["id"], 0, [[d]]), 10).integers() == [d**n for n in range(11)]


def test_h_series_rejects_invalid():
    with pytest.raises(FusionDataError):
        h_series(FusionData(["a", "b"], 0, [[1, 0], [0, 1]]), 4)


def test_k_from_h_a4():
    h = RationalSeries(expand("1/(1-t-t**2)", 20))
    assert k_from_h(h).integers() == [0, 1, 1] + [0] * 18


def test_k_from_h_lee_yang():
    h = RationalSeries(expand("(1-t)/(1-t-t**2)", 20))
    assert k_from_h(h).integers() == [0, 0] + [1] * 19


def test_k_from_trivial_h():
    assert k_from_h(RationalSeries.constant(1, 6)).integers() == [0] * 7


def test_k_from_h_needs_unit_constant():
    with pytest.raises(SeriesError):
        k_from_h(RationalSeries([2, 1, 1]))


def test_k_direct_examples(lee_yang, a4):
    assert k_direct(lee_yang, 2) == 1
    assert k_direct(lee_yang, 7) == 1
    assert k_direct(a4, 3) == 0
    inner = FusionData(["id"], 0, [[4]])
    assert k_direct(inner, 1) == 4
    assert k_direct(inner, 2) == 0
    with pytest.raises(SeriesError):
        k_direct(inner, 0)


def test_k_direct_second_layer_excludes_double_loop(a4):
    # the loop iota -> iota -> iota is a product of two length-1 loops
    assert k_direct(a4, 2) == 1


def test_evaluate_lee_yang_k_at_inverse_phi(lee_yang):
    k = k_from_h(h_series(lee_yang, 32))
    sums = evaluate(k, 1 / PHI, 30)
    assert all(b >= a for a, b in zip(sums, sums[1:]))
    assert abs(sums[-1] - 1) < 1e-6


def test_evaluate_at_zero():
    s = RationalSeries([3, 5, 7])
    assert evaluate(s, 0.0, 2) == [3.0, 3.0, 3.0]


def test_evaluate_a4_h_at_half(a4):
    sums = evaluate(h_series(a4, 200), 0.5, 200)
    assert abs(sums[-1] - 4.0) < 1e-9


def test_evaluate_rejects_too_many_terms():
    with pytest.raises(SeriesError):
        evaluate(RationalSeries([1, 1]), 0.5, 3)


def test_skeleton_dim_examples(a4, lee_yang):
    assert skeleton_dim(a4, classify(a4)) == 2
    assert skeleton_dim(lee_yang, classify(lee_yang)) is INFINITE
    inner = FusionData(["id"], 0, [[3]])
    assert skeleton_dim(inner, classify(inner)) == 3


def test_skeleton_dim_mismatched_profile(a4, lee_yang):
    with pytest.raises(SeriesError):
        skeleton_dim(a4, classify(lee_yang))


def test_renewal_identity_and_oracle_on_family(family):
    for data in family:
        order = 24
        h = h_series(data, order)
        k = k_from_h(h)
        assert (h * (1 - k)).integers() == [1] + [0] * order
        ks = k.integers()
        assert ks[0] == 0 and all(c >= 0 for c in ks)
        assert ks[1:] == [k_direct(data, n) for n in range(1, order + 1)]


def test_k_direct_counts_first_return_loops(family):
    for data in family[:60]:
        for n in range(1, 11):
            assert k_direct(data, n) == first_return_count(data.matrix, data.iota, n)


def test_k_direct_matches_materialised_loops(family):
    checked = 0
    for data in family:
        for n in range(1, 11):
            count = k_direct(data, n)
            if count <= 20000:
                assert len(first_return_basis(data, n)) == count
                checked += 1
    assert checked > 300


def test_h_diverges_at_radius(lee_yang, a4):
    for data in (lee_yang, a4):
        d = classify(data).d_rho
        sums = evaluate(h_series(data, 200), 1 / d, 200)
        assert sums[-1] > 30
        assert sums[200] > sums[100] + 10


fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@settings(max_examples=100, deadline=None)
@given(st.lists(fractions, min_size=1, max_size=12))
def test_reciprocal_is_inverse(tail):
    a = RationalSeries([1] + tail)
    prod = a * a.reciprocal()
    assert list(prod) == [1] + [0] * len(tail)


@settings(max_examples=100, deadline=None)
@given(st.lists(fractions, min_size=3, max_size=10), st.lists(fractions, min_size=3, max_size=10))
def test_series_arithmetic_ring_laws(a, b):
    x, y = RationalSeries(a), RationalSeries(b)
    assert list(x * y) == list(y * x)
    assert list((x + y) - y) == list(x.truncate(min(x.order, y.order)))


def test_division():
    num = RationalSeries(expand("1 - t", 10))
    den = RationalSeries(expand("2 - 2*t - 2*t**2", 10))
    assert list(num / den) == [Fraction(c, 2) for c in expand("(1-t)/(1-t-t**2)", 10)]
    with pytest.raises(SeriesError):
        num / RationalSeries([0, 1])
