import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sworbounds import hypergeom as hg
from sworbounds.errors import SworError
from sworbounds.hypergeom import HypergeomParams


@st.composite
def params(draw, max_n=40):
    n = draw(st.integers(2, max_n))
    return HypergeomParams(n, draw(st.integers(1, n - 1)), draw(st.integers(1, n - 1)))


def test_constants():
    assert hg.MAD_CONSTANT == pytest.approx(0.0357318, abs=5e-8)
    assert hg.MODE_CONSTANT == pytest.approx(hg.MAD_CONSTANT / 2)


def test_params_validation():
    with pytest.raises(SworError):
        HypergeomParams(5, 0, 2)
    with pytest.raises(SworError):
        HypergeomParams(5, 2, 5)


def test_support_and_mode_index():
    p = HypergeomParams(10, 7, 6)
    assert p.support == range(3, 7)
    assert p.mode_index == 5  # ceil(4.2)


def test_pmf_small_case():
    p = HypergeomParams(4, 2, 2)
    assert [hg.pmf(p, m, exact=True) for m in range(3)] == [Fraction(1, 6), Fraction(2, 3), Fraction(1, 6)]
    assert hg.pmf(p, 5, exact=True) == 0


def test_pmf_float_large_n_matches_exact():
    p = HypergeomParams(30000, 12000, 9000)
    m = p.mode_index
    assert hg.pmf(p, m) == pytest.approx(float(hg.pmf(p, m, exact=True)), rel=1e-9)


def test_cdf_and_median():
    p = HypergeomParams(4, 2, 2)
    assert hg.cdf(p, 0, exact=True) == Fraction(1, 6)
    assert hg.cdf(p, 2, exact=True) == 1
    assert hg.median(p) == 1


def test_mean_variance():
    p = HypergeomParams(10, 4, 3)
    assert hg.mean(p, exact=True) == Fraction(6, 5)
    assert hg.variance(p, exact=True) == Fraction(3 * 4 * 6 * 7, 100 * 9)


def test_mad_known_value():
    # Hyp(4,1,3): H is 1 w.p. 3/4, mean 3/4, so MAD = 3/8
    p = HypergeomParams(4, 1, 3)
    assert hg.mad_exact(p, exact=True) == Fraction(3, 8)
    assert hg.normalized_mad(p, exact=True) == Fraction(1, 4)


@settings(max_examples=150, deadline=None)
@given(params())
def test_mad_closed_form_equals_summation(p):
    assert hg.mad_exact(p, exact=True) == hg.mad_direct(p, exact=True)
    assert hg.mad_exact(p) == pytest.approx(hg.mad_direct(p), rel=1e-10)


@settings(max_examples=150, deadline=None)
@given(params())
def test_symmetries(p):
    q = HypergeomParams(p.n, p.k, p.i)
    assert all(hg.pmf(p, m, exact=True) == hg.pmf(q, m, exact=True) for m in p.support)
    assert hg.mad_exact(p, exact=True) == hg.mad_exact(hg.complement(p), exact=True)
    assert sum(hg.pmf(p, m, exact=True) for m in p.support) == 1


def test_lower_bound_value():
    assert hg.mad_normalized_lower_bound(5, 2) == pytest.approx(0.00782845, abs=1e-8)
    assert hg.mad_normalized_lower_bound(100, 10) == pytest.approx(0.00107195, abs=1e-8)


def test_pmf_mode_bound_value_and_gating():
    p = HypergeomParams(10, 5, 6)
    r = hg.pmf_mode_lower_bound(p)
    assert r.applicable and r.inputs["m"] == 3
    assert r.raw == pytest.approx(0.0230648, abs=1e-7)
    assert hg.pmf(p, 3, exact=True) == Fraction(100, 210)
    assert hg.pmf(p, 3) >= r.raw
    q = HypergeomParams(12, 6, 6)
    assert hg.pmf(q, 3) >= hg.pmf_mode_lower_bound(q).raw
    assert hg.pmf_mode_lower_bound(HypergeomParams(5, 2, 2)).reason == "mode_below_2"
    low = hg.pmf_mode_lower_bound(HypergeomParams(10, 2, 3))
    assert not low.applicable and low.reason == "mode_below_2"
    high = hg.pmf_mode_lower_bound(HypergeomParams(10, 9, 9))
    assert not high.applicable and high.reason == "mode_above_min_minus_1"


def test_robbins():
    assert hg.robbins_bounds(1).lower == pytest.approx(-0.0041384, abs=1e-7)
    for n in (1, 2, 5, 50, 170):
        assert hg.robbins_bounds(n).contains(math.lgamma(n + 1))


def test_mad_table_matches_scalar():
    t = hg.mad_table(30)
    for i, k in [(1, 1), (3, 17), (15, 15), (29, 2)]:
        p = HypergeomParams(30, i, k)
        assert t["mad"][i - 1, k - 1] == pytest.approx(hg.mad_exact(p), rel=1e-10)
        assert t["normalized_mad"][i - 1, k - 1] == pytest.approx(hg.normalized_mad(p), rel=1e-10)
        assert t["lower_bound"][i - 1, k - 1] == pytest.approx(hg.mad_normalized_lower_bound(30, k))


def test_mode_bound_table_matches_scalar():
    t = hg.mode_bound_table(40)
    for i in range(1, 40):
        for k in range(1, 40):
            r = hg.pmf_mode_lower_bound(HypergeomParams(40, i, k))
            assert bool(t["applicable"][i - 1, k - 1]) == r.applicable
            if r.applicable:
                assert t["bound"][i - 1, k - 1] == pytest.approx(r.raw, rel=1e-10)


def test_central_inequality_small_n_exact():
    for n in range(2, 40):
        for i in range(1, n):
            for k in range(1, n):
                norm = hg.normalized_mad(HypergeomParams(n, i, k), exact=True)
                assert float(norm) >= hg.mad_normalized_lower_bound(n, k)


def test_small_mean_subcase_holds_up_to_half_and_fails_beyond():
    # normalized MAD >= k/(2n) holds for ik/n <= 1/2 but not on all of ik/n < 1
    for n in range(2, 60):
        for i in range(1, n):
            for k in range(1, n):
                if 2 * i * k <= n:
                    assert hg.normalized_mad(HypergeomParams(n, i, k), exact=True) >= Fraction(k, 2 * n)
    assert hg.normalized_mad(HypergeomParams(4, 1, 3), exact=True) < Fraction(3, 8)


def test_mode_bound_counterexample_at_r_equal_one():
    # P(H = m) falls below the stated mode bound when n - i - k + m = 1
    p = HypergeomParams(112, 110, 110)
    assert p.mode_index == 109
    exact = hg.pmf(p, 109, exact=True)
    assert exact == Fraction(220, 6216)
    assert float(exact) < hg.pmf_mode_lower_bound(p).raw
