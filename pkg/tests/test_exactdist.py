import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sworbounds import exactdist as ed
from sworbounds.errors import DomainError, NoPositiveMass, TooLarge
from sworbounds.majorization import extreme_population, two_block_population
from sworbounds.population import Population, center, random_population


@pytest.mark.parametrize("n", range(1, 12))
def test_revolving_door_visits_every_subset_once(n):
    for k in range(1, n):
        cur = set(range(k))
        seen = {frozenset(cur)}
        for out, inn in ed.revolving_door(n, k):
            assert out in cur and inn not in cur
            cur.remove(out)
            cur.add(inn)
            seen.add(frozenset(cur))
        assert seen == {frozenset(c) for c in itertools.combinations(range(n), k)}


def brute(values, k):
    out = {}
    for c in itertools.combinations(values, k):
        s = sum(c, Fraction(0))
        out[s] = out.get(s, 0) + 1
    return out


def test_one_large_three_equal_negatives():
    d = ed.exact_distribution(Population((1, Fraction(-1, 3), Fraction(-1, 3), Fraction(-1, 3))), 2)
    assert d.support == (Fraction(-2, 3), Fraction(2, 3))
    assert d.counts == (3, 3) and d.denominator == 6


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=2, max_size=9), st.data())
def test_matches_brute_force(xs, data):
    p = center(xs, exact=True)
    k = data.draw(st.integers(1, p.n - 1))
    d = ed.exact_distribution(p, k)
    assert d.as_dict() == {v: Fraction(c, d.denominator) for v, c in brute(p.values, k).items()}
    assert d.mean() == 0


def test_float_enumeration_groups_atoms():
    p = Population((0.1, 0.2, -0.3))
    d = ed.exact_distribution(p, 2)
    assert d.counts == (1, 1, 1)
    assert ed.tail_probability(d, 0.3) == pytest.approx(1 / 3)  # 0.1 + 0.2 counts as 0.3
    assert ed.tail_probability(d, -0.1, strict=True) == pytest.approx(1 / 3)


def test_tail_conventions_exact():
    d = ed.exact_distribution(Population((1, 0, 0, -1)), 2)
    assert ed.tail_probability(d, 0) == Fraction(2, 3)
    assert ed.tail_probability(d, 0, strict=True) == Fraction(1, 3)
    assert ed.tail_probability(d, float("-inf")) == 1
    assert ed.tail_probability(d, float("inf")) == 0


def test_budget():
    with pytest.raises(TooLarge):
        ed.exact_distribution(Population((1, -1) * 20), 20)
    with pytest.raises(TooLarge):
        ed.check_budget(30, 1)
    with pytest.raises(DomainError):
        ed.check_budget(5, 5)
    assert ed.is_enumerable(25, 5) and not ed.is_enumerable(26, 1)


def test_positive_part_identities():
    d = ed.exact_distribution(Population((2, 2, -1, -3)), 2)
    ids = ed.positive_part_identities(d)
    assert ids.folklore_residual == 0
    assert ids.E_plus == ids.E_minus and ids.E_abs == 2 * ids.E_plus
    with pytest.raises(NoPositiveMass):
        ed.positive_part_identities(ed.exact_distribution(Population((0, 0, 0)), 1))


@pytest.mark.parametrize("n", range(2, 10))
def test_closed_forms_match_enumeration(n):
    for k in range(1, n):
        for i in range(1, n):
            two = ed.two_block_distribution(n, i, k, Fraction(1))
            assert ed.same_distribution(two, ed.exact_distribution(two_block_population(n, i, Fraction(1)), k))
            flt = ed.two_block_distribution(n, i, k, 1.0)
            assert ed.same_distribution(flt, two)
        ext = ed.extreme_distribution(n, k, Fraction(1))
        assert ed.same_distribution(ext, ed.exact_distribution(extreme_population(n, Fraction(1)), k))


def test_sharp_population():
    d = ed.exact_distribution(two_block_population(4, 1, Fraction(1)), 2)
    assert ed.tail_probability(d, 0) == Fraction(1, 2)


def test_scaled():
    d = ed.extreme_distribution(5, 2, Fraction(2)).scaled(Fraction(1, 2))
    assert d.support == (-1, 0, 1)
    with pytest.raises(DomainError):
        d.scaled(0)


def test_mc_is_deterministic_and_calibrated():
    p = Population((1, Fraction(-1, 3), Fraction(-1, 3), Fraction(-1, 3)))
    a = ed.mc_tail(p, 2, 0, strict=True, reps=100_000, seed=7)
    b = ed.mc_tail(p, 2, 0, strict=True, reps=100_000, seed=7)
    assert a == b
    assert abs(a.estimate - 0.5) <= 4 * a.std_error
    sharded = ed.mc_tail(p, 2, 0, strict=True, reps=100_001, seed=7, shards=4)
    assert sharded.reps == 100_001 and abs(sharded.estimate - 0.5) <= 4 * sharded.std_error
    with pytest.raises(DomainError):
        ed.mc_tail(p, 2, 0, reps=0)


def test_mc_agrees_with_enumeration_on_floats(rng):
    p = random_population(rng, 9, 1.0)
    d = ed.exact_distribution(p, 4)
    t = d.support[len(d.support) // 2]
    est = ed.mc_tail(p, 4, t, reps=200_000, seed=3)
    assert abs(est.estimate - ed.tail_probability(d, t)) <= 5 * est.std_error
