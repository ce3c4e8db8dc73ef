"""Exact and simulated distributions of the sample sum.

The sample sum of a uniform k-subset is enumerated exactly with a
revolving-door walk over all k-subsets: consecutive subsets differ by one
swap, so each step costs one integer add. Values are mapped to integers on a
common denominator first (the lcm of the Fraction denominators, or the largest
power of two among the floats), which keeps every sum exact in both numeric
modes.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterator

import numpy as np

from .errors import DomainError, NoPositiveMass, TooLarge
from .hypergeom import HypergeomParams, binom
from .population import Population

ENUMERATION_LIMIT = 25
SUBSET_BUDGET = 5_000_000
# float atoms closer than this (times alpha) are merged
GROUPING_TOLERANCE = 1e-9


def revolving_door(n: int, k: int) -> Iterator[tuple[int, int]]:
    """Walk all k-subsets of ``range(n)`` starting from ``{0, ..., k-1}``.

    Yields ``(removed, added)`` for every step, so ``C(n, k) - 1`` pairs in
    total. Knuth's Algorithm R (TAOCP 7.2.1.3).
    """
    if k <= 0 or k >= n:
        return
    if k == 1:
        for j in range(1, n):
            yield j - 1, j
        return
    c = [0] + list(range(k)) + [n]  # 1-based: c[1..k], sentinel c[k+1] = n
    odd = k % 2 == 1
    while True:
        if odd:
            if c[1] + 1 < c[2]:
                yield c[1], c[1] + 1
                c[1] += 1
                continue
            j, step = 2, "decrease"
        else:
            if c[1] > 0:
                yield c[1], c[1] - 1
                c[1] -= 1
                continue
            j, step = 2, "increase"
        while True:
            if step == "decrease":
                if c[j] >= j:
                    yield c[j], j - 2
                    c[j], c[j - 1] = c[j - 1], j - 2
                    break
                j += 1
                step = "increase"
            else:
                if c[j] + 1 < c[j + 1]:
                    yield j - 2, c[j] + 1
                    c[j - 1], c[j] = c[j], c[j] + 1
                    break
                j += 1
                if j > k:
                    return
                step = "decrease"


@dataclass(frozen=True)
class DiscreteDistribution:
    """Finite law of the sample sum: atom ``support[j]`` has probability
    ``counts[j] / denominator``.

    In exact mode the support holds Fractions; in float mode floats, and
    ``atol`` is the tolerance used to resolve threshold comparisons at atoms.
    """

    support: tuple
    counts: tuple
    denominator: int
    n: int
    k: int
    exact: bool
    atol: float = 0.0

    def __post_init__(self):
        if sum(self.counts) != self.denominator:
            raise DomainError("counts do not add up to the denominator")
        if any(b <= a for a, b in zip(self.support, self.support[1:])):
            raise DomainError("support must be strictly increasing")

    @property
    def probabilities(self) -> tuple:
        if self.exact:
            return tuple(Fraction(c, self.denominator) for c in self.counts)
        return tuple(c / self.denominator for c in self.counts)

    def items(self):
        return zip(self.support, self.probabilities)

    def as_dict(self) -> dict:
        return dict(self.items())

    def mean(self):
        return self._expect(lambda v: v)

    def expect(self, g):
        """``E g(X)``; exact if ``g`` maps Fractions to Fractions."""
        return self._expect(g)

    def _expect(self, g):
        if self.exact:
            return sum((g(v) * c for v, c in zip(self.support, self.counts)), Fraction(0)) / self.denominator
        return math.fsum(g(v) * c for v, c in zip(self.support, self.counts)) / self.denominator

    def scaled(self, factor) -> "DiscreteDistribution":
        """Distribution of ``factor * X`` for ``factor > 0``."""
        if factor <= 0:
            raise DomainError("scale factor must be positive")
        if self.exact and isinstance(factor, Rational):
            return DiscreteDistribution(tuple(v * factor for v in self.support), self.counts,
                                        self.denominator, self.n, self.k, True)
        return DiscreteDistribution(tuple(float(v) * float(factor) for v in self.support), self.counts,
                                    self.denominator, self.n, self.k, False, self.atol * float(factor))


def _from_counter(counter: dict, n: int, k: int, exact: bool, atol: float) -> DiscreteDistribution:
    items = sorted((v, c) for v, c in counter.items() if c)
    if not exact:
        merged: list[list] = []
        for v, c in items:
            if merged and v - merged[-1][2] <= atol:
                merged[-1][1] += c
                merged[-1][2] = v
            else:
                merged.append([v, c, v])
        items = [(v, c) for v, c, _ in merged]
    return DiscreteDistribution(tuple(v for v, _ in items), tuple(c for _, c in items),
                                binom(n, k), n, k, exact, atol)


def _integer_scale(p: Population) -> tuple[list[int], int]:
    """Integers ``a_j`` and ``L`` with ``x_j = a_j / L`` exactly."""
    ratios = [Fraction(v) if p.exact else v.as_integer_ratio() for v in p.values]
    if p.exact:
        den = math.lcm(*(r.denominator for r in ratios))
        return [r.numerator * (den // r.denominator) for r in ratios], den
    den = max(d for _, d in ratios)
    return [num * (den // d) for num, d in ratios], den


def _tolerance(p: Population) -> float:
    return 0.0 if p.exact else GROUPING_TOLERANCE * float(p.alpha)


def check_budget(n: int, k: int, limit: int = ENUMERATION_LIMIT, budget: int = SUBSET_BUDGET) -> None:
    if not 1 <= k <= n - 1:
        raise DomainError(f"need 1 <= k <= n-1; got n={n}, k={k}")
    if n > limit or binom(n, k) > budget:
        raise TooLarge(f"C({n},{k}) = {binom(n, k)} subsets exceeds the enumeration budget "
                       f"(n <= {limit}, C(n,k) <= {budget})")


def is_enumerable(n: int, k: int, limit: int = ENUMERATION_LIMIT, budget: int = SUBSET_BUDGET) -> bool:
    return 1 <= k <= n - 1 and n <= limit and binom(n, k) <= budget


def exact_distribution(p: Population, k: int, limit: int = ENUMERATION_LIMIT,
                       budget: int = SUBSET_BUDGET) -> DiscreteDistribution:
    """Enumerate all ``C(n, k)`` subsets and tabulate their sums."""
    n = p.n
    check_budget(n, k, limit, budget)
    ints, den = _integer_scale(p)
    cur = sum(ints[:k])
    counts = Counter({cur: 1})
    for out, inn in revolving_door(n, k):
        cur += ints[inn] - ints[out]
        counts[cur] += 1
    if p.exact:
        table = {Fraction(s, den): c for s, c in counts.items()}
    else:
        table = {}
        for s, c in counts.items():
            v = s / den
            table[v] = table.get(v, 0) + c
    return _from_counter(table, n, k, p.exact, _tolerance(p))


def tail_probability(d: DiscreteDistribution, t, strict: bool = False):
    """``P(X > t)`` if ``strict`` else ``P(X >= t)``.

    Float distributions treat atoms within ``d.atol`` of ``t`` as equal to it.
    """
    if d.exact:
        if isinstance(t, float) and math.isinf(t):
            hit = sum(d.counts) if t < 0 else 0
            return Fraction(hit, d.denominator)
        t = Fraction(t)
        hit = sum(c for v, c in zip(d.support, d.counts) if (v > t if strict else v >= t))
        return Fraction(hit, d.denominator)
    t = float(t)
    if strict:
        hit = sum(c for v, c in zip(d.support, d.counts) if v > t + d.atol)
    else:
        hit = sum(c for v, c in zip(d.support, d.counts) if v >= t - d.atol)
    return hit / d.denominator


def expected_abs(d: DiscreteDistribution):
    return d.expect(abs)


@dataclass(frozen=True)
class PositivePartIdentities:
    E_plus: object
    E_minus: object
    E_abs: object
    cond_mean_pos: object
    folklore_residual: object


def positive_part_identities(d: DiscreteDistribution) -> PositivePartIdentities:
    """Positive/negative part moments and the residual of
    ``P(X > 0) = E|X| / (2 E(X | X > 0))`` for a mean-zero ``X``."""
    e_plus = d.expect(lambda v: v if v > 0 else 0 * v)
    e_minus = d.expect(lambda v: -v if v < 0 else 0 * v)
    e_abs = expected_abs(d)
    p_pos = tail_probability(d, 0, strict=True)
    if p_pos == 0:
        raise NoPositiveMass("P(X > 0) = 0; the conditional mean is undefined")
    # E(X | X > 0) with the same atom convention as the tail
    if d.exact:
        pos_sum = sum((v * c for v, c in zip(d.support, d.counts) if v > 0), Fraction(0))
        cond = pos_sum / d.denominator / p_pos
    else:
        pos_sum = math.fsum(v * c for v, c in zip(d.support, d.counts) if v > d.atol)
        cond = pos_sum / d.denominator / p_pos
    residual = p_pos - e_abs / (2 * cond)
    return PositivePartIdentities(e_plus, e_minus, e_abs, cond, residual)


def two_block_distribution(n: int, i: int, k: int, alpha) -> DiscreteDistribution:
    """Law of the sample sum for the two-block population, via ``Hyp(n, i, k)``.

    ``X = (alpha n / (i (n - i))) (H - ik/n)`` with ``H ~ Hyp(n, i, k)``.
    """
    hp = HypergeomParams(n, i, k)
    if not alpha > 0:
        raise DomainError("alpha must be positive")
    exact = isinstance(alpha, Rational)
    if exact:
        scale = Fraction(alpha) * n / (i * (n - i))
        mu = Fraction(i * k, n)
    else:
        scale = float(alpha) * n / (i * (n - i))
        mu = i * k / n
    counter = {scale * (m - mu): binom(i, m) * binom(n - i, k - m) for m in hp.support}
    atol = 0.0 if exact else GROUPING_TOLERANCE * float(alpha)
    return _from_counter(counter, n, k, exact, atol)


def extreme_distribution(n: int, k: int, alpha) -> DiscreteDistribution:
    """Three-point law ``{-alpha, 0, alpha}`` of the sample sum for ``(alpha, 0, ..., 0, -alpha)``."""
    if not 1 <= k <= n - 1:
        raise DomainError(f"need 1 <= k <= n-1; got n={n}, k={k}")
    if alpha <= 0:
        raise DomainError("alpha must be positive")
    exact = isinstance(alpha, Rational)
    if exact:
        alpha = Fraction(alpha)
    zero = Fraction(0) if exact else 0.0
    side = binom(n - 2, k - 1)
    middle = binom(n - 2, k) + binom(n - 2, k - 2)
    counter = {-alpha: side, zero: middle, alpha: side}
    atol = 0.0 if exact else GROUPING_TOLERANCE * float(alpha)
    return _from_counter(counter, n, k, exact, atol)


def same_distribution(d1: DiscreteDistribution, d2: DiscreteDistribution, rtol: float = 1e-12) -> bool:
    """Atom-by-atom equality; exact when both are exact, else up to ``rtol``."""
    if (d1.n, d1.k, d1.denominator) != (d2.n, d2.k, d2.denominator):
        return False
    if d1.counts != d2.counts or len(d1.support) != len(d2.support):
        return False
    if d1.exact and d2.exact:
        return d1.support == d2.support
    scale = max([abs(float(v)) for v in d1.support + d2.support] + [1e-300])
    return all(abs(float(a) - float(b)) <= rtol * scale for a, b in zip(d1.support, d2.support))


@dataclass(frozen=True)
class MCEstimate:
    estimate: float
    std_error: float
    reps: int
    seed: int
    shards: int = 1


def _shard_sizes(reps: int, shards: int) -> list[int]:
    base, extra = divmod(reps, shards)
    return [base + (1 if j < extra else 0) for j in range(shards)]


def mc_tail(p: Population, k: int, t, strict: bool = False, reps: int = 100_000,
            seed: int = 0, shards: int = 1) -> MCEstimate:
    """Monte Carlo estimate of the tail of the sample sum.

    Reps are split across ``shards`` independent streams spawned from
    ``SeedSequence(seed)``; the result is a deterministic function of
    ``(p, k, t, strict, reps, seed, shards)``. Each draw picks a uniform
    k-subset as the k smallest of n iid uniform keys.
    """
    n = p.n
    if reps < 1:
        raise DomainError("reps must be >= 1")
    if not 1 <= k <= n - 1:
        raise DomainError(f"need 1 <= k <= n-1; got n={n}, k={k}")
    if shards < 1:
        raise DomainError("shards must be >= 1")
    values = np.array([float(v) for v in p.values])
    tol = GROUPING_TOLERANCE * float(p.alpha)
    t = float(t)
    chunk = max(1, 1_000_000 // n)
    hits = 0
    for child, size in zip(np.random.SeedSequence(seed).spawn(shards), _shard_sizes(reps, shards)):
        rng = np.random.default_rng(child)
        left = size
        while left:
            m = min(chunk, left)
            keys = rng.random((m, n))
            idx = np.argpartition(keys, k - 1, axis=1)[:, :k]
            sums = values[idx].sum(axis=1)
            hits += int(np.count_nonzero(sums > t + tol if strict else sums >= t - tol))
            left -= m
    est = hits / reps
    return MCEstimate(est, math.sqrt(est * (1.0 - est) / reps), reps, seed, shards)
