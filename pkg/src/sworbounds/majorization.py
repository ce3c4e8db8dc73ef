"""Majorization order and the extremal members of the zero-sum set.

``x`` is majorized by ``y`` (``x ≺ y``) when the descending prefix sums of
``x`` never exceed those of ``y`` and the totals agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Sequence

from .errors import InvalidTransfer, LengthMismatch
from .population import Population

# absolute tolerance on prefix sums after rescaling to absolute sum 2
PREFIX_TOLERANCE = 1e-9


def _as_tuple(v) -> tuple:
    return tuple(v.values) if isinstance(v, Population) else tuple(v)


def _all_rational(*vecs) -> bool:
    return all(isinstance(x, Rational) and not isinstance(x, bool) for v in vecs for x in v)


def _prefix_sums(v: Sequence) -> list:
    # stable sort: ties keep original order
    order = sorted(range(len(v)), key=lambda j: v[j], reverse=True)
    out, acc = [], 0
    for j in order:
        acc += v[j]
        out.append(acc)
    return out


def is_majorized_by(x, y) -> bool:
    """True iff ``x ≺ y``.

    Rational inputs are compared exactly. Float inputs are first rescaled so
    the larger absolute sum is 2, then compared with an absolute tolerance of
    ``PREFIX_TOLERANCE``.
    """
    x, y = _as_tuple(x), _as_tuple(y)
    if len(x) != len(y):
        raise LengthMismatch(f"lengths differ: {len(x)} vs {len(y)}")
    if not x:
        return True
    if _all_rational(x, y):
        px, py = _prefix_sums(x), _prefix_sums(y)
        return px[-1] == py[-1] and all(a <= b for a, b in zip(px[:-1], py[:-1]))
    x = [float(v) for v in x]
    y = [float(v) for v in y]
    mass = max(math.fsum(map(abs, x)), math.fsum(map(abs, y)))
    scale = 2.0 / mass if mass > 0 else 1.0
    px = _prefix_sums([v * scale for v in x])
    py = _prefix_sums([v * scale for v in y])
    if abs(px[-1] - py[-1]) > PREFIX_TOLERANCE:
        return False
    return all(a <= b + PREFIX_TOLERANCE for a, b in zip(px[:-1], py[:-1]))


@dataclass(frozen=True)
class MajorizationCertificate:
    """Witness that ``minimal_vector ≺`` the original population.

    ``prefix_trace`` lists ``(l, dominated_prefix, dominating_prefix)`` for
    l = 1..n.
    """

    index_i: int
    minimal_vector: Population
    prefix_trace: tuple

    def is_valid(self) -> bool:
        exact = self.minimal_vector.exact
        tol = 0 if exact else PREFIX_TOLERANCE * float(self.minimal_vector.abs_sum or 1) / 2
        *head, last = self.prefix_trace
        if abs(last[1] - last[2]) > tol:
            return False
        return all(lo <= hi + tol for _, lo, hi in head)


def two_block_population(n: int, i: int, alpha) -> Population:
    """``i`` entries ``alpha/i`` followed by ``n - i`` entries ``-alpha/(n-i)``."""
    exact = isinstance(alpha, Rational)
    if exact:
        alpha = Fraction(alpha)
    hi, lo = alpha / i, -alpha / (n - i)
    return Population((hi,) * i + (lo,) * (n - i), exact)


def minimal_population(p: Population) -> MajorizationCertificate:
    """Two-block population majorized by ``p`` with the same absolute sum.

    ``i`` is the number of nonnegative entries of ``p`` (zeros included).
    """
    p.require_nondegenerate()
    i = sum(1 for v in p.values if v >= 0)
    alpha = p.alpha
    low = two_block_population(p.n, i, alpha)
    pl, pp = _prefix_sums(low.values), _prefix_sums(p.values)
    trace = tuple((ell + 1, a, b) for ell, (a, b) in enumerate(zip(pl, pp)))
    return MajorizationCertificate(i, low, trace)


def extreme_population(n: int, alpha) -> Population:
    """``(alpha, 0, ..., 0, -alpha)``: dominates every population with absolute sum 2*alpha."""
    exact = isinstance(alpha, Rational)
    zero = Fraction(0) if exact else 0.0
    return Population((alpha,) + (zero,) * (n - 2) + (-alpha,), exact)


def robin_hood_transfer(p: Population, donor: int, receiver: int, eps) -> Population:
    """Move ``eps`` from a richer entry to a poorer one (0-based indices).

    Requires ``p[donor] > p[receiver]`` and ``0 < eps <= gap/2``; the result
    is majorized by ``p``.
    """
    vals = list(p.values)
    n = len(vals)
    if not (0 <= donor < n and 0 <= receiver < n) or donor == receiver:
        raise InvalidTransfer(f"bad indices donor={donor}, receiver={receiver}")
    gap = vals[donor] - vals[receiver]
    if gap <= 0:
        raise InvalidTransfer("donor must hold strictly more than receiver")
    if p.exact:
        eps = Fraction(eps)
    if not (0 < eps <= gap / 2):
        raise InvalidTransfer(f"eps={eps} outside (0, {gap / 2}]")
    vals[donor] -= eps
    vals[receiver] += eps
    return Population(tuple(vals), p.exact)


def random_transfer(rng, p: Population) -> Population | None:
    """Apply one random Robin Hood transfer, or return None if ``p`` is constant."""
    vals = p.values
    n = len(vals)
    pairs = [(d, r) for d in range(n) for r in range(n) if vals[d] > vals[r]]
    if not pairs:
        return None
    d, r = pairs[int(rng.integers(len(pairs)))]
    gap = vals[d] - vals[r]
    if p.exact:
        frac = Fraction(int(rng.integers(1, 11)), 20)
    else:
        frac = float(rng.uniform(0.05, 0.5))
    return robin_hood_transfer(p, d, r, gap * frac)


def comparable_pair(rng, p: Population, steps: int | None = None) -> tuple[Population, Population]:
    """Return ``(q, p)`` with ``q ≺ p`` built from random Robin Hood transfers.

    ``steps`` defaults to a random count in 1..4. About 30% of draws instead
    pair ``p`` with its two-block minimal population or with the extreme
    population, so both ends of the order get exercised.
    """
    choice = rng.random()
    if choice < 0.15 and p.abs_sum != 0:
        return minimal_population(p).minimal_vector, p
    if choice < 0.3 and p.abs_sum != 0:
        return p, extreme_population(p.n, p.alpha)
    q = p
    for _ in range(steps if steps is not None else int(rng.integers(1, 5))):
        nxt = random_transfer(rng, q)
        if nxt is None:
            break
        q = nxt
    return q, p
