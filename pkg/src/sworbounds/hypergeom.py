"""Exact hypergeometric machinery.

``Hyp(n, i, k)`` counts marked elements in a uniform k-subset of n elements,
i of which are marked. Scalar functions take ``exact=True`` to return
:class:`~fractions.Fraction` results computed from big-integer binomials;
otherwise they return floats. The ``*_table`` functions evaluate every
``(i, k)`` for a fixed ``n`` at once in float arithmetic and exist for the
exhaustive sweeps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.special import gammaln

from .errors import DomainError
from .result import BoundResult

# e^{-1/3} / (8 sqrt(2 pi)) and half of it
MAD_CONSTANT = math.exp(-1.0 / 3.0) / (8.0 * math.sqrt(2.0 * math.pi))
MODE_CONSTANT = math.exp(-1.0 / 3.0) / (16.0 * math.sqrt(2.0 * math.pi))

# above this n the float pmf switches from exact integer division to log-gamma
_EXACT_FLOAT_LIMIT = 20000


@lru_cache(maxsize=1 << 16)
def binom(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


@dataclass(frozen=True)
class HypergeomParams:
    n: int
    i: int
    k: int

    def __post_init__(self):
        n, i, k = self.n, self.i, self.k
        if not (1 <= i <= n - 1 and 1 <= k <= n - 1):
            raise DomainError(f"need 1 <= i, k <= n-1; got n={n}, i={i}, k={k}")

    @property
    def support(self) -> range:
        return range(max(0, self.k - (self.n - self.i)), min(self.i, self.k) + 1)

    @property
    def mode_index(self) -> int:
        """``ceil(ik/n)``: the integer m with ik/n in (m-1, m]."""
        return -(-self.i * self.k // self.n)


@dataclass(frozen=True)
class StirlingBracket:
    lower: float
    upper: float

    def contains(self, x: float) -> bool:
        return self.lower < x < self.upper


def _count(p: HypergeomParams, m: int) -> int:
    return binom(p.i, m) * binom(p.n - p.i, p.k - m)


def pmf(p: HypergeomParams, m: int, exact: bool = False):
    if m not in p.support:
        return Fraction(0) if exact else 0.0
    if exact:
        return Fraction(_count(p, m), binom(p.n, p.k))
    if p.n <= _EXACT_FLOAT_LIMIT:
        return _count(p, m) / binom(p.n, p.k)
    return math.exp(_log_pmf(p.n, p.i, p.k, m))


def _log_pmf(n, i, k, m):
    lg = math.lgamma
    return (lg(i + 1) - lg(m + 1) - lg(i - m + 1)
            + lg(n - i + 1) - lg(k - m + 1) - lg(n - i - k + m + 1)
            - lg(n + 1) + lg(k + 1) + lg(n - k + 1))


def cdf(p: HypergeomParams, m: int, exact: bool = False):
    lo, hi = p.support.start, p.support.stop - 1
    if m < lo:
        return Fraction(0) if exact else 0.0
    if m >= hi:
        return Fraction(1) if exact else 1.0
    num = sum(_count(p, j) for j in range(lo, m + 1))
    if exact:
        return Fraction(num, binom(p.n, p.k))
    return num / binom(p.n, p.k)


def mean(p: HypergeomParams, exact: bool = False):
    r = Fraction(p.i * p.k, p.n)
    return r if exact else float(r)


def variance(p: HypergeomParams, exact: bool = False):
    n, i, k = p.n, p.i, p.k
    r = Fraction(k * i * (n - i) * (n - k), n * n * (n - 1))
    return r if exact else float(r)


def mad_exact(p: HypergeomParams, exact: bool = False):
    """Mean absolute deviation ``E|H - ik/n|`` in closed form.

    With ``m = ceil(ik/n)`` the deviation equals
    ``(2m/n) (n - i - k + m) P(H = m)``.
    """
    n, i, k = p.n, p.i, p.k
    m = p.mode_index
    if exact:
        return Fraction(2 * m * (n - i - k + m) * _count(p, m), n * binom(n, k))
    return 2 * m * (n - i - k + m) / n * pmf(p, m)


def mad_direct(p: HypergeomParams, exact: bool = False):
    """``E|H - ik/n|`` by summing over the support; reference for :func:`mad_exact`."""
    n, i, k = p.n, p.i, p.k
    if exact:
        # n * C(n,k) * MAD is an integer
        num = sum(abs(n * j - i * k) * _count(p, j) for j in p.support)
        return Fraction(num, n * binom(n, k))
    mu = i * k / n
    return math.fsum(abs(j - mu) * pmf(p, j) for j in p.support)


def normalized_mad(p: HypergeomParams, exact: bool = False):
    scale = Fraction(p.n, 2 * p.i * (p.n - p.i))
    if exact:
        return scale * mad_exact(p, exact=True)
    return float(scale) * mad_exact(p)


def mad_normalized_lower_bound(n: int, k: int) -> float:
    return MAD_CONSTANT * math.sqrt(k / n) * math.sqrt(n - k) / n


def pmf_mode_lower_bound(p: HypergeomParams) -> BoundResult:
    """Lower bound on ``P(H = m)`` at ``m = ceil(ik/n)``.

    Only valid when ``2 <= m <= min(i, k) - 1``; otherwise the result is
    flagged inapplicable with a reason code.
    """
    n, i, k = p.n, p.i, p.k
    m = p.mode_index
    inputs = dict(n=n, i=i, k=k, m=m)
    if m < 2:
        return BoundResult.inapplicable("pmf_mode", "lower", "mode_below_2", **inputs)
    if m > min(i, k) - 1:
        return BoundResult.inapplicable("pmf_mode", "lower", "mode_above_min_minus_1", **inputs)
    ratio = Fraction(i * (n - i) * k * (n - k), m * (i - m) * (k - m) * (n - i - k + m) * n)
    return BoundResult("pmf_mode", "lower", MODE_CONSTANT * math.sqrt(ratio), inputs=inputs)


def robbins_bounds(n: int) -> StirlingBracket:
    if n < 1:
        raise DomainError("robbins_bounds needs n >= 1")
    base = 0.5 * math.log(2 * math.pi * n) + n * math.log(n) - n
    return StirlingBracket(base + 1 / (12 * n + 1), base + 1 / (12 * n))


def complement(p: HypergeomParams) -> HypergeomParams:
    return HypergeomParams(p.n, p.n - p.i, p.k)


def median(p: HypergeomParams) -> int:
    """Smallest m with ``P(H <= m) >= 1/2``."""
    half = Fraction(1, 2)
    for m in p.support:
        if cdf(p, m, exact=True) >= half:
            return m
    raise AssertionError("unreachable")


def mad_table(n: int) -> dict[str, np.ndarray]:
    """Float evaluation over the full ``(i, k)`` grid for one ``n``.

    Returns arrays of shape ``(n-1, n-1)`` indexed ``[i-1, k-1]``: ``m``
    (``ceil(ik/n)``), ``pmf_m`` (``P(H = m)``), ``mad``, ``normalized_mad``
    and ``lower_bound`` (the normalized-MAD lower bound, constant along i).
    """
    if n < 2:
        raise DomainError("mad_table needs n >= 2")
    i = np.arange(1, n)[:, None].astype(np.int64)
    k = np.arange(1, n)[None, :].astype(np.int64)
    m = -(-(i * k) // n)
    r = n - i - k + m
    logp = (gammaln(i + 1) - gammaln(m + 1) - gammaln(i - m + 1)
            + gammaln(n - i + 1) - gammaln(k - m + 1) - gammaln(r + 1)
            - gammaln(n + 1) + gammaln(k + 1) + gammaln(n - k + 1))
    pmf_m = np.exp(logp)
    mad = 2.0 * m * r / n * pmf_m
    norm = n / (2.0 * i * (n - i)) * mad
    lb = MAD_CONSTANT * np.sqrt(k / n) * np.sqrt(n - k) / n
    return {
        "i": np.broadcast_to(i, mad.shape),
        "k": np.broadcast_to(k, mad.shape),
        "m": m,
        "pmf_m": pmf_m,
        "mad": mad,
        "normalized_mad": norm,
        "lower_bound": np.broadcast_to(lb, mad.shape),
    }


def mode_bound_table(n: int) -> dict[str, np.ndarray]:
    """Vectorized :func:`pmf_mode_lower_bound` over the ``(i, k)`` grid.

    ``applicable`` marks cells where ``2 <= m <= min(i, k) - 1``; ``bound``
    is NaN elsewhere.
    """
    t = mad_table(n)
    i, k, m = t["i"], t["k"], t["m"]
    ok = (m >= 2) & (m <= np.minimum(i, k) - 1)
    fi, fk, fm = i.astype(float), k.astype(float), m.astype(float)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = (fi * (n - fi) * fk * (n - fk)) / (fm * (fi - fm) * (fk - fm) * (n - fi - fk + fm) * n)
        bound = np.where(ok, MODE_CONSTANT * np.sqrt(ratio), np.nan)
    return {"i": i, "k": k, "m": m, "pmf_m": t["pmf_m"], "bound": bound, "applicable": ok}
