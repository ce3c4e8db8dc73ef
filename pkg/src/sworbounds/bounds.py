"""Tail bounds for the sum of a k-sample drawn without replacement.

Every bound returns a :class:`~sworbounds.result.BoundResult`. Bounds whose
hypotheses fail come back with ``applicable=False`` and a reason code rather
than raising, so sweeps can skip them.

Event conventions, fixed across the package:

* ``lower_at_zero`` bounds ``P(X > 0)`` from below.
* every other bound refers to ``P(X >= threshold)``; the sample-average bounds
  (``bm_*``) use ``P(X/k >= eps)``, i.e. threshold ``t = k * eps``.
"""

from __future__ import annotations

import enum
import math

from .errors import DomainError
from .hypergeom import MAD_CONSTANT
from .population import PopulationStats
from .result import BoundResult

POKROVSKIY_FACTOR = 10 ** 46
DEFAULT_DELTA = 0.05


class BoundId(str, enum.Enum):
    hoeffding = "hoeffding"
    pokrovskiy = "pokrovskiy"
    lower_at_zero = "lower_at_zero"
    upper_at_zero = "upper_at_zero"
    abs_dev_upper = "abs_dev_upper"
    abs_dev_lower = "abs_dev_lower"
    bm_serfling = "bm_serfling"
    bm_bernstein = "bm_bernstein"


def hoeffding_upper(k: int, a: float, b: float, t: float) -> BoundResult:
    """``P(X >= t) <= exp(-2 t^2 / (k (b - a)^2))`` for ``t > 0``."""
    name, inputs = BoundId.hoeffding.value, dict(k=k, a=a, b=b, t=t)
    if k < 1:
        return BoundResult.inapplicable(name, "upper", "k_below_1", **inputs)
    if not t > 0:
        return BoundResult.inapplicable(name, "upper", "t_not_positive", **inputs)
    if not b > a:
        return BoundResult.inapplicable(name, "upper", "zero_range", **inputs)
    t, a, b = float(t), float(a), float(b)
    return BoundResult(name, "upper", math.exp(-2.0 * t * t / (k * (b - a) ** 2)), inputs=inputs)


def pokrovskiy_lower(n: int, k: int) -> BoundResult:
    """``P(X >= 0) >= k/n``, valid only once ``n >= 10**46 * k`` (checked in integers)."""
    name, inputs = BoundId.pokrovskiy.value, dict(n=n, k=k)
    if not 1 <= k <= n - 1:
        return BoundResult.inapplicable(name, "lower", "k_out_of_range", **inputs)
    if n < POKROVSKIY_FACTOR * k:
        return BoundResult.inapplicable(name, "lower", "n_below_1e46_k", **inputs)
    return BoundResult(name, "lower", k / n, inputs=inputs)


def _at_zero_raw(n: int, k: int) -> float:
    return MAD_CONSTANT * (k / n) * math.sqrt((n - k) / (n * k))


def lower_at_zero(n: int, k: int) -> BoundResult:
    """Lower bound on ``P(X > 0)`` valid for every zero-sum population that is not identically zero."""
    name, inputs = BoundId.lower_at_zero.value, dict(n=n, k=k)
    if n < 2 or not 1 <= k <= n - 1:
        return BoundResult.inapplicable(name, "lower", "k_out_of_range", **inputs)
    return BoundResult(name, "lower", _at_zero_raw(n, k), inputs=inputs)


def upper_at_zero(n: int, k: int) -> BoundResult:
    name, inputs = BoundId.upper_at_zero.value, dict(n=n, k=k)
    if n < 2 or not 1 <= k <= n - 1:
        return BoundResult.inapplicable(name, "upper", "k_out_of_range", **inputs)
    return BoundResult(name, "upper", 1.0 - _at_zero_raw(n, k), inputs=inputs)


def _pair_fraction(n: int, k: int) -> float:
    # probability that the sample holds exactly one of two marked elements
    return 2.0 * k * (n - k) / (n * (n - 1))


def abs_dev_upper(n: int, k: int, alpha: float, t: float) -> BoundResult:
    """Upper bound on ``P(X >= t)`` from the absolute sum ``2*alpha``, for ``0 < t < alpha``."""
    name, inputs = BoundId.abs_dev_upper.value, dict(n=n, k=k, alpha=alpha, t=t)
    if n < 2 or not 1 <= k <= n - 1:
        return BoundResult.inapplicable(name, "upper", "k_out_of_range", **inputs)
    if not alpha > 0:
        return BoundResult.inapplicable(name, "upper", "alpha_not_positive", **inputs)
    if not 0 < t < alpha:
        return BoundResult.inapplicable(name, "upper", "t_outside_0_alpha", **inputs)
    alpha, t = float(alpha), float(t)
    slope = min(1.0, t / (alpha - t))
    return BoundResult(name, "upper", 1.0 - slope * (1.0 - _pair_fraction(n, k)), inputs=inputs)


def abs_dev_lower_window(n: int, k: int, alpha: float) -> float:
    """Right end of the open threshold window of :func:`abs_dev_lower`."""
    return 4.0 * k * (n - k) / (n * n * (n - 1)) * float(alpha)


def abs_dev_lower(n: int, k: int, alpha: float, t: float) -> BoundResult:
    """Lower bound on ``P(X >= t)`` for small thresholds ``0 < t < 4k(n-k) alpha / (n^2 (n-1))``."""
    name, inputs = BoundId.abs_dev_lower.value, dict(n=n, k=k, alpha=alpha, t=t)
    if n < 2 or not 1 <= k <= n - 1:
        return BoundResult.inapplicable(name, "lower", "k_out_of_range", **inputs)
    if not alpha > 0:
        return BoundResult.inapplicable(name, "lower", "alpha_not_positive", **inputs)
    if not 0 < t < abs_dev_lower_window(n, k, alpha):
        return BoundResult.inapplicable(name, "lower", "t_outside_window", **inputs)
    alpha, t = float(alpha), float(t)
    raw = 2.0 * alpha / (alpha - t) * k * (n - k) / (n * n * (n - 1)) - t / (2.0 * (alpha - t))
    return BoundResult(name, "lower", raw, inputs=inputs)


def bm_serfling_upper(n: int, k: int, a: float, b: float, eps: float) -> BoundResult:
    """Serfling-type bound on ``P(X/k >= eps)`` (Bardenet and Maillard)."""
    name, inputs = BoundId.bm_serfling.value, dict(n=n, k=k, a=a, b=b, eps=eps)
    if not 1 <= k <= n - 1:
        return BoundResult.inapplicable(name, "upper", "k_out_of_range", **inputs)
    if not eps > 0:
        return BoundResult.inapplicable(name, "upper", "eps_not_positive", **inputs)
    if not b > a:
        return BoundResult.inapplicable(name, "upper", "zero_range", **inputs)
    rng = float(b) - float(a)
    eps = float(eps)
    denom = (1.0 - k / n) * (1.0 + 1.0 / k) * rng * rng
    return BoundResult(name, "upper", math.exp(-2.0 * k * eps * eps / denom), inputs=inputs)


def bm_bernstein_upper(n: int, k: int, a: float, b: float, sigma2: float, eps: float,
                       delta: float = DEFAULT_DELTA) -> BoundResult:
    """Bernstein-Serfling bound on ``P(X/k >= eps)`` (Bardenet and Maillard).

    The variance proxy is
    ``gamma^2 = (1 - k/n) ((k+1)/k sigma^2 + (n-k-1)/k c(delta))`` with
    ``c(delta) = sigma (b - a) sqrt(2 log(1/delta) / (n-k-1))``. The second
    term is evaluated as ``sigma (b-a) sqrt(2 log(1/delta) (n-k-1)) / k``,
    which is the same number for ``k <= n-2`` and its limit 0 at ``k = n-1``.
    """
    name = BoundId.bm_bernstein.value
    inputs = dict(n=n, k=k, a=a, b=b, sigma2=sigma2, eps=eps, delta=delta)
    if not 1 <= k <= n - 1:
        return BoundResult.inapplicable(name, "upper", "k_out_of_range", **inputs)
    if not eps > 0:
        return BoundResult.inapplicable(name, "upper", "eps_not_positive", **inputs)
    if not b > a:
        return BoundResult.inapplicable(name, "upper", "zero_range", **inputs)
    if not 0 < delta <= 1:
        return BoundResult.inapplicable(name, "upper", "delta_outside_0_1", **inputs)
    if sigma2 < 0:
        return BoundResult.inapplicable(name, "upper", "negative_variance", **inputs)
    rng, eps, sigma2, delta = float(b) - float(a), float(eps), float(sigma2), float(delta)
    sigma = math.sqrt(sigma2)
    rest = n - k - 1
    spread = sigma * rng * math.sqrt(2.0 * math.log(1.0 / delta) * rest) / k
    gamma2 = (1.0 - k / n) * ((k + 1) / k * sigma2 + spread)
    exponent = -(k * eps * eps / 2.0) / (gamma2 + (2.0 / 3.0) * rng * eps)
    return BoundResult(name, "upper", math.exp(exponent) + delta, inputs=inputs)


def _check_unit(x: float, name: str) -> None:
    if not -1.0 <= x <= 1.0:
        raise DomainError(f"{name}={x} outside [-1, 1]")


def linear_minorant(y: float, x: float) -> float:
    """Concave piecewise-linear function below the indicator of ``x > -y`` on [-1, 1]."""
    if not 0.0 < y < 1.0:
        raise DomainError(f"y={y} outside (0, 1)")
    _check_unit(x, "x")
    if x <= 1.0 - 2.0 * y:
        return (x + y) / (1.0 - y)
    return 1.0


def quadratic_minorant(y: float, x: float) -> float:
    """Convex parabola below the indicator of ``x >= y`` on [-1, 1]; zero at -1 and y, one at 1."""
    if not 0.0 <= y < 1.0:
        raise DomainError(f"y={y} outside [0, 1)")
    _check_unit(x, "x")
    return x * x / (2.0 * (1.0 - y)) + x / 2.0 - y / (2.0 * (1.0 - y))


def evaluate_all(n: int, k: int, st: PopulationStats, t: float,
                 delta: float = DEFAULT_DELTA) -> list[BoundResult]:
    """Every bound in :class:`BoundId` order for one ``(n, k, t)``.

    The two at-zero bounds and Pokrovskiy's are bounds on the zero threshold
    only, so they are flagged inapplicable unless ``t == 0``. Sample-average
    bounds receive ``eps = t / k``.
    """
    a, b, sigma2, alpha = float(st.a), float(st.b), float(st.sigma2), float(st.alpha)
    out = [hoeffding_upper(k, a, b, t)]
    zero_only = [pokrovskiy_lower(n, k), lower_at_zero(n, k), upper_at_zero(n, k)]
    if t != 0:
        zero_only = [BoundResult.inapplicable(r.name, r.kind, "threshold_not_zero", t=t, **r.inputs)
                     for r in zero_only]
    elif alpha <= 0:
        # the at-zero bounds need a population that is not identically zero
        zero_only = [r if r.name == BoundId.pokrovskiy.value else
                     BoundResult.inapplicable(r.name, r.kind, "alpha_not_positive", **r.inputs)
                     for r in zero_only]
    out += zero_only
    out.append(abs_dev_upper(n, k, alpha, t))
    out.append(abs_dev_lower(n, k, alpha, t))
    eps = t / k if k >= 1 else float("nan")
    out.append(bm_serfling_upper(n, k, a, b, eps))
    out.append(bm_bernstein_upper(n, k, a, b, sigma2, eps, delta))
    return out
