"""Property suites that check the package's inequalities against exact ground truth.

Each suite returns a :class:`VerifyReport`. A failure records the inputs and
both sides of the violated relation so it can be replayed directly.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

import numpy as np

from . import bounds, exactdist, hypergeom, majorization
from .hypergeom import HypergeomParams
from .population import Population, random_population, stats

SUITES = ("hypergeom", "majorization", "schur", "bounds", "folklore")

# slack for float comparisons of probabilities and expectations
FLOAT_SLACK = 1e-12


@dataclass
class Failure:
    check: str
    inputs: dict
    lhs: Any
    relation: str
    rhs: Any

    def __str__(self) -> str:
        args = ", ".join(f"{k}={v!r}" for k, v in self.inputs.items())
        return f"{self.check}({args}): {self.lhs!r} {self.relation} {self.rhs!r} violated"


@dataclass
class VerifyReport:
    suite: str
    cases: int = 0
    failures: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def merge(self, other: "VerifyReport") -> None:
        self.cases += other.cases
        self.failures.extend(other.failures)
        self.wall_time += other.wall_time


@dataclass
class SizeCaps:
    """Upper limits on the sweeps; defaults keep the full run around a minute."""

    hyp_exact_n: int = 60
    hyp_table_n: int = 200
    robbins_n: int = 300
    random_pops: int = 1000
    random_n: int = 30
    schur_pairs: int = 300
    schur_n: int = 12
    bounds_cases: int = 500
    enum_n: int = 14
    mc_instances: int = 30
    mc_reps: int = 100_000


class _Checker:
    def __init__(self, report: VerifyReport):
        self.report = report

    def le(self, check: str, lhs, rhs, slack=0.0, **inputs) -> bool:
        self.report.cases += 1
        if lhs <= rhs + slack:
            return True
        self.report.failures.append(Failure(check, inputs, lhs, "<=", rhs))
        return False

    def eq(self, check: str, lhs, rhs, tol=0.0, **inputs) -> bool:
        self.report.cases += 1
        if lhs == rhs if tol == 0 else abs(lhs - rhs) <= tol:
            return True
        self.report.failures.append(Failure(check, inputs, lhs, "==", rhs))
        return False

    def true(self, check: str, cond: bool, **inputs) -> bool:
        return self.eq(check, bool(cond), True, **inputs)


# -- hypergeom --------------------------------------------------------------

def _hypergeom(chk: _Checker, rng, caps: SizeCaps) -> None:
    for n in range(2, caps.hyp_exact_n + 1):
        for i in range(1, n):
            for k in range(1, n):
                p = HypergeomParams(n, i, k)
                inp = dict(n=n, i=i, k=k)
                total = sum(hypergeom.pmf(p, m, exact=True) for m in p.support)
                chk.eq("pmf_sums_to_one", total, 1, **inp)
                m0 = p.support.start
                chk.eq("pmf_symmetric_in_i_k", hypergeom.pmf(p, m0, exact=True),
                       hypergeom.pmf(HypergeomParams(n, k, i), m0, exact=True), m=m0, **inp)
                mad = hypergeom.mad_exact(p, exact=True)
                chk.eq("mad_closed_form", mad, hypergeom.mad_direct(p, exact=True), **inp)
                chk.eq("mad_complement", mad, hypergeom.mad_exact(hypergeom.complement(p), exact=True), **inp)
                if (i * k) % n == 0 and i * k // n in p.support:
                    chk.eq("median_equals_integer_mean", hypergeom.median(p), i * k // n, **inp)
    for n in range(2, caps.hyp_table_n + 1):
        t = hypergeom.mad_table(n)
        norm, lb = t["normalized_mad"], t["lower_bound"]
        bad = np.argwhere(norm < lb)
        chk.report.cases += norm.size
        for a, b in bad:
            chk.report.failures.append(Failure("normalized_mad_lower_bound", dict(n=n, i=int(a) + 1, k=int(b) + 1),
                                               float(norm[a, b]), ">=", float(lb[a, b])))
        small = (t["i"] * t["k"]) < n
        kn = t["k"] / n
        bad = np.argwhere(small & (norm < 0.5 * kn))
        chk.report.cases += int(small.sum())
        for a, b in bad:
            chk.report.failures.append(Failure("normalized_mad_small_mean", dict(n=n, i=int(a) + 1, k=int(b) + 1),
                                               float(norm[a, b]), ">=", float(0.5 * kn[a, b])))
        mt = hypergeom.mode_bound_table(n)
        ok = mt["applicable"]
        bad = np.argwhere(ok & (mt["pmf_m"] < mt["bound"]))
        chk.report.cases += int(ok.sum())
        for a, b in bad:
            chk.report.failures.append(Failure("pmf_mode_lower_bound", dict(n=n, i=int(a) + 1, k=int(b) + 1),
                                               float(mt["pmf_m"][a, b]), ">=", float(mt["bound"][a, b])))
    for n in range(1, caps.robbins_n + 1):
        br = hypergeom.robbins_bounds(n)
        lf = math.lgamma(n + 1) if n > 20 else math.log(math.factorial(n))
        chk.true("robbins_brackets_log_factorial", br.lower < lf < br.upper, n=n)


# -- majorization -----------------------------------------------------------

def _majorization(chk: _Checker, rng, caps: SizeCaps) -> None:
    for _ in range(caps.random_pops):
        n = int(rng.integers(2, caps.random_n + 1))
        exact = bool(rng.random() < 0.3)
        alpha = Fraction(int(rng.integers(1, 101)), 10) if exact else float(rng.uniform(0.01, 10.0))
        p = random_population(rng, n, alpha, exact=exact)
        inp = dict(values=p.values)
        cert = majorization.minimal_population(p)
        chk.true("minimal_population_certificate", cert.is_valid(), **inp)
        chk.true("minimal_below_population", majorization.is_majorized_by(cert.minimal_vector, p), **inp)
        chk.true("below_extreme", majorization.is_majorized_by(p, majorization.extreme_population(n, p.alpha)),
                 **inp)
        chk.true("reflexive", majorization.is_majorized_by(p, p), **inp)
        perm = [p.values[j] for j in rng.permutation(n)]
        chk.true("permutation_invariant", majorization.is_majorized_by(perm, p)
                 and majorization.is_majorized_by(p, perm), **inp)
        q = majorization.random_transfer(rng, p)
        if q is not None:
            chk.true("transfer_is_majorized", majorization.is_majorized_by(q, p), **inp)


# -- schur / karlin ---------------------------------------------------------

def _convex_family(scale):
    def hinge(c):
        return lambda x: max(0 * x, x - c * scale)

    def quad(y):
        return lambda x: bounds.quadratic_minorant(y, max(-1.0, min(1.0, float(x) / float(scale))))

    return {
        "square": lambda x: x * x,
        "abs": abs,
        "hinge_-0.5": hinge(Fraction(-1, 2)),
        "hinge_0": hinge(0),
        "hinge_0.5": hinge(Fraction(1, 2)),
        "quadratic_minorant_0.3": quad(0.3),
    }


def _schur(chk: _Checker, rng, caps: SizeCaps) -> None:
    for _ in range(caps.schur_pairs):
        n = int(rng.integers(2, caps.schur_n + 1))
        exact = bool(rng.random() < 0.5)
        p = random_population(rng, n, Fraction(1) if exact else 1.0, exact=exact)
        q, p = majorization.comparable_pair(rng, p)
        scale = p.alpha
        fam = _convex_family(scale)
        for k in range(1, n):
            dq, dp = exactdist.exact_distribution(q, k), exactdist.exact_distribution(p, k)
            inp = dict(lower=q.values, upper=p.values, k=k)
            eq_, ep_ = exactdist.expected_abs(dq), exactdist.expected_abs(dp)
            chk.le("schur_expected_abs", eq_, ep_, 0 if exact else FLOAT_SLACK, **inp)
            for name, g in fam.items():
                gq, gp = dq.expect(g), dp.expect(g)
                slack = 0 if (exact and not name.startswith("quadratic")) else 1e-12
                chk.le(f"karlin_{name}", gq, gp, slack, **inp)


# -- bounds -----------------------------------------------------------------

def _pick_threshold(rng, d, alpha):
    u = rng.random()
    if u < 0.2:
        return 0
    if u < 0.45 and d.support:
        return d.support[int(rng.integers(len(d.support)))]
    if u < 0.55:
        return alpha / 2
    if u < 0.75:
        return float(rng.uniform(0.0, float(bounds.abs_dev_lower_window(d.n, d.k, alpha))))
    return float(rng.uniform(-0.2, 1.1)) * float(alpha)


def _event_tail(d, result, t):
    if result.name == bounds.BoundId.lower_at_zero.value:
        return exactdist.tail_probability(d, 0, strict=True)
    if result.name in (bounds.BoundId.upper_at_zero.value, bounds.BoundId.pokrovskiy.value):
        return exactdist.tail_probability(d, 0)
    return exactdist.tail_probability(d, t)


def _bounds(chk: _Checker, rng, caps: SizeCaps) -> None:
    for _ in range(caps.bounds_cases):
        n = int(rng.integers(2, caps.enum_n + 1))
        k = int(rng.integers(1, n))
        exact = bool(rng.random() < 0.5)
        p = random_population(rng, n, Fraction(int(rng.integers(1, 20)), 4) if exact
                              else float(rng.uniform(0.1, 5.0)), exact=exact)
        d = exactdist.exact_distribution(p, k)
        st = stats(p)
        t = _pick_threshold(rng, d, p.alpha)
        for r in bounds.evaluate_all(n, k, st, float(t)):
            if not r.applicable:
                continue
            tail = float(_event_tail(d, r, t))
            inp = dict(values=p.values, k=k, t=t, bound=r.name)
            if r.kind == "upper":
                chk.le("upper_bound_sound", tail, r.value, FLOAT_SLACK, **inp)
            else:
                chk.le("lower_bound_sound", r.value, tail, FLOAT_SLACK, **inp)
        # extremal witness for the absolute-deviation bound
        alpha = float(p.alpha)
        ext = exactdist.extreme_distribution(n, k, 1.0)
        for frac in (0.1, 0.3, 0.5, 0.7, 0.95):
            r = bounds.abs_dev_upper(n, k, 1.0, frac)
            chk.le("abs_dev_upper_extreme_witness", float(exactdist.tail_probability(ext, frac)), r.value,
                   FLOAT_SLACK, n=n, k=k, t=frac)
            formula = 1 - min(1.0, frac / (1 - frac)) * (1 - 2 * k * (n - k) / (n * (n - 1)))
            chk.eq("abs_dev_upper_formula", r.raw, formula, 1e-15, n=n, k=k, t=frac)
        grid = [alpha * j / 64 for j in range(1, 64)]
        vals = [bounds.abs_dev_upper(n, k, alpha, t).raw for t in grid]
        chk.true("abs_dev_upper_nonincreasing", all(b <= a + 1e-15 for a, b in zip(vals, vals[1:])), n=n, k=k)
        half = [v for t, v in zip(grid, vals) if t >= alpha / 2]
        chk.true("abs_dev_upper_flat_above_half", max(half) - min(half) <= 1e-15, n=n, k=k)
    _minorants(chk, rng, caps)
    for n in range(2, caps.enum_n + 6):
        for k in range(1, n):
            lb = bounds.lower_at_zero(n, k).raw
            for i in range(1, n):
                chk.le("lower_at_zero_below_normalized_mad", lb,
                       hypergeom.normalized_mad(HypergeomParams(n, i, k)), 0.0, n=n, i=i, k=k)


def _minorants(chk: _Checker, rng, caps: SizeCaps) -> None:
    xs = [-1 + j / 100 for j in range(201)]
    for j in range(1, 10):
        y = j / 10
        for x in xs:
            chk.le("linear_minorant_below_indicator", bounds.linear_minorant(y, x), 1.0 if x > -y else 0.0,
                   0.0, y=y, x=x)
            chk.le("quadratic_minorant_below_indicator", bounds.quadratic_minorant(y, x), 1.0 if x >= y else 0.0,
                   1e-15, y=y, x=x)
    for _ in range(100):
        n = int(rng.integers(2, 11))
        k = int(rng.integers(1, n))
        p = random_population(rng, n, 1.0)
        d = exactdist.exact_distribution(p, k).scaled(1.0 / float(p.alpha))
        y = float(rng.uniform(0.01, 0.99))
        lin = d.expect(lambda v: bounds.linear_minorant(y, max(-1.0, min(1.0, v))))
        quad = d.expect(lambda v: bounds.quadratic_minorant(y, max(-1.0, min(1.0, v))))
        inp = dict(values=p.values, k=k, y=y)
        chk.le("linear_minorant_expectation", lin, exactdist.tail_probability(d, -y, strict=True),
               FLOAT_SLACK, **inp)
        chk.le("quadratic_minorant_expectation", quad, exactdist.tail_probability(d, y), FLOAT_SLACK, **inp)
    for n in range(2, 13):
        for i in range(1, n):
            for k in range(1, n):
                d = exactdist.two_block_distribution(n, i, k, 1.0)
                for t in (0.0, 0.1, 0.4):
                    direct = d.expect(lambda v: bounds.quadratic_minorant(t, max(-1.0, min(1.0, v))))
                    ex2 = (n / (i * (n - i))) ** 2 * hypergeom.variance(HypergeomParams(n, i, k))
                    closed = 1 / (2 * (1 - t)) * ex2 - t / (2 * (1 - t))
                    chk.eq("quadratic_minorant_closed_form", direct, closed, 1e-10, n=n, i=i, k=k, t=t)


# -- folklore and exact-distribution identities ----------------------------

def _folklore(chk: _Checker, rng, caps: SizeCaps) -> None:
    fixed = [(1, -1), (1, Fraction(-1, 3), Fraction(-1, 3), Fraction(-1, 3)), (1, 0, 0, -1), (3, -1, -1, -1),
             (2, 2, -1, -3), (5, 0, 0, 0, -5)]
    pops = [Population(v, True) for v in fixed]
    for _ in range(200):
        n = int(rng.integers(2, caps.enum_n + 1))
        pops.append(random_population(rng, n, Fraction(int(rng.integers(1, 9)), 2), exact=True))
    for p in pops:
        for k in range(1, p.n):
            d = exactdist.exact_distribution(p, k)
            inp = dict(values=p.values, k=k)
            chk.eq("probabilities_sum_to_one", sum(d.probabilities), 1, **inp)
            chk.eq("mean_zero", d.mean(), 0, **inp)
            if exactdist.tail_probability(d, 0, strict=True) == 0:
                continue
            ids = exactdist.positive_part_identities(d)
            chk.eq("folklore_residual_zero", ids.folklore_residual, 0, **inp)
            chk.eq("positive_negative_parts_balance", ids.E_plus, ids.E_minus, **inp)
            chk.eq("abs_is_twice_positive_part", ids.E_abs, 2 * ids.E_plus, **inp)
            chk.le("conditional_mean_below_alpha", ids.cond_mean_pos, p.alpha, **inp)
    for n in range(2, caps.enum_n + 1):
        for k in range(1, n):
            for i in range(1, n):
                two = exactdist.two_block_distribution(n, i, k, Fraction(1))
                enum = exactdist.exact_distribution(majorization.two_block_population(n, i, Fraction(1)), k)
                chk.true("two_block_matches_enumeration", exactdist.same_distribution(two, enum), n=n, i=i, k=k)
            ext = exactdist.extreme_distribution(n, k, Fraction(1))
            enum = exactdist.exact_distribution(majorization.extreme_population(n, Fraction(1)), k)
            chk.true("extreme_matches_enumeration", exactdist.same_distribution(ext, enum), n=n, k=k)
    _mc_calibration(chk, rng, caps)


def mc_instances(rng, count: int, max_n: int = 12) -> list:
    out = []
    for _ in range(count):
        n = int(rng.integers(3, max_n + 1))
        k = int(rng.integers(1, n))
        p = random_population(rng, n, 1.0)
        d = exactdist.exact_distribution(p, k)
        t = d.support[int(rng.integers(len(d.support)))] if rng.random() < 0.5 else float(rng.uniform(-0.5, 0.5))
        strict = bool(rng.random() < 0.5)
        out.append((p, k, t, strict, float(exactdist.tail_probability(d, t, strict))))
    return out


def _mc_calibration(chk: _Checker, rng, caps: SizeCaps) -> None:
    misses = []
    insts = mc_instances(rng, caps.mc_instances)
    for j, (p, k, t, strict, exact) in enumerate(insts):
        est = exactdist.mc_tail(p, k, t, strict, caps.mc_reps, seed=1000 + j)
        if abs(est.estimate - exact) > 5 * est.std_error:
            misses.append(dict(values=p.values, k=k, t=t, strict=strict, exact=exact, estimate=est.estimate))
    allowed = len(insts) // 30
    chk.le("mc_calibration_misses", len(misses), allowed, 0, misses=misses)


_RUNNERS: dict[str, Callable] = {
    "hypergeom": _hypergeom,
    "majorization": _majorization,
    "schur": _schur,
    "bounds": _bounds,
    "folklore": _folklore,
}


def run_suite(name: str, seed: int = 0, caps: SizeCaps | None = None) -> VerifyReport:
    """Run one suite (or ``"all"``) with a seeded generator."""
    caps = caps or SizeCaps()
    if name == "all":
        total = VerifyReport("all")
        for sub in SUITES:
            total.merge(run_suite(sub, seed, caps))
        return total
    if name not in _RUNNERS:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")
    report = VerifyReport(name)
    rng = np.random.default_rng([seed, SUITES.index(name)])
    start = time.perf_counter()
    _RUNNERS[name](_Checker(report), rng, caps)
    report.wall_time = time.perf_counter() - start
    return report
