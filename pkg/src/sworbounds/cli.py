"""Command-line entry point: ``sworbounds {eval,compare,dist,sample,verify}``.

Exit codes: 0 success, 1 property failure (verify), 2 usage or input
error, 3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter
from fractions import Fraction
from pathlib import Path

from . import bounds, compare, exactdist, verify
from .errors import SworError, TooLarge
from .population import Population, load_population, stats

EXIT_OK, EXIT_FAILURE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
SHOW_PER_CHECK = 5


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _number(text: str) -> str:
    # validated here, converted later once the population's mode is known
    try:
        Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    return text


def _eps_list(text: str) -> list[float]:
    try:
        out = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad eps list: {text!r}") from None
    if not out or any(not e > 0 for e in out):
        raise argparse.ArgumentTypeError("eps values must be positive")
    return out


def _cap(text: str) -> tuple[str, int]:
    name, _, value = text.partition("=")
    if name not in verify.SizeCaps.__dataclass_fields__ or not value:
        raise argparse.ArgumentTypeError(
            f"expected NAME=INT with NAME in {', '.join(verify.SizeCaps.__dataclass_fields__)}")
    return name, int(value)


def _add_population_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("population", help="population file: one value per line, or a JSON array")
    p.add_argument("--k", type=_positive_int, required=True, help="sample size")
    p.add_argument("--rational", action="store_true", help="read every entry as an exact rational")
    p.add_argument("--center", action="store_true", help="subtract the mean before use")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sworbounds", description="Tail bounds for sums sampled without replacement.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ev = sub.add_parser("eval", help="evaluate every bound on a population and compare with the true tail")
    _add_population_args(ev)
    ev.add_argument("--t", type=_number, required=True, help="threshold on the sample sum")
    ev.add_argument("--delta", type=float, default=bounds.DEFAULT_DELTA)
    ev.add_argument("--reps", type=_positive_int, default=100_000, help="Monte Carlo reps when enumeration is too large")
    ev.add_argument("--seed", type=int, default=0)

    cp = sub.add_parser("compare", help="absolute-deviation bound against the Bardenet-Maillard bounds")
    cp.add_argument("--n", type=int, default=100)
    cp.add_argument("--alpha", type=float, default=1.0)
    cp.add_argument("--eps", type=_eps_list, default=list(compare.DEFAULT_EPS), help="comma-separated list")
    cp.add_argument("--delta", type=float, default=bounds.DEFAULT_DELTA)
    cp.add_argument("--out", help="CSV path (default: stdout)")
    cp.add_argument("--svg", help="SVG base path; one file per eps, suffixed _eps<value>")

    ds = sub.add_parser("dist", help="exact distribution of the sample sum as CSV")
    _add_population_args(ds)
    ds.add_argument("--out", help="CSV path (default: stdout)")

    sm = sub.add_parser("sample", help="Monte Carlo estimate of a tail probability")
    _add_population_args(sm)
    sm.add_argument("--t", type=_number, required=True)
    sm.add_argument("--reps", type=int, default=100_000)
    sm.add_argument("--seed", type=int, default=0)
    sm.add_argument("--shards", type=_positive_int, default=1, help="independent seeded streams")
    sm.add_argument("--strict", action="store_true", help="estimate P(X > t) instead of P(X >= t)")

    vf = sub.add_parser("verify", help="run a property suite against exact ground truth")
    vf.add_argument("--suite", choices=verify.SUITES + ("all",), default="all")
    vf.add_argument("--seed", type=int, default=0)
    vf.add_argument("--cap", type=_cap, action="append", default=[], metavar="NAME=INT",
                    help="override a size cap, e.g. hyp_table_n=100")
    return parser


def _population(args) -> Population:
    return load_population(args.population, rational=args.rational, centered=args.center)


def _threshold(text: str, p: Population):
    return Fraction(text) if p.exact else float(text)


def _fmt(x) -> str:
    if x != x:  # nan
        return "-"
    return f"{float(x):.6f}"


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_eval(args) -> int:
    p = _population(args)
    if not 1 <= args.k <= p.n - 1:
        raise SworError(f"need 1 <= k <= n-1; got n={p.n}, k={args.k}")
    t = _threshold(args.t, p)
    results = bounds.evaluate_all(p.n, args.k, stats(p), float(t), args.delta)
    print(f"n={p.n} k={args.k} t={t} alpha={p.alpha} mode={'exact' if p.exact else 'float'}")
    print(f"{'bound':<15}{'kind':<7}{'value':>10}{'raw':>12}  status")
    for r in results:
        status = "applicable" if r.applicable else f"inapplicable ({r.reason})"
        print(f"{r.name:<15}{r.kind:<7}{_fmt(r.value):>10}{_fmt(r.raw):>12}  {status}")
    if exactdist.is_enumerable(p.n, args.k):
        d = exactdist.exact_distribution(p, args.k)
        ge, gt = exactdist.tail_probability(d, t), exactdist.tail_probability(d, t, strict=True)
        print(f"exact P(X >= t) = {_fmt(ge)}  ({ge})")
        print(f"exact P(X > t)  = {_fmt(gt)}  ({gt})")
    else:
        for strict, label in ((False, ">="), (True, "> ")):
            est = exactdist.mc_tail(p, args.k, t, strict, args.reps, args.seed)
            print(f"mc P(X {label} t) = {_fmt(est.estimate)} +- {est.std_error:.6f} "
                  f"(reps={est.reps}, seed={est.seed})")
    return EXIT_OK


def cmd_compare(args) -> int:
    if args.n < 3:
        raise SworError("compare needs n >= 3")
    if not args.alpha > 0:
        raise SworError("alpha must be positive")
    if not 0 < args.delta <= 1:
        raise SworError("delta must lie in (0, 1]")
    rows = compare.compare_rows(args.n, args.alpha, args.eps, args.delta)
    _write(compare.rows_to_csv(rows, args.n, args.alpha, args.delta), args.out)
    if args.svg:
        for eps in args.eps:
            compare.svg_path_for(args.svg, eps).write_text(compare.rows_to_svg(rows, eps, args.n))
    return EXIT_OK


def _dist_csv(d: exactdist.DiscreteDistribution) -> str:
    lines = [f"# denominator=C({d.n},{d.k})={d.denominator}", "value,count,probability"]
    for v, c in zip(d.support, d.counts):
        value = str(v) if d.exact else repr(float(v))
        lines.append(f"{value},{c},{c / d.denominator!r}")
    return "\n".join(lines) + "\n"


def cmd_dist(args) -> int:
    p = _population(args)
    try:
        d = exactdist.exact_distribution(p, args.k)
    except TooLarge as exc:
        raise TooLarge(f"{exc}; use `sworbounds sample` for a Monte Carlo estimate") from None
    _write(_dist_csv(d), args.out)
    return EXIT_OK


def cmd_sample(args) -> int:
    if args.reps < 1:
        raise SworError(f"--reps must be >= 1, got {args.reps}")
    p = _population(args)
    t = _threshold(args.t, p)
    est = exactdist.mc_tail(p, args.k, t, args.strict, args.reps, args.seed, args.shards)
    event = "P(X > t)" if args.strict else "P(X >= t)"
    print(f"n={p.n} k={args.k} t={t} event={event}")
    print(f"estimate={est.estimate!r}")
    print(f"std_error={est.std_error!r}")
    print(f"reps={est.reps} seed={est.seed} shards={est.shards}")
    return EXIT_OK


def cmd_verify(args) -> int:
    caps = verify.SizeCaps(**dict(args.cap))
    report = verify.run_suite(args.suite, args.seed, caps)
    print(f"suite={report.suite} seed={args.seed} cases={report.cases} "
          f"failures={len(report.failures)} wall_time={report.wall_time:.1f}s")
    by_check = Counter(f.check for f in report.failures)
    shown = Counter()
    for f in report.failures:
        if shown[f.check] < SHOW_PER_CHECK:
            print(f"FAIL {f}")
            shown[f.check] += 1
    for check, count in sorted(by_check.items()):
        print(f"check {check}: {count} failure(s)")
    return EXIT_OK if report.ok else EXIT_FAILURE


_COMMANDS = {"eval": cmd_eval, "compare": cmd_compare, "dist": cmd_dist, "sample": cmd_sample,
             "verify": cmd_verify}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (SworError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
