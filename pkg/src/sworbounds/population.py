"""Zero-sum populations and their summary statistics.

A population is an immutable tuple of reals summing to zero. Two numeric
modes are supported: exact mode holds :class:`fractions.Fraction` entries and
checks the zero-sum condition exactly; float mode holds Python floats and
checks it up to a relative tolerance.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from pathlib import Path
from typing import Iterable, Sequence, Union

from .errors import DegeneratePopulation, SworError, TooShort, ZeroSumViolation

Number = Union[float, Fraction]

ZERO_TOLERANCE = 1e-12


def _is_rational(v) -> bool:
    return isinstance(v, Rational) and not isinstance(v, bool)


def _coerce(values: Iterable, exact: bool | None) -> tuple[tuple, bool]:
    values = tuple(values)
    if exact is None:
        exact = bool(values) and all(_is_rational(v) for v in values)
    if exact:
        out = tuple(Fraction(v) for v in values)
    else:
        out = tuple(float(v) for v in values)
        if not all(math.isfinite(v) for v in out):
            raise SworError("population entries must be finite")
    return out, exact


@dataclass(frozen=True)
class Population:
    """Validated zero-sum population.

    ``exact`` is inferred when not given: all-rational input (ints or
    Fractions) selects exact mode, anything else float mode.
    """

    values: tuple
    exact: bool | None = None
    total: Number = field(init=False)
    abs_sum: Number = field(init=False)

    def __post_init__(self):
        values, exact = _coerce(self.values, self.exact)
        if len(values) < 2:
            raise TooShort(f"population needs n >= 2 entries, got {len(values)}")
        if exact:
            total = sum(values, Fraction(0))
            abs_sum = sum((abs(v) for v in values), Fraction(0))
            ok = total == 0
        else:
            total = math.fsum(values)
            abs_sum = math.fsum(abs(v) for v in values)
            ok = abs(total) <= ZERO_TOLERANCE * max(1.0, abs_sum)
        if not ok:
            raise ZeroSumViolation(f"population sums to {total}, not 0")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "exact", exact)
        object.__setattr__(self, "total", total)
        object.__setattr__(self, "abs_sum", abs_sum)

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def alpha(self) -> Number:
        """Half the absolute sum; the positive and negative parts each sum to it."""
        return self.abs_sum / 2

    def require_nondegenerate(self) -> None:
        if self.abs_sum == 0:
            raise DegeneratePopulation("population is identically zero (alpha = 0)")

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]


@dataclass(frozen=True)
class PopulationStats:
    a: Number
    b: Number
    sigma2: Number
    alpha: Number


def make_population(values: Iterable, exact: bool | None = None) -> Population:
    return Population(tuple(values), exact)


def center(values: Sequence, exact: bool | None = None) -> Population:
    """Shift ``values`` by minus their mean so that they sum to zero."""
    vals, exact = _coerce(values, exact)
    if len(vals) < 2:
        raise TooShort(f"population needs n >= 2 entries, got {len(vals)}")
    if exact:
        mean = sum(vals, Fraction(0)) / len(vals)
    else:
        mean = math.fsum(vals) / len(vals)
    return Population(tuple(v - mean for v in vals), exact)


def stats(p: Population) -> PopulationStats:
    if p.exact:
        sigma2 = sum((v * v for v in p.values), Fraction(0)) / p.n
    else:
        sigma2 = math.fsum(v * v for v in p.values) / p.n
    return PopulationStats(a=min(p.values), b=max(p.values), sigma2=sigma2, alpha=p.alpha)


def negate(p: Population) -> Population:
    return Population(tuple(-v for v in p.values), p.exact)


def _parse_entries(text: str) -> list[str]:
    stripped = text.strip()
    if stripped.startswith("["):
        raw = json.loads(stripped, parse_float=str, parse_int=str)
        if not isinstance(raw, list):
            raise SworError("JSON population must be an array")
        out = []
        for item in raw:
            if not isinstance(item, str):
                raise SworError(f"unsupported JSON population entry: {item!r}")
            out.append(item.strip())
        return out
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def parse_population(text: str, rational: bool = False, centered: bool = False) -> Population:
    """Parse population text: one value per line, or a JSON array.

    Entries are decimals or ``p/q`` rationals. A single ``p/q`` entry (or
    ``rational=True``) switches the whole population to exact mode, in which
    decimals are read exactly (``"0.1"`` becomes ``1/10``). With
    ``centered=True`` the mean is subtracted first, so any list of numbers is
    accepted.
    """
    entries = _parse_entries(text)
    exact = rational or any("/" in e for e in entries)
    try:
        if exact:
            values = [Fraction(e) for e in entries]
        else:
            values = [float(e) for e in entries]
    except (ValueError, ZeroDivisionError) as exc:
        raise SworError(f"could not parse population entry: {exc}") from exc
    if centered:
        return center(values, exact)
    return Population(tuple(values), exact)


def load_population(path: str | Path, rational: bool = False, centered: bool = False) -> Population:
    return parse_population(Path(path).read_text(), rational=rational, centered=centered)


def random_population(rng, n: int, alpha=1.0, exact: bool = False) -> Population:
    """Draw a random member of the zero-sum set with absolute sum ``2*alpha``.

    ``rng`` is a :class:`numpy.random.Generator`. Draws mix continuous and
    small-integer entries so ties and exact zeros show up regularly. In exact
    mode entries are small integers rescaled to Fractions.
    """
    if n < 2:
        raise TooShort(f"population needs n >= 2 entries, got {n}")
    while True:
        if exact or rng.random() < 0.4:
            raw = [int(v) for v in rng.integers(-4, 5, size=n)]
        else:
            raw = [float(v) for v in rng.standard_normal(n)]
            if rng.random() < 0.3:
                raw[0] = max(raw) * 5.0
        pop = center(raw, exact=exact)
        if pop.abs_sum != 0:
            break
    if exact:
        scale = Fraction(alpha) / pop.alpha
    else:
        scale = float(alpha) / float(pop.alpha)
    return Population(tuple(v * scale for v in pop.values), exact)
