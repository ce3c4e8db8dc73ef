"""Exact distributions and tail bounds for sums of samples drawn without replacement."""

from .bounds import BoundId, evaluate_all
from .errors import SworError
from .exactdist import DiscreteDistribution, exact_distribution, mc_tail, tail_probability
from .hypergeom import HypergeomParams
from .population import Population, center, load_population, parse_population, stats
from .result import BoundResult

__all__ = [
    "BoundId",
    "BoundResult",
    "DiscreteDistribution",
    "HypergeomParams",
    "Population",
    "SworError",
    "center",
    "evaluate_all",
    "exact_distribution",
    "load_population",
    "mc_tail",
    "parse_population",
    "stats",
    "tail_probability",
]
