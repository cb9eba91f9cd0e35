"""beetleopt: a bombardier-beetle defense/escape optimizer, six baseline
metaheuristics and a reproducible benchmark harness over the 23 classic
test functions."""

from .baselines import run_bto, run_cdo, run_gsa, run_gwo, run_pso, run_sso
from .bbo import bbo_run
from .benchmarks import BENCHMARKS, BenchmarkSpec, known_optimum
from .core import (
    Agent,
    ConfigurationError,
    ContractViolation,
    Population,
    RandomStream,
    RunConfig,
    SearchSpace,
)
from .harness import ALGORITHMS, ExperimentPlan, parse_config, run_and_emit, run_experiment
from .stats import RunRecord, SummaryRow

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "Agent",
    "BENCHMARKS",
    "BenchmarkSpec",
    "ConfigurationError",
    "ContractViolation",
    "ExperimentPlan",
    "Population",
    "RandomStream",
    "RunConfig",
    "RunRecord",
    "SearchSpace",
    "SummaryRow",
    "bbo_run",
    "known_optimum",
    "parse_config",
    "run_and_emit",
    "run_bto",
    "run_cdo",
    "run_experiment",
    "run_gsa",
    "run_gwo",
    "run_pso",
    "run_sso",
    "__version__",
]
