"""Population machinery shared by every optimizer in the package.

A run owns a :class:`SearchSpace`, a :class:`Population` of agents and a
single seeded :class:`RandomStream`.  Optimizers consume the stream in a
fixed, documented order (agent-major, dimension-minor), which is what makes
two runs with the same :class:`RunConfig` reproduce each other bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

Array = np.ndarray
Objective = Callable[[Array], float]

#: Experiment defaults shared by all algorithms.
DEFAULT_POPULATION = 30
DEFAULT_ITERATIONS = 1000

BOUND_MODES = ("clamp", "reflect")
PREDATOR_MODES = ("global-best", "random-agent")


class ConfigurationError(ValueError):
    """Invalid run or experiment configuration."""


class ContractViolation(RuntimeError):
    """An internal precondition was broken by the caller."""


class RandomStream:
    """Seeded uniform random source backing a single run.

    Every draw derives from one primitive (``Generator.random``), scaled
    affinely for bounded ranges, so the consumption order is the full
    determinism contract: same seed, same sequence of calls, same numbers.
    """

    def __init__(self, seed: int):
        self.seed = int(seed)
        self._gen = np.random.default_rng(self.seed)

    def uniform(self, low: float = 0.0, high: float = 1.0, size=None):
        """Uniform draw(s) in ``[low, high)``."""
        u = self._gen.random(size)
        return low + (high - low) * u

    def sign(self, size=None):
        """Random sign(s): +1.0 where the underlying uniform is < 0.5, else -1.0."""
        u = self._gen.random(size)
        if size is None:
            return 1.0 if u < 0.5 else -1.0
        return np.where(u < 0.5, 1.0, -1.0)

    def index(self, n: int) -> int:
        """Uniform integer in ``[0, n)`` from a single [0, 1) draw."""
        if n <= 0:
            raise ConfigurationError("index() needs n >= 1")
        return min(int(self._gen.random() * n), n - 1)


@dataclass(frozen=True)
class SearchSpace:
    """Box-constrained search domain: per-dimension lower/upper bounds."""

    dim: int
    lower: Array
    upper: Array

    def __post_init__(self):
        lower = np.asarray(self.lower, dtype=float)
        upper = np.asarray(self.upper, dtype=float)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)
        if self.dim < 1:
            raise ConfigurationError("search space needs dim >= 1")
        if lower.shape != (self.dim,) or upper.shape != (self.dim,):
            raise ConfigurationError("bounds must have exactly dim entries")
        if not np.all(lower < upper):
            raise ConfigurationError("every lower bound must be < its upper bound")

    @classmethod
    def cube(cls, dim: int, lower: float, upper: float) -> "SearchSpace":
        """Uniform bounds across all dimensions."""
        return cls(dim, np.full(dim, float(lower)), np.full(dim, float(upper)))

    @property
    def width(self) -> Array:
        return self.upper - self.lower

    def contains(self, position: Array) -> bool:
        return bool(np.all(position >= self.lower) and np.all(position <= self.upper))


@dataclass
class Agent:
    """One candidate solution: a position and its cached objective value.

    ``fitness is None`` marks a position that has not been evaluated (or was
    just mutated); every evaluation sets it exactly once.
    """

    position: Array
    fitness: Optional[float] = None

    @property
    def evaluated(self) -> bool:
        return self.fitness is not None

    def copy(self) -> "Agent":
        return Agent(self.position.copy(), self.fitness)


@dataclass
class Population:
    """Fixed-size set of agents plus the best solution seen so far."""

    agents: list
    best: Optional[Agent] = None

    def __len__(self) -> int:
        return len(self.agents)

    def positions(self) -> Array:
        return np.stack([a.position for a in self.agents])

    def fitness_values(self) -> Array:
        return np.array([a.fitness for a in self.agents], dtype=float)


@dataclass
class RunConfig:
    """Everything needed to reproduce one optimizer run."""

    algorithm: str
    benchmark: Optional[str] = None
    population: int = DEFAULT_POPULATION
    iterations: int = DEFAULT_ITERATIONS
    seed: int = 1
    chaos_map: str = "tent"
    predator_mode: str = "global-best"
    bound_mode: str = "clamp"

    def __post_init__(self):
        if self.population < 2:
            raise ConfigurationError("population must be >= 2")
        if self.iterations < 1:
            raise ConfigurationError("iterations must be >= 1")
        if self.bound_mode not in BOUND_MODES:
            raise ConfigurationError(f"unknown bound mode {self.bound_mode!r}")
        if self.predator_mode not in PREDATOR_MODES:
            raise ConfigurationError(f"unknown predator mode {self.predator_mode!r}")


def initialize_population(space: SearchSpace, n: int, rng: RandomStream) -> Population:
    """Draw ``n`` agents uniformly inside the box.

    Each component is ``lower + u * (upper - lower)`` with an independent
    uniform ``u``; agents consume the stream in index order, dimensions
    within an agent in ascending order.  Fitness starts unset.
    """
    if n < 1:
        raise ConfigurationError("population size must be >= 1")
    agents = []
    for _ in range(n):
        u = rng.uniform(size=space.dim)
        agents.append(Agent(space.lower + u * space.width))
    return Population(agents=agents, best=None)


def clamp_to_bounds(position: Array, space: SearchSpace, mode: str = "clamp") -> Array:
    """Force a position back into the box.

    ``clamp`` saturates at the violated bound; ``reflect`` mirrors the
    overshoot once and then saturates whatever still lies outside.
    """
    x = np.asarray(position, dtype=float)
    if x.shape != (space.dim,):
        raise ValueError(f"position has shape {x.shape}, expected ({space.dim},)")
    if mode == "clamp":
        return np.clip(x, space.lower, space.upper)
    if mode == "reflect":
        mirrored = np.where(x > space.upper, space.upper - (x - space.upper), x)
        mirrored = np.where(x < space.lower, space.lower + (space.lower - x), mirrored)
        return np.clip(mirrored, space.lower, space.upper)
    raise ConfigurationError(f"unknown bound mode {mode!r}")


def greedy_replace(old: Agent, candidate: Agent) -> Agent:
    """Keep the candidate only if it strictly improves fitness.

    Ties keep the old agent.  Candidates with non-finite fitness (NaN/inf
    from degenerate updates) are rejected outright.
    """
    if not old.evaluated or not candidate.evaluated:
        raise ContractViolation("greedy_replace needs both agents evaluated")
    if not math.isfinite(candidate.fitness):
        return old
    return candidate if candidate.fitness < old.fitness else old


def update_best(pop: Population) -> Population:
    """Refresh the best-so-far agent; it never worsens."""
    if not pop.agents:
        raise ConfigurationError("cannot track the best of an empty population")
    for agent in pop.agents:
        if not agent.evaluated:
            raise ContractViolation("update_best needs every agent evaluated")
    leader = min(pop.agents, key=lambda a: a.fitness)
    if pop.best is None or leader.fitness < pop.best.fitness:
        pop.best = leader.copy()
    return pop


def bind_objective(objective, rng: RandomStream) -> Objective:
    """Turn a benchmark spec or a plain callable into ``f(x) -> float``.

    Benchmark specs evaluate against the run's own stream so that noisy
    objectives stay deterministic per seed.
    """
    if hasattr(objective, "evaluate"):
        return lambda x: objective.evaluate(x, rng)
    return objective


class EvalCounter:
    """Wrap an objective to count evaluations."""

    def __init__(self, func: Objective):
        self.func = func
        self.n = 0

    def __call__(self, x: Array) -> float:
        self.n += 1
        return float(self.func(x))
