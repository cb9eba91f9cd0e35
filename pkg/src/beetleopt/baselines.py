"""Six comparison optimizers sharing the package's population machinery:
particle-swarm (pso), grey-wolf (gwo), sperm-swarm (sso), chernobyl-disaster
(cdo), bermuda-triangle (bto) and gravitational-search (gsa).

Each algorithm keeps its documented per-agent draw order so that seeded runs
are bit-reproducible.  All of them evaluate the objective exactly N times
per iteration.  The gravitational-search internals follow the standard
formulation of that algorithm (only its two tuning constants are shared with
the rest of the suite); the grey-wolf coefficient mechanics likewise use the
standard encircling coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from . import kernels
from .core import (
    Agent,
    Array,
    ConfigurationError,
    ContractViolation,
    EvalCounter,
    Objective,
    Population,
    RandomStream,
    RunConfig,
    SearchSpace,
    bind_objective,
    clamp_to_bounds,
    initialize_population,
    update_best,
)
from .stats import RunRecord

# PSO constants: cognitive/social factors are fixed at 2; the inertia weight
# decays linearly between the defaults below.
PSO_COGNITIVE = 2.0
PSO_SOCIAL = 2.0
PSO_INERTIA_START = 0.9
PSO_INERTIA_END = 0.4

# SSO draw ranges for pH and temperature.
SSO_PH_RANGE = (7.0, 14.0)
SSO_TEMPERATURE_RANGE = (35.1, 38.5)

# CDO particle-speed draw ceilings (gamma, beta, alpha).
CDO_SPEED_GAMMA = 300_000.0
CDO_SPEED_BETA = 270_000.0
CDO_SPEED_ALPHA = 160_000.0

# BTO constants. The force-zone areas are natural logs of the zone extremes;
# the triangle is an equilateral one inscribed in a unit circle and the ring
# is that triangle minus its own inscribed circle (radius 1/2).
BTO_GRAVITATION = 6.67e-11
BTO_AREA_MIN = math.log(500_000.0)
BTO_AREA_MAX = math.log(1_510_000.0)
BTO_TRIANGLE_AREA = 3.0 * math.sqrt(3.0) / 4.0
BTO_RING_AREA = BTO_TRIANGLE_AREA - math.pi / 4.0

# GSA constants: initial gravitational constant and its decay rate.
GSA_G0 = 1.0
GSA_ALPHA = 20.0
_GSA_EPS = 1e-12


def _prepare(config: RunConfig, objective, space: Optional[SearchSpace]):
    """Common run prologue: stream, bound objective, evaluated population."""
    if space is None and hasattr(objective, "space"):
        space = objective.space()
    if space is None:
        raise ConfigurationError("a search space is required for a plain objective")
    rng = RandomStream(config.seed)
    counter = EvalCounter(bind_objective(objective, rng))
    pop = initialize_population(space, config.population, rng)
    for agent in pop.agents:
        agent.fitness = counter(agent.position)
    update_best(pop)
    return space, rng, counter, pop


def _record(algorithm: str, config: RunConfig, trace: Array, counter: EvalCounter) -> RunRecord:
    return RunRecord(
        algorithm=algorithm,
        benchmark=config.benchmark or "custom",
        seed=config.seed,
        trace=trace,
        final_best=float(trace[-1]),
        evaluations=counter.n,
    )


def _consider_best(pop: Population, agent: Agent) -> None:
    if pop.best is None or agent.fitness < pop.best.fitness:
        pop.best = agent.copy()


def _three_leaders(pop: Population) -> List[Agent]:
    ordered = sorted(pop.agents, key=lambda a: a.fitness)
    return [ordered[0].copy(), ordered[1].copy(), ordered[2].copy()]


def _insert_leader(leaders: List[Agent], candidate: Agent) -> None:
    """Shift-insert so the triple stays the three best evaluations seen."""
    if candidate.fitness < leaders[0].fitness:
        leaders[2] = leaders[1]
        leaders[1] = leaders[0]
        leaders[0] = candidate.copy()
    elif candidate.fitness < leaders[1].fitness:
        leaders[2] = leaders[1]
        leaders[1] = candidate.copy()
    elif candidate.fitness < leaders[2].fitness:
        leaders[2] = candidate.copy()


# --- particle swarm ---------------------------------------------------------


@dataclass
class PSOState:
    population: Population
    velocities: List[Array]
    personal_best: List[Agent]
    max_iterations: int
    iteration: int = 0
    bound_mode: str = "clamp"
    inertia_start: float = PSO_INERTIA_START
    inertia_end: float = PSO_INERTIA_END


def pso_velocity(
    velocity: Array,
    position: Array,
    personal_best: Array,
    global_best: Array,
    inertia: float,
    rng: RandomStream,
) -> Array:
    """Inertia plus cognitive and social pulls, one random pair per dimension."""
    r1 = rng.uniform(size=position.size)
    r2 = rng.uniform(size=position.size)
    return (
        inertia * velocity
        + PSO_COGNITIVE * r1 * (personal_best - position)
        + PSO_SOCIAL * r2 * (global_best - position)
    )


def pso_step(state: PSOState, objective: Objective, space: SearchSpace, rng: RandomStream) -> PSOState:
    t = state.iteration + 1
    span = max(state.max_iterations - 1, 1)
    inertia = state.inertia_start - (state.inertia_start - state.inertia_end) * (t - 1) / span
    pop = state.population
    for i, agent in enumerate(pop.agents):
        v = pso_velocity(
            state.velocities[i],
            agent.position,
            state.personal_best[i].position,
            pop.best.position,
            inertia,
            rng,
        )
        state.velocities[i] = v
        moved = Agent(clamp_to_bounds(agent.position + v, space, state.bound_mode))
        moved.fitness = objective(moved.position)
        pop.agents[i] = moved
        if moved.fitness < state.personal_best[i].fitness:
            state.personal_best[i] = moved.copy()
        _consider_best(pop, moved)
    state.iteration = t
    return state


def run_pso(config: RunConfig, objective, space: SearchSpace = None) -> RunRecord:
    space, rng, counter, pop = _prepare(config, objective, space)
    state = PSOState(
        population=pop,
        velocities=[np.zeros(space.dim) for _ in pop.agents],
        personal_best=[a.copy() for a in pop.agents],
        max_iterations=config.iterations,
        bound_mode=config.bound_mode,
    )
    trace = np.empty(config.iterations, dtype=float)
    for t in range(config.iterations):
        pso_step(state, counter, space, rng)
        trace[t] = pop.best.fitness
    return _record("pso", config, trace, counter)


# --- sperm swarm ------------------------------------------------------------


@dataclass
class SSOState:
    population: Population
    velocities: List[Array]
    personal_best: List[Agent]
    max_iterations: int
    iteration: int = 0
    bound_mode: str = "clamp"


def sso_velocity(
    velocity: Array,
    position: Array,
    personal_best: Array,
    global_best: Array,
    rng: RandomStream,
) -> Array:
    """Damped start velocity plus pH/temperature scaled personal and global pulls.

    Draw order: damping, pH1, pH2, temperature1, pH3, temperature2.  The
    drawn values are validated against their documented ranges so a broken
    stream is flagged instead of silently skewing the log factors.
    """
    damping = rng.uniform()
    ph1 = rng.uniform(*SSO_PH_RANGE)
    ph2 = rng.uniform(*SSO_PH_RANGE)
    temp1 = rng.uniform(*SSO_TEMPERATURE_RANGE)
    ph3 = rng.uniform(*SSO_PH_RANGE)
    temp2 = rng.uniform(*SSO_TEMPERATURE_RANGE)
    if not 0.0 <= damping <= 1.0:
        raise ContractViolation(f"damping draw out of [0, 1]: {damping!r}")
    for name, value in (("pH", ph1), ("pH", ph2), ("pH", ph3)):
        if not SSO_PH_RANGE[0] <= value <= SSO_PH_RANGE[1]:
            raise ContractViolation(f"{name} draw out of {SSO_PH_RANGE}: {value!r}")
    for value in (temp1, temp2):
        if not SSO_TEMPERATURE_RANGE[0] <= value <= SSO_TEMPERATURE_RANGE[1]:
            raise ContractViolation(f"temperature draw out of {SSO_TEMPERATURE_RANGE}: {value!r}")
    return (
        damping * velocity * math.log10(ph1)
        + math.log10(ph2) * math.log10(temp1) * (personal_best - position)
        + math.log10(ph3) * math.log10(temp2) * (global_best - position)
    )


def sso_step(state: SSOState, objective: Objective, space: SearchSpace, rng: RandomStream) -> SSOState:
    pop = state.population
    for i, agent in enumerate(pop.agents):
        v = sso_velocity(
            state.velocities[i],
            agent.position,
            state.personal_best[i].position,
            pop.best.position,
            rng,
        )
        state.velocities[i] = v
        moved = Agent(clamp_to_bounds(agent.position + v, space, state.bound_mode))
        moved.fitness = objective(moved.position)
        pop.agents[i] = moved
        if moved.fitness < state.personal_best[i].fitness:
            state.personal_best[i] = moved.copy()
        _consider_best(pop, moved)
    state.iteration += 1
    return state


def run_sso(config: RunConfig, objective, space: SearchSpace = None) -> RunRecord:
    space, rng, counter, pop = _prepare(config, objective, space)
    state = SSOState(
        population=pop,
        velocities=[np.zeros(space.dim) for _ in pop.agents],
        personal_best=[a.copy() for a in pop.agents],
        max_iterations=config.iterations,
        bound_mode=config.bound_mode,
    )
    trace = np.empty(config.iterations, dtype=float)
    for t in range(config.iterations):
        sso_step(state, counter, space, rng)
        trace[t] = pop.best.fitness
    return _record("sso", config, trace, counter)


# --- grey wolf --------------------------------------------------------------


@dataclass
class GWOState:
    population: Population
    leaders: List[Agent]  # alpha, beta, delta: the three best evaluations seen
    max_iterations: int
    iteration: int = 0
    bound_mode: str = "clamp"


def gwo_candidate(
    position: Array,
    alpha: Array,
    beta: Array,
    delta: Array,
    coefficient: float,
    rng: RandomStream,
) -> Array:
    """Mean of the three leader-guided positions under the standard
    encircling coefficients A = 2a*r1 - a and C = 2*r2 (fresh per dimension,
    leaders consumed in alpha/beta/delta order)."""
    guided = []
    for leader in (alpha, beta, delta):
        r1 = rng.uniform(size=position.size)
        r2 = rng.uniform(size=position.size)
        a_coef = 2.0 * coefficient * r1 - coefficient
        c_coef = 2.0 * r2
        guided.append(leader - a_coef * np.abs(c_coef * leader - position))
    return (guided[0] + guided[1] + guided[2]) / 3.0


def gwo_step(state: GWOState, objective: Objective, space: SearchSpace, rng: RandomStream) -> GWOState:
    pop = state.population
    if len(pop) < 3:
        raise ConfigurationError("grey-wolf needs a population of at least 3")
    t = state.iteration + 1
    coefficient = 2.0 - (t - 1) * 2.0 / state.max_iterations
    for i, agent in enumerate(pop.agents):
        x = gwo_candidate(
            agent.position,
            state.leaders[0].position,
            state.leaders[1].position,
            state.leaders[2].position,
            coefficient,
            rng,
        )
        moved = Agent(clamp_to_bounds(x, space, state.bound_mode))
        moved.fitness = objective(moved.position)
        pop.agents[i] = moved
        _insert_leader(state.leaders, moved)
        _consider_best(pop, moved)
    state.iteration = t
    return state


def run_gwo(config: RunConfig, objective, space: SearchSpace = None) -> RunRecord:
    if config.population < 3:
        raise ConfigurationError("grey-wolf needs a population of at least 3")
    space, rng, counter, pop = _prepare(config, objective, space)
    state = GWOState(
        population=pop,
        leaders=_three_leaders(pop),
        max_iterations=config.iterations,
        bound_mode=config.bound_mode,
    )
    trace = np.empty(config.iterations, dtype=float)
    for t in range(config.iterations):
        gwo_step(state, counter, space, rng)
        trace[t] = pop.best.fitness
    return _record("gwo", config, trace, counter)


# --- chernobyl disaster -----------------------------------------------------


@dataclass
class CDOState:
    population: Population
    leaders: List[Agent]  # alpha (best), beta, gamma
    max_iterations: int
    iteration: int = 0
    bound_mode: str = "clamp"


def cdo_walk_speed(iteration: int, max_iterations: int) -> float:
    """Walking speed decaying linearly from 3 to 0 across the run."""
    if max_iterations < 1:
        raise ConfigurationError("max_iterations must be >= 1")
    if not 0 <= iteration <= max_iterations:
        raise ConfigurationError(f"iteration must be in [0, {max_iterations}], got {iteration}")
    return 3.0 - iteration * (3.0 / max_iterations)


def cdo_candidate(
    position: Array,
    alpha: Array,
    beta: Array,
    gamma: Array,
    walk_speed: float,
    rng: RandomStream,
) -> Array:
    """Weighted average of the gamma/beta/alpha descent terms.

    Per dimension: one walker-disk area shared by the three spread factors,
    one propagation area shared by the three distance terms, then per
    particle class a log-speed draw and a walking-speed jitter draw
    (gamma, beta, alpha order).
    """
    dim = position.size
    region = rng.uniform(size=dim) ** 2 * np.pi
    area = rng.uniform(size=dim) ** 2 * np.pi

    speed = np.log(rng.uniform(1.0, CDO_SPEED_GAMMA, size=dim))
    rho_gamma = region / speed - walk_speed * rng.uniform(size=dim)
    delta_gamma = np.abs(area * gamma - position)
    v_gamma = gamma - rho_gamma * delta_gamma

    speed = np.log(rng.uniform(1.0, CDO_SPEED_BETA, size=dim))
    rho_beta = region / (0.5 * speed) - walk_speed * rng.uniform(size=dim)
    delta_beta = np.abs(area * beta - position)
    v_beta = 0.5 * (beta - rho_beta * delta_beta)

    speed = np.log(rng.uniform(1.0, CDO_SPEED_ALPHA, size=dim))
    rho_alpha = region / (0.25 * speed) - walk_speed * rng.uniform(size=dim)
    delta_alpha = np.abs(area * alpha - position)
    v_alpha = 0.25 * (alpha - rho_alpha * delta_alpha)

    return (v_gamma + v_beta + v_alpha) / 3.0


def cdo_step(state: CDOState, objective: Objective, space: SearchSpace, rng: RandomStream) -> CDOState:
    pop = state.population
    t = state.iteration + 1
    walk_speed = cdo_walk_speed(t - 1, state.max_iterations)
    for i, agent in enumerate(pop.agents):
        x = cdo_candidate(
            agent.position,
            state.leaders[0].position,
            state.leaders[1].position,
            state.leaders[2].position,
            walk_speed,
            rng,
        )
        moved = Agent(clamp_to_bounds(x, space, state.bound_mode))
        moved.fitness = objective(moved.position)
        pop.agents[i] = moved
        _insert_leader(state.leaders, moved)
        _consider_best(pop, moved)
    state.iteration = t
    return state


def run_cdo(config: RunConfig, objective, space: SearchSpace = None) -> RunRecord:
    if config.population < 3:
        raise ConfigurationError("chernobyl-disaster needs a population of at least 3")
    space, rng, counter, pop = _prepare(config, objective, space)
    state = CDOState(
        population=pop,
        leaders=_three_leaders(pop),
        max_iterations=config.iterations,
        bound_mode=config.bound_mode,
    )
    trace = np.empty(config.iterations, dtype=float)
    for t in range(config.iterations):
        cdo_step(state, counter, space, rng)
        trace[t] = pop.best.fitness
    return _record("cdo", config, trace, counter)


# --- bermuda triangle -------------------------------------------------------


@dataclass
class BTOState:
    population: Population
    chaos: kernels.ChaosState
    max_iterations: int
    iteration: int = 0
    bound_mode: str = "clamp"
    triangle_area: float = BTO_TRIANGLE_AREA
    ring_area: float = BTO_RING_AREA


def bto_zone(iteration: int, max_iterations: int) -> float:
    """Force-zone coefficient interpolating between the log area extremes."""
    if max_iterations < 1:
        raise ConfigurationError("max_iterations must be >= 1")
    if not 0 <= iteration <= max_iterations:
        raise ConfigurationError(f"iteration must be in [0, {max_iterations}], got {iteration}")
    return BTO_AREA_MIN + iteration * (BTO_AREA_MAX - BTO_AREA_MIN) / max_iterations


def bto_acc(iteration: int, max_iterations: int, rng: RandomStream) -> float:
    """Current acceleration ``r * exp(-20 * iteration / max_iterations)``."""
    if max_iterations < 1:
        raise ConfigurationError("max_iterations must be >= 1")
    return rng.uniform() * math.exp(-20.0 * iteration / max_iterations)


def _bto_force_probability(iteration: int, max_iterations: int, gforce: float) -> float:
    """Probability of force ``1 - (t - 1/G)/(T - 1/G)``, clamped into [0, 1].

    The 1/G pole is sanitized: zero force means no pull at all, so the
    degenerate cases collapse to probability 0.
    """
    if gforce <= 0.0:
        return 0.0
    inverse = 1.0 / gforce
    denominator = max_iterations - inverse
    if denominator == 0.0:
        return 0.0
    raw = 1.0 - (iteration - inverse) / denominator
    if not math.isfinite(raw):
        return 0.0
    return min(1.0, max(0.0, raw))


def bto_step(state: BTOState, objective: Objective, space: SearchSpace, rng: RandomStream) -> BTOState:
    """One sweep of gravity-pulled jumps around the best solution.

    Per agent: advance the chaos map (no draws), then draw the two masses
    and their distance, the acceleration factor and the prescience value.
    Prescience above 0.5 selects the triangle area (strong pull), otherwise
    the surrounding ring area; either way the position is replaced outright
    and only the best-so-far is tracked greedily.
    """
    pop = state.population
    t0 = state.iteration
    zone = bto_zone(t0, state.max_iterations)
    anchor = space.width * zone + space.lower
    for i in range(len(pop)):
        state.chaos = kernels.chaos_next(state.chaos)
        mass_center = rng.uniform()
        mass_pulled = rng.uniform()
        distance = rng.uniform()
        numerator = BTO_GRAVITATION * mass_center * mass_pulled
        gforce = numerator / (distance * distance) if distance > 0.0 else math.inf
        probability = _bto_force_probability(t0, state.max_iterations, gforce)
        acceleration = bto_acc(t0, state.max_iterations, rng)
        prescience = rng.uniform()
        area = state.triangle_area if prescience > 0.5 else state.ring_area
        pulled = state.chaos.value * area * acceleration * pop.best.position - probability
        moved = Agent(clamp_to_bounds(pulled * anchor, space, state.bound_mode))
        moved.fitness = objective(moved.position)
        pop.agents[i] = moved
        _consider_best(pop, moved)
    state.iteration = t0 + 1
    return state


def run_bto(config: RunConfig, objective, space: SearchSpace = None) -> RunRecord:
    space, rng, counter, pop = _prepare(config, objective, space)
    state = BTOState(
        population=pop,
        chaos=kernels.make_chaos(config.chaos_map, rng.uniform()),
        max_iterations=config.iterations,
        bound_mode=config.bound_mode,
    )
    trace = np.empty(config.iterations, dtype=float)
    for t in range(config.iterations):
        bto_step(state, counter, space, rng)
        trace[t] = pop.best.fitness
    return _record("bto", config, trace, counter)


# --- gravitational search ---------------------------------------------------


@dataclass
class GSAState:
    population: Population
    velocities: List[Array]
    max_iterations: int
    iteration: int = 0
    bound_mode: str = "clamp"


def gsa_masses(fitness: Array) -> Array:
    """Normalized masses from fitness; a flat population weighs 1/N each."""
    best_f = float(np.min(fitness))
    worst_f = float(np.max(fitness))
    if best_f == worst_f:
        raw = np.ones_like(fitness)
    else:
        raw = (fitness - worst_f) / (best_f - worst_f)
    return raw / np.sum(raw)


def gsa_gravity(iteration: int, max_iterations: int) -> float:
    """Gravitational constant ``G0 * exp(-alpha * iteration / max_iterations)``."""
    return GSA_G0 * math.exp(-GSA_ALPHA * iteration / max_iterations)


def _gsa_kbest(n: int, iteration: int, max_iterations: int) -> int:
    span = max(max_iterations - 1, 1)
    return max(1, int(round(n - (n - 1) * iteration / span)))


def gsa_step(state: GSAState, objective: Objective, space: SearchSpace, rng: RandomStream) -> GSAState:
    """Synchronous force/velocity/position sweep.

    Forces come from the k best agents of the iteration-start snapshot
    (k shrinking linearly from N to 1), with one random vector per attracting
    pair; then each agent draws one damping vector for its velocity update.
    """
    pop = state.population
    n = len(pop)
    t0 = state.iteration
    gravity = gsa_gravity(t0, state.max_iterations)
    fitness = pop.fitness_values()
    masses = gsa_masses(fitness)
    kbest = _gsa_kbest(n, t0, state.max_iterations)
    attractors = np.argsort(fitness, kind="stable")[:kbest]
    positions = pop.positions()

    accelerations = np.zeros((n, space.dim))
    for i in range(n):
        for j in attractors:
            if j == i:
                continue
            pull = rng.uniform(size=space.dim)
            offset = positions[j] - positions[i]
            distance = float(np.linalg.norm(offset))
            accelerations[i] += pull * gravity * masses[j] * offset / (distance + _GSA_EPS)

    for i in range(n):
        damping = rng.uniform(size=space.dim)
        velocity = damping * state.velocities[i] + accelerations[i]
        state.velocities[i] = velocity
        moved = Agent(clamp_to_bounds(positions[i] + velocity, space, state.bound_mode))
        moved.fitness = objective(moved.position)
        pop.agents[i] = moved
        _consider_best(pop, moved)
    state.iteration = t0 + 1
    return state


def run_gsa(config: RunConfig, objective, space: SearchSpace = None) -> RunRecord:
    space, rng, counter, pop = _prepare(config, objective, space)
    state = GSAState(
        population=pop,
        velocities=[np.zeros(space.dim) for _ in pop.agents],
        max_iterations=config.iterations,
        bound_mode=config.bound_mode,
    )
    trace = np.empty(config.iterations, dtype=float)
    for t in range(config.iterations):
        gsa_step(state, counter, space, rng)
        trace[t] = pop.best.fitness
    return _record("gsa", config, trace, counter)
