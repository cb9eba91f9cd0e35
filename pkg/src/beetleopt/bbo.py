"""The bombardier-beetle optimizer: each iteration runs a defense phase
(spray the predator, exploration) and an escape phase (fly away,
exploitation) over every agent, both gated by greedy replacement.

Draw order per agent, fixed for reproducibility: circle radii and center
distance (3 draws), chemical-reaction factors (2 draws), predator index
(1 draw, random-agent mode only), defense evaluation, lift parameters
(4 draws), one sign per dimension, escape evaluation.  The chaos state
advances once per agent and consumes no draws.
"""

from __future__ import annotations

from dataclasses import dataclass

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
    greedy_replace,
    initialize_population,
    update_best,
)
from .stats import RunRecord

#: Boiling-point factor of the toxic spray's hot water vapor.
HOT_WATER_VAPOR = 100.0


def chemical_reaction(rng: RandomStream) -> float:
    """Reaction intensity: 100 * oxygen * p-benzoquinone, fresh draws each call.

    The product rule means a missing component annuls the reaction.
    """
    oxygen = rng.uniform()
    benzoquinone = rng.uniform()
    return HOT_WATER_VAPOR * oxygen * benzoquinone


def defense_update(
    position: Array,
    predator_position: Array,
    intersection_area: float,
    reaction: float,
    spray_value: float,
) -> Array:
    """Raw defense proposal ``(x + predator * area * reaction * x) / spray``.

    Bound handling happens at the call site, before any evaluation.
    """
    if spray_value < kernels.SPRAY_FLOOR:
        raise ContractViolation(f"spray value below floor: {spray_value!r}")
    if intersection_area < 0.0:
        raise ValueError("intersection area must be >= 0")
    return (position + predator_position * intersection_area * reaction * position) / spray_value


@dataclass
class BBOState:
    """Evolving run state: the population, the chaos trajectory and the
    iteration counter (number of completed iterations)."""

    population: Population
    chaos: kernels.ChaosState
    max_iterations: int
    iteration: int = 0
    predator_mode: str = "global-best"
    bound_mode: str = "clamp"


def _consider_best(pop: Population, agent: Agent) -> None:
    if pop.best is None or agent.fitness < pop.best.fitness:
        pop.best = agent.copy()


def bbo_iteration(
    state: BBOState, objective: Objective, space: SearchSpace, rng: RandomStream
) -> BBOState:
    """Advance the optimizer one iteration (two proposals per agent).

    Agents update sequentially in index order; the global-best predator is
    the live best-so-far, refreshed as soon as a replacement is accepted.
    Every proposal is bound-handled before it is evaluated.
    """
    t = state.iteration + 1
    if t > state.max_iterations:
        raise ConfigurationError("run already finished")
    pop = state.population
    n = len(pop)

    for i in range(n):
        agent = pop.agents[i]

        # Defense: spray scaled by the threat-circle overlap and reaction.
        pair = kernels.CirclePair(rng.uniform(), rng.uniform(), rng.uniform())
        area = kernels.circle_intersection_area(pair)
        reaction = chemical_reaction(rng)
        state.chaos = kernels.chaos_next(state.chaos)
        spray_value = kernels.spray(state.chaos.value, t, state.max_iterations)
        if state.predator_mode == "global-best":
            predator = pop.best.position
        else:
            predator = pop.agents[rng.index(n)].position
        proposal = defense_update(agent.position, predator, area, reaction, spray_value)
        candidate = Agent(clamp_to_bounds(proposal, space, state.bound_mode))
        candidate.fitness = objective(candidate.position)
        agent = greedy_replace(agent, candidate)
        pop.agents[i] = agent
        _consider_best(pop, agent)

        # Escape: signed per-dimension hop whose size decays with time.
        params = kernels.LiftParams(rng.uniform(), rng.uniform(), rng.uniform(), rng.uniform())
        hop = kernels.escape_step(kernels.lift(params), space, t)
        signs = rng.sign(size=space.dim)
        candidate = Agent(clamp_to_bounds(agent.position + hop * signs, space, state.bound_mode))
        candidate.fitness = objective(candidate.position)
        agent = greedy_replace(agent, candidate)
        pop.agents[i] = agent
        _consider_best(pop, agent)

    state.iteration = t
    return state


def bbo_run(config: RunConfig, objective, space: SearchSpace = None) -> RunRecord:
    """Full seeded run: initialize, iterate, record the best-so-far trace.

    ``objective`` is either a plain callable or a benchmark spec (which also
    supplies the space).  Exactly ``2 * N`` evaluations happen per iteration
    on top of the ``N`` initial ones.  The chaos trajectory is seeded with
    one uniform draw taken right after the initial evaluations.
    """
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

    state = BBOState(
        population=pop,
        chaos=kernels.make_chaos(config.chaos_map, rng.uniform()),
        max_iterations=config.iterations,
        predator_mode=config.predator_mode,
        bound_mode=config.bound_mode,
    )

    trace = np.empty(config.iterations, dtype=float)
    for t in range(config.iterations):
        bbo_iteration(state, counter, space, rng)
        trace[t] = pop.best.fitness

    return RunRecord(
        algorithm="bbo",
        benchmark=config.benchmark or "custom",
        seed=config.seed,
        trace=trace,
        final_best=float(trace[-1]),
        evaluations=counter.n,
    )
