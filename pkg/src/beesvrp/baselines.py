"""Comparison solvers: the textbook bees algorithm paired with chain
interchange, and a standalone destroy/repair hill climb."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .construct import random_seed_insertion
from .instance import Instance
from .model import FitnessWeights, default_weights
from .neighborhood import (
    RelatednessParams,
    destroy_random,
    destroy_shaw,
    lambda_interchange,
    repair,
)
from .solver import SolveResult, _IncumbentState, _draw_destroy_count


@dataclass
class StandardBeesConfig:
    n_bees: int = 25
    elite_count: int = 6
    elite_recruits: int = 3
    non_elite_count: int = 6
    non_elite_recruits: int = 2
    lambda_max: int = 2
    weights: FitnessWeights | None = None
    time_limit: float | None = 60.0
    max_iterations: int | None = None
    seed: int = 0
    route_count: int | None = None

    def validate(self) -> None:
        if self.n_bees < 1:
            raise ValueError("need at least one bee")
        if self.elite_count + self.non_elite_count > self.n_bees:
            raise ValueError("elite + non-elite sites cannot exceed the bee count")
        if not self.elite_recruits >= self.non_elite_recruits >= 1:
            raise ValueError("need elite_recruits >= non_elite_recruits >= 1")


def standard_bees_solve(inst: Instance, config: StandardBeesConfig) -> SolveResult:
    """Plain bees algorithm: rank bee positions by fitness, spend recruits on
    the best sites (each recruit takes one first-improvement interchange step
    from the site's position), re-randomise the rest as scouts."""
    config.validate()
    weights = config.weights if config.weights is not None else default_weights(inst)
    start = time.monotonic()
    deadline = math.inf if config.time_limit is None else start + config.time_limit
    rng = np.random.default_rng(config.seed)
    state = _IncumbentState(inst, weights, start)

    bees = []
    for _ in range(config.n_bees):
        sol = random_seed_insertion(inst, rng, config.route_count, weights)
        f = sol.fitness(weights)
        state.offer(f, sol)
        bees.append((f, sol))

    def improve(entry, recruits):
        f, sol = entry
        best = None
        for _ in range(recruits):
            moved = lambda_interchange(
                sol, config.lambda_max, rng, weights, "first_improvement"
            )
            if moved is None:
                continue
            mf = moved.fitness(weights)
            state.offer(mf, moved)
            if mf < f and (best is None or mf < best[0]):
                best = (mf, moved)
        return best if best is not None else entry

    iteration = 0
    while time.monotonic() < deadline:
        if config.max_iterations is not None and iteration >= config.max_iterations:
            break
        iteration += 1
        bees.sort(key=lambda t: t[0])
        e, ne = config.elite_count, config.non_elite_count
        for k in range(min(e, len(bees))):
            if time.monotonic() >= deadline:
                break
            bees[k] = improve(bees[k], config.elite_recruits)
        for k in range(e, min(e + ne, len(bees))):
            if time.monotonic() >= deadline:
                break
            bees[k] = improve(bees[k], config.non_elite_recruits)
        for k in range(e + ne, len(bees)):
            if time.monotonic() >= deadline:
                break
            sol = random_seed_insertion(inst, rng, config.route_count, weights)
            f = sol.fitness(weights)
            state.offer(f, sol)
            bees[k] = (f, sol)

    return state.result(iterations=iteration)


@dataclass
class LnsConfig:
    destroy_fraction: tuple[float, float, float] = (0.0, 0.4, 0.8)
    destroy_distribution: str = "triangular"
    shaw_probability: float = 0.5
    shaw_params: RelatednessParams = field(default_factory=RelatednessParams)
    weights: FitnessWeights | None = None
    time_limit: float | None = 60.0
    max_iterations: int | None = None
    seed: int = 0
    route_count: int | None = None


def lns_hill_climb_solve(inst: Instance, config: LnsConfig) -> SolveResult:
    """Hill climb over destroy/repair moves with full-extent repair; a move
    is accepted only when it strictly improves fitness."""
    weights = config.weights if config.weights is not None else default_weights(inst)
    start = time.monotonic()
    deadline = math.inf if config.time_limit is None else start + config.time_limit
    rng = np.random.default_rng(config.seed)
    state = _IncumbentState(inst, weights, start)

    current = random_seed_insertion(inst, rng, config.route_count, weights)
    current_f = current.fitness(weights)
    state.offer(current_f, current)

    iteration = 0
    full_extent = inst.n - 1
    while time.monotonic() < deadline:
        if config.max_iterations is not None and iteration >= config.max_iterations:
            break
        iteration += 1
        count = _draw_destroy_count(rng, config, inst.n)
        if rng.random() < config.shaw_probability:
            destroyed = destroy_shaw(current, count, rng, config.shaw_params)
        else:
            destroyed = destroy_random(current, count, rng)
        cand = repair(destroyed.partial, destroyed.removed, full_extent, rng, weights)
        f = cand.fitness(weights)
        state.offer(f, cand)
        if f < current_f:
            current, current_f = cand, f

    return state.result(iterations=iteration)
