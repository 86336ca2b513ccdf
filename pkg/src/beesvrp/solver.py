"""Enhanced bees search engine: a pool of sites, each holding a short memory
of its best positions, explored by destroy/repair moves whose reach widens as
the site stagnates. A run-global position registry keeps any two bees from
settling on the same fitness value, and the worst sites are culled on a
fixed schedule until a floor is reached.
"""

from __future__ import annotations

import math
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .construct import random_seed_insertion
from .instance import Instance
from .model import FitnessWeights, Solution, default_weights
from .neighborhood import (
    RelatednessParams,
    destroy_random,
    destroy_shaw,
    extent,
    repair,
)

REGISTRY_GRID = 1e-6


class PositionRegistry:
    """Run-global set of occupied positions, keyed by quantised fitness.

    Test-and-insert is atomic, so parallel site workers can share one
    registry. Keys are never removed within a run.
    """

    def __init__(self, grid: float = REGISTRY_GRID):
        self.grid = grid
        self._keys: set[int] = set()
        self._lock = threading.Lock()

    def try_occupy(self, fitness: float) -> bool:
        if not math.isfinite(fitness):
            raise ValueError(f"fitness must be finite, got {fitness}")
        key = round(fitness / self.grid)
        with self._lock:
            if key in self._keys:
                return False
            self._keys.add(key)
            return True

    def __len__(self):
        return len(self._keys)


@dataclass
class SolverConfig:
    """All engine parameters. `fast_profile` and `best_profile` build the two
    standard configurations; every field can be overridden afterwards."""

    initial_sites: int = 25
    cull_period: int = 1  # iterations between cull ticks
    cull_fraction: float = 0.01  # share of sites removed per tick (>= 1 site)
    min_sites: int = 1
    memory_size: int = 5  # best positions a site keeps as launch points
    bees_per_position: int = 2  # candidate moves per memory position
    destroy_fraction: tuple[float, float, float] = (0.0, 0.4, 0.8)  # min, mean, max of n
    destroy_distribution: str = "triangular"  # or "uniform" over (min, max)
    shaw_probability: float = 0.5  # chance a move destroys by relatedness
    shaw_params: RelatednessParams = field(default_factory=RelatednessParams)
    extent_rate: float = 10.0  # stale iterations until repair scans the full list
    max_extent_fraction: float = 1.0  # cap on the scanned share of the list
    weights: FitnessWeights | None = None  # None: scaled to the instance
    time_limit: float | None = 60.0  # seconds; None means iterate forever
    max_iterations: int | None = None  # used for deterministic test runs
    seed: int = 0
    route_count: int | None = None  # seed routes; None: capacity lower bound
    workers: int = 1  # >1 explores sites in parallel threads

    def validate(self) -> None:
        if self.min_sites < 1 or self.initial_sites < self.min_sites:
            raise ValueError("need initial_sites >= min_sites >= 1")
        if self.cull_period < 1:
            raise ValueError("cull_period must be >= 1")
        if not 0 < self.cull_fraction <= 1:
            raise ValueError("cull_fraction must be in (0, 1]")
        if self.memory_size < 1 or self.bees_per_position < 1:
            raise ValueError("memory_size and bees_per_position must be >= 1")
        lo, mid, hi = self.destroy_fraction
        if not 0 <= lo <= mid <= hi <= 1:
            raise ValueError("destroy_fraction must satisfy 0 <= min <= mean <= max <= 1")
        if self.destroy_distribution not in ("triangular", "uniform"):
            raise ValueError(f"unknown destroy distribution {self.destroy_distribution!r}")
        if not 0 <= self.shaw_probability <= 1:
            raise ValueError("shaw_probability must be in [0, 1]")
        if self.extent_rate <= 0:
            raise ValueError("extent_rate must be positive")
        if not 0 <= self.max_extent_fraction <= 1:
            raise ValueError("max_extent_fraction must be in [0, 1]")
        if self.time_limit is None and self.max_iterations is None:
            raise ValueError("need a time limit or an iteration cap")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


def fast_profile(**overrides) -> SolverConfig:
    """60-second configuration: 25 sites culled every iteration, repair
    capped at half the candidate list."""
    cfg = SolverConfig(
        initial_sites=25,
        cull_period=1,
        cull_fraction=0.01,
        min_sites=1,
        memory_size=5,
        time_limit=60.0,
        max_extent_fraction=0.5,
    )
    return replace(cfg, **overrides)


def best_profile(**overrides) -> SolverConfig:
    """Quality-first configuration: 100 sites culled by 1% every 50
    iterations down to 3, 30-minute budget."""
    cfg = SolverConfig(
        initial_sites=100,
        cull_period=50,
        cull_fraction=0.01,
        min_sites=3,
        memory_size=5,
        time_limit=1800.0,
        max_extent_fraction=1.0,
    )
    return replace(cfg, **overrides)


class Site:
    """One search locale: a short memory of the best positions found nearby,
    and an age counting iterations since the locale last improved."""

    __slots__ = ("index", "memory", "age", "best_fitness", "best_solution", "rng")

    def __init__(self, index: int, fitness: float, solution: Solution, rng):
        self.index = index
        self.memory: list[tuple[float, Solution]] = [(fitness, solution)]
        self.age = 0
        self.best_fitness = fitness
        self.best_solution = solution
        self.rng = rng


@dataclass
class SolveResult:
    feasible: bool
    best_solution: Solution | None
    best_cost: float | None
    trace: list[tuple[float, float]]  # (elapsed seconds, cost) at improvements
    iterations: int
    elapsed: float
    best_infeasible: Solution | None = None  # diagnostics when feasible is False
    best_infeasible_fitness: float | None = None


def _draw_destroy_count(rng, config: SolverConfig, n: int) -> int:
    lo, mid, hi = config.destroy_fraction
    if config.destroy_distribution == "triangular" and lo < hi:
        frac = rng.triangular(lo, mid, hi)
    elif lo < hi:
        frac = rng.uniform(lo, hi)
    else:
        frac = lo
    return min(max(int(round(frac * n)), 1), n)


def _candidate_move(
    base: Solution,
    mu: int,
    config: SolverConfig,
    weights: FitnessWeights,
    rng,
) -> Solution:
    n = base.inst.n
    count = _draw_destroy_count(rng, config, n)
    if rng.random() < config.shaw_probability:
        destroyed = destroy_shaw(base, count, rng, config.shaw_params)
    else:
        destroyed = destroy_random(base, count, rng)
    return repair(destroyed.partial, destroyed.removed, mu, rng, weights)


def explore_site(
    site: Site,
    registry: PositionRegistry,
    config: SolverConfig,
    weights: FitnessWeights,
    deadline: float,
) -> list[tuple[float, Solution]]:
    """Recruit bees_per_position moves for every remembered position; admit a
    candidate only if its fitness cell is unoccupied (one retry on collision).
    Rebuilds the memory from the survivors and updates the age counter."""
    inst = site.memory[0][1].inst
    mu = extent(site.age, config.extent_rate, inst.n - 1)
    mu = min(mu, int(config.max_extent_fraction * (inst.n - 1)))

    admitted: list[tuple[float, Solution]] = []
    out_of_time = False
    for _, base in list(site.memory):
        if out_of_time:
            break
        for _ in range(config.bees_per_position):
            if time.monotonic() >= deadline:
                out_of_time = True
                break
            for _attempt in range(2):
                cand = _candidate_move(base, mu, config, weights, site.rng)
                f = cand.fitness(weights)
                if registry.try_occupy(f):
                    admitted.append((f, cand))
                    break

    merged = sorted(site.memory + admitted, key=lambda t: t[0])
    site.memory = merged[:config.memory_size]
    if merged and merged[0][0] < site.best_fitness:
        site.best_fitness, site.best_solution = merged[0]
        site.age = 0
    else:
        site.age += 1
    return admitted


def cull_sites(sites: list[Site], config: SolverConfig, iteration: int) -> list[Site]:
    """Every cull_period-th iteration drop the ceil(cull_fraction * |sites|)
    worst sites by best-ever fitness, never going below min_sites. Ties are
    resolved by removing the higher site index first."""
    if iteration < 1:
        raise ValueError("iteration must be >= 1")
    if iteration % config.cull_period != 0:
        return sites
    if len(sites) <= config.min_sites:
        return sites
    k = math.ceil(config.cull_fraction * len(sites))
    k = min(k, len(sites) - config.min_sites)
    ranked = sorted(sites, key=lambda s: (s.best_fitness, s.index))
    survivors = ranked[: len(sites) - k]
    return sorted(survivors, key=lambda s: s.index)


def solve(inst: Instance, config: SolverConfig) -> SolveResult:
    """Run the engine until the time limit (or iteration cap) and return the
    best feasible solution found. When nothing feasible was seen the result
    carries the best infeasible position for diagnostics instead."""
    config.validate()
    weights = config.weights if config.weights is not None else default_weights(inst)
    start = time.monotonic()
    deadline = math.inf if config.time_limit is None else start + config.time_limit

    registry = PositionRegistry()
    state = _IncumbentState(inst, weights, start)

    seed_seq = np.random.SeedSequence(config.seed)
    sites: list[Site] = []
    for index, child in enumerate(seed_seq.spawn(config.initial_sites)):
        rng = np.random.default_rng(child)
        sol = random_seed_insertion(inst, rng, config.route_count, weights)
        f = sol.fitness(weights)
        if not registry.try_occupy(f):
            sol = random_seed_insertion(inst, rng, config.route_count, weights)
            f = sol.fitness(weights)
            registry.try_occupy(f)
        sites.append(Site(index, f, sol, rng))
        state.offer(f, sol)

    iteration = 0
    pool = ThreadPoolExecutor(config.workers) if config.workers > 1 else None
    try:
        while time.monotonic() < deadline:
            if config.max_iterations is not None and iteration >= config.max_iterations:
                break
            iteration += 1
            if pool is None:
                for site in sites:
                    if time.monotonic() >= deadline:
                        break
                    for f, cand in explore_site(site, registry, config, weights, deadline):
                        state.offer(f, cand)
            else:
                futures = [
                    pool.submit(explore_site, site, registry, config, weights, deadline)
                    for site in sites
                ]
                for fut in futures:
                    for f, cand in fut.result():
                        state.offer(f, cand)
            sites = cull_sites(sites, config, iteration)
    finally:
        if pool is not None:
            pool.shutdown(wait=False)

    return state.result(iterations=iteration)


class _IncumbentState:
    """Tracks the best feasible solution (and trace) plus the best position
    of any kind for the no-feasible diagnostic path."""

    def __init__(self, inst: Instance, weights: FitnessWeights, start: float):
        self.inst = inst
        self.weights = weights
        self.start = start
        self.best_cost = math.inf
        self.best_solution: Solution | None = None
        self.trace: list[tuple[float, float]] = []
        self.best_any_fitness = math.inf
        self.best_any: Solution | None = None

    def offer(self, fitness: float, sol: Solution) -> None:
        if fitness < self.best_any_fitness:
            self.best_any_fitness = fitness
            self.best_any = sol
        if sol.is_feasible():
            cost = sol.total_cost()
            if cost < self.best_cost - 1e-12:
                self.best_cost = cost
                self.best_solution = sol
                self.trace.append((time.monotonic() - self.start, cost))

    def result(self, iterations: int) -> SolveResult:
        elapsed = time.monotonic() - self.start
        if self.best_solution is not None:
            return SolveResult(
                feasible=True,
                best_solution=self.best_solution,
                best_cost=self.best_cost,
                trace=self.trace,
                iterations=iterations,
                elapsed=elapsed,
            )
        return SolveResult(
            feasible=False,
            best_solution=None,
            best_cost=None,
            trace=[],
            iterations=iterations,
            elapsed=elapsed,
            best_infeasible=self.best_any,
            best_infeasible_fitness=(
                None if self.best_any is None else self.best_any_fitness
            ),
        )
