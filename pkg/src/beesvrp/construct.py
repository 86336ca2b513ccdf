"""Initial solution builders: Clarke-Wright savings and random-seed insertion."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .instance import Instance
from .model import FitnessWeights, Solution, default_weights
from .neighborhood import _best_insertion


@dataclass(frozen=True)
class SavingsEntry:
    i: int
    j: int
    saving: float


def savings_list(inst: Instance) -> list[SavingsEntry]:
    """All pair savings s_ij = c_i0 + c_j0 - c_ij, sorted descending,
    ties broken by ascending (i, j)."""
    n = inst.n
    iu, ju = np.triu_indices(n, k=1)
    iu, ju = iu + 1, ju + 1
    s = inst.dist[iu, 0] + inst.dist[ju, 0] - inst.dist[iu, ju]
    order = np.lexsort((ju, iu, -s))
    return [
        SavingsEntry(int(iu[k]), int(ju[k]), float(s[k])) for k in order
    ]


def clarke_wright(
    inst: Instance,
    mode: str = "parallel",
    check_duration: bool = True,
    merge_log: list[SavingsEntry] | None = None,
) -> Solution:
    """Classic savings construction.

    `parallel` walks the sorted savings list once, merging wherever the three
    merge rules allow. `sequential` grows one route at a time, rescanning the
    list until no merge extends the route under construction, then freezes it
    and starts the next. `check_duration` extends the textbook capacity check
    with the route-duration budget on duration-limited instances; switch it
    off to reproduce the capacity-only behaviour. `merge_log`, when given,
    records the savings entries in the order their merges were applied.
    """
    if mode not in ("parallel", "sequential"):
        raise ValueError(f"unknown mode {mode!r}")

    n = inst.n
    d = inst.dist_rows
    # One route per customer to start with; routes are merged in place.
    route_id = list(range(n + 1))  # customer -> route id (0 unused)
    members: dict[int, list[int]] = {c: [c] for c in range(1, n + 1)}
    loads = {c: inst.demands_list[c] for c in range(1, n + 1)}
    services = {c: inst.service_list[c] for c in range(1, n + 1)}
    costs = {c: d[0][c] * 2.0 for c in range(1, n + 1)}

    entries = savings_list(inst)

    def try_merge(entry: SavingsEntry) -> int | None:
        i, j = entry.i, entry.j
        ra, rb = route_id[i], route_id[j]
        if ra == rb:
            return None
        seq_a, seq_b = members[ra], members[rb]
        # i and j must sit at an open end of their routes
        if seq_a[0] != i and seq_a[-1] != i:
            return None
        if seq_b[0] != j and seq_b[-1] != j:
            return None
        if loads[ra] + loads[rb] > inst.capacity:
            return None
        new_cost = costs[ra] + costs[rb] - d[i][0] - d[0][j] + d[i][j]
        if (
            check_duration
            and inst.max_duration is not None
            and services[ra] + services[rb] + new_cost > inst.max_duration
        ):
            return None
        # orient so i is the tail of a and j the head of b, then join
        if seq_a[-1] != i:
            seq_a.reverse()
        if seq_b[0] != j:
            seq_b.reverse()
        seq_a.extend(seq_b)
        loads[ra] += loads[rb]
        services[ra] += services[rb]
        costs[ra] = new_cost
        for c in seq_b:
            route_id[c] = ra
        del members[rb], loads[rb], services[rb], costs[rb]
        if merge_log is not None:
            merge_log.append(entry)
        return ra

    if mode == "parallel":
        for entry in entries:
            try_merge(entry)
    else:
        frozen: set[int] = set()
        current: int | None = None
        while True:
            merged_any = False
            for entry in entries:
                ra, rb = route_id[entry.i], route_id[entry.j]
                if ra in frozen or rb in frozen:
                    continue
                if current is not None and current not in (ra, rb):
                    continue
                result = try_merge(entry)
                if result is not None:
                    current = result
                    merged_any = True
            if not merged_any:
                if current is None:
                    break
                frozen.add(current)
                current = None

    return Solution.from_routes(inst, [members[r] for r in sorted(members)])


def default_route_count(inst: Instance) -> int:
    """Capacity lower bound on the fleet size."""
    return max(1, math.ceil(inst.total_demand() / inst.capacity))


def random_seed_insertion(
    inst: Instance,
    rng: np.random.Generator,
    route_count: int | None = None,
    weights: FitnessWeights | None = None,
) -> Solution:
    """Seed `route_count` routes with distinct random customers, then place
    every remaining customer at its globally cheapest position (full extent).
    The result is always complete but may carry penalty-weighted violations.
    """
    if route_count is None:
        route_count = default_route_count(inst)
    if not 1 <= route_count <= inst.n:
        raise ValueError(f"route_count must be in 1..{inst.n}, got {route_count}")
    if weights is None:
        weights = default_weights(inst)

    seeds = rng.choice(np.arange(1, inst.n + 1), size=route_count, replace=False)
    sol = Solution(inst)
    for c in seeds.tolist():
        r = sol.add_empty_route()
        sol.insert(int(c), r, 0)

    rest = [c for c in range(1, inst.n + 1) if sol.route_of[c] < 0]
    order = np.array(rest, dtype=np.int64)
    rng.shuffle(order)
    for v in order.tolist():
        r, p = _best_insertion(sol, v, inst.n, weights, allow_new_route=False)
        sol.insert(v, r, p)
    return sol
