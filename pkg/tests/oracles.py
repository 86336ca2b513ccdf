"""Independent reference implementations used to pin expected values.

Nothing here imports the package under test: distances, feasibility and
optima are recomputed from raw coordinates.
"""

from __future__ import annotations

import itertools
import math


def _distance(xs, ys, a, b, metric):
    if metric == "euclidean":
        return math.hypot(xs[b] - xs[a], ys[b] - ys[a])
    return abs(xs[b] - xs[a]) + abs(ys[b] - ys[a])


def brute_force_optimum(
    xs,
    ys,
    demands,
    capacity,
    max_duration=None,
    service_times=None,
    metric="euclidean",
):
    """Exact optimal cost over every partition of customers into routes and
    every visiting order, via subset DP. Index 0 is the depot. Returns None
    when no feasible complete solution exists."""
    n = len(xs) - 1
    if service_times is None:
        service_times = [0.0] * (n + 1)
    d = [[_distance(xs, ys, a, b, metric) for b in range(n + 1)] for a in range(n + 1)]

    full = 1 << n
    # cheapest open path depot -> (members of mask) -> j, customers as bits 0..n-1
    inf = math.inf
    path = [[inf] * n for _ in range(full)]
    for j in range(n):
        path[1 << j][j] = d[0][j + 1]
    for mask in range(full):
        row = path[mask]
        for j in range(n):
            pj = row[j]
            if pj == inf or not (mask >> j) & 1:
                continue
            dj = d[j + 1]
            for k in range(n):
                if (mask >> k) & 1:
                    continue
                nm = mask | (1 << k)
                cand = pj + dj[k + 1]
                if cand < path[nm][k]:
                    path[nm][k] = cand

    tour = [inf] * full
    tour[0] = 0.0
    load = [0.0] * full
    service = [0.0] * full
    for mask in range(1, full):
        low = mask & (-mask)
        j = low.bit_length() - 1
        load[mask] = load[mask ^ low] + demands[j + 1]
        service[mask] = service[mask ^ low] + service_times[j + 1]
        best = inf
        for k in range(n):
            if (mask >> k) & 1 and path[mask][k] < inf:
                c = path[mask][k] + d[k + 1][0]
                if c < best:
                    best = c
        tour[mask] = best

    def feasible(mask):
        if load[mask] > capacity + 1e-9:
            return False
        if max_duration is not None:
            if service[mask] + tour[mask] > max_duration + 1e-9:
                return False
        return True

    best_split = [inf] * full
    best_split[0] = 0.0
    for mask in range(1, full):
        # iterate submasks containing the lowest set bit (canonical first route)
        low = mask & (-mask)
        sub = mask
        while sub:
            if sub & low and feasible(sub) and best_split[mask ^ sub] < inf:
                cand = tour[sub] + best_split[mask ^ sub]
                if cand < best_split[mask]:
                    best_split[mask] = cand
            sub = (sub - 1) & mask
    answer = best_split[full - 1]
    return None if answer == inf else answer


def brute_force_optimum_enumerated(
    xs,
    ys,
    demands,
    capacity,
    max_duration=None,
    service_times=None,
    metric="euclidean",
):
    """Same optimum by literally enumerating permutations and split points.
    Only usable for tiny n; cross-checks the DP version."""
    n = len(xs) - 1
    if service_times is None:
        service_times = [0.0] * (n + 1)
    d = [[_distance(xs, ys, a, b, metric) for b in range(n + 1)] for a in range(n + 1)]

    def route_ok_cost(route):
        if sum(demands[c] for c in route) > capacity + 1e-9:
            return None
        cost = d[0][route[0]]
        for a, b in zip(route, route[1:]):
            cost += d[a][b]
        cost += d[route[-1]][0]
        if max_duration is not None:
            if cost + sum(service_times[c] for c in route) > max_duration + 1e-9:
                return None
        return cost

    best = math.inf
    customers = list(range(1, n + 1))
    for perm in itertools.permutations(customers):
        for split_bits in range(1 << (n - 1)):
            total = 0.0
            start = 0
            ok = True
            for pos in range(1, n + 1):
                if pos == n or (split_bits >> (pos - 1)) & 1:
                    cost = route_ok_cost(list(perm[start:pos]))
                    if cost is None:
                        ok = False
                        break
                    total += cost
                    start = pos
            if ok and total < best:
                best = total
    return None if best == math.inf else best


def cheapest_insertion_scan(inst_dist, routes, loads, durations, v, dv, sv, q, t, beta, gamma):
    """Exhaustive scan of every insertion slot (plus a fresh route), returning
    the minimal penalised insertion cost. Used against the repair operator."""
    best = math.inf
    for r, seq in enumerate(routes):
        for p in range(len(seq) + 1):
            prev = seq[p - 1] if p > 0 else 0
            nxt = seq[p] if p < len(seq) else 0
            cstar = inst_dist[prev][v] + inst_dist[v][nxt] - inst_dist[prev][nxt]
            cost = cstar
            cost += beta * (max(loads[r] + dv - q, 0.0) - max(loads[r] - q, 0.0))
            if t is not None:
                dur = durations[r]
                cost += gamma * (max(dur + cstar + sv - t, 0.0) - max(dur - t, 0.0))
            best = min(best, cost)
    new_route = inst_dist[0][v] * 2 + beta * max(dv - q, 0.0)
    if t is not None:
        new_route += gamma * max(inst_dist[0][v] * 2 + sv - t, 0.0)
    return min(best, new_route)
