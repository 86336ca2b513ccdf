"""Search operators: destroy/repair (large neighbourhood moves), the
age-driven extent schedule, and chain interchange between route pairs.

All operators consume a solution plus an rng stream and produce a new
solution value; the inputs are never mutated, so independent searches can
share them freely.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import FitnessWeights, Solution

_IMPROVEMENT_EPS = 1e-9  # floats: "strictly better" needs a noise floor


@dataclass
class DestroyResult:
    partial: Solution
    removed: list[int]


@dataclass(frozen=True)
class RelatednessParams:
    distance_weight: float = 1.0
    adjacency_bonus: float = 1.0
    determinism_exponent: float = 4.0

    def __post_init__(self):
        if min(self.distance_weight, self.adjacency_bonus) < 0:
            raise ValueError("relatedness weights must be non-negative")
        if self.determinism_exponent < 0:
            raise ValueError("determinism exponent must be non-negative")


def _check_count(count: int, n: int) -> None:
    if not 1 <= count <= n:
        raise ValueError(f"removal count must be in 1..{n}, got {count}")


def destroy_random(sol: Solution, count: int, rng: np.random.Generator) -> DestroyResult:
    """Remove `count` distinct customers chosen uniformly at random."""
    _check_count(count, sol.inst.n)
    removed = [int(c) for c in rng.choice(np.arange(1, sol.inst.n + 1), size=count, replace=False)]
    partial = sol.clone()
    for c in removed:
        partial.remove(c)
    return DestroyResult(partial, removed)


def relatedness(
    a: int, b: int, sol: Solution, params: RelatednessParams | None = None
) -> float:
    """How attractive it is to remove a and b together: geographically close
    pairs score high, and route-adjacent pairs get a flat bonus. Symmetric."""
    params = params or RelatednessParams()
    inst = sol.inst
    score = params.distance_weight / (1.0 + inst.dist[a, b] / inst.mean_edge_cost)
    if sol.route_of[a] == sol.route_of[b] and sol.route_of[a] >= 0:
        if abs(int(sol.pos_of[a]) - int(sol.pos_of[b])) == 1:
            score += params.adjacency_bonus
    return float(score)


def destroy_shaw(
    sol: Solution,
    count: int,
    rng: np.random.Generator,
    params: RelatednessParams | None = None,
) -> DestroyResult:
    """Biased removal: grow the removed set by repeatedly picking a customer
    related to one already removed, with rank floor(u^p * remaining)."""
    params = params or RelatednessParams()
    inst = sol.inst
    n = inst.n
    _check_count(count, n)

    partial = sol.clone()
    seed = int(rng.integers(1, n + 1))
    removed = [seed]
    partial.remove(seed)

    mask = np.ones(n + 1, dtype=bool)
    mask[0] = False
    mask[seed] = False
    p = params.determinism_exponent

    # Adjacency is judged against the input solution (positions before any
    # removal), so already-removed reference customers still have neighbours.
    route_of, pos_of = sol.route_of, sol.pos_of

    while len(removed) < count:
        ref = removed[int(rng.integers(0, len(removed)))]
        rem = np.flatnonzero(mask)
        scores = params.distance_weight / (1.0 + inst.dist[ref, rem] / inst.mean_edge_cost)
        if params.adjacency_bonus:
            r = route_of[ref]
            if r >= 0:
                seq = sol.routes[r].seq
                pos = int(pos_of[ref])
                for nb_pos in (pos - 1, pos + 1):
                    if 0 <= nb_pos < len(seq):
                        nb = seq[nb_pos]
                        if mask[nb]:
                            scores[np.searchsorted(rem, nb)] += params.adjacency_bonus
        order = np.lexsort((rem, -scores))  # descending score, ties by id
        rank = int(rng.random() ** p * len(rem))
        pick = int(rem[order[min(rank, len(rem) - 1)]])
        removed.append(pick)
        partial.remove(pick)
        mask[pick] = False

    return DestroyResult(partial, removed)


def insertion_cost(
    sol: Solution, route_index: int, pos: int, customer: int, weights: FitnessWeights
) -> float:
    """Cost of placing `customer` before position `pos` of the given route:
    the travel detour plus weighted capacity/duration penalty deltas."""
    inst = sol.inst
    route = sol.routes[route_index]
    seq = route.seq
    prev = seq[pos - 1] if pos > 0 else 0
    nxt = seq[pos] if pos < len(seq) else 0
    d = inst.dist
    cstar = float(d[prev, customer] + d[customer, nxt] - d[prev, nxt])
    cost = cstar
    load = route.load
    q = inst.capacity
    cost += weights.beta * (
        max(load + inst.demands[customer] - q, 0.0) - max(load - q, 0.0)
    )
    t = inst.max_duration
    if t is not None:
        dur = route.service + route.cost
        new_dur = dur + cstar + inst.service_times[customer]
        cost += weights.gamma * (max(new_dur - t, 0.0) - max(dur - t, 0.0))
    return cost


def _best_insertion(
    sol: Solution,
    v: int,
    entries: int,
    weights: FitnessWeights,
    allow_new_route: bool,
) -> tuple[int, int]:
    """Cheapest position for v among both sides of the first `entries` routed
    candidate-list neighbours, the depot ends of every route and (optionally)
    one fresh route. Ties go to the lowest (route, position)."""
    inst = sol.inst
    routes = sol.routes
    route_of = sol.route_of
    pos_of = sol.pos_of

    lv = inst.candidate_lists[v]
    routed = lv[route_of[lv] >= 0]
    prefix = routed[:entries]

    seen = set()
    candidates: list[tuple[int, int]] = []
    for r, p in zip(route_of[prefix].tolist(), pos_of[prefix].tolist()):
        for key in ((r, p), (r, p + 1)):
            if key not in seen:
                seen.add(key)
                candidates.append(key)

    offered_empty = False
    for r, route in enumerate(routes):
        if route.seq:
            for key in ((r, 0), (r, len(route.seq))):
                if key not in seen:
                    seen.add(key)
                    candidates.append(key)
        elif not offered_empty:
            offered_empty = True
            if (r, 0) not in seen:
                seen.add((r, 0))
                candidates.append((r, 0))

    virtual_route = -1
    if allow_new_route and not offered_empty:
        virtual_route = len(routes)
        candidates.append((virtual_route, 0))

    dist = inst.dist_rows
    dv = inst.demands_list[v]
    sv = inst.service_list[v]
    q = inst.capacity
    t = inst.max_duration
    beta, gamma = weights.beta, weights.gamma
    d0v2 = dist[0][v] * 2.0

    best_key = None
    best_cost = math.inf
    for key in candidates:
        r, p = key
        if r == virtual_route:
            cstar = d0v2
            load = 0.0
            dur = 0.0
        else:
            route = routes[r]
            seq = route.seq
            prev = seq[p - 1] if p > 0 else 0
            nxt = seq[p] if p < len(seq) else 0
            drow = dist[prev]
            cstar = drow[v] + dist[v][nxt] - drow[nxt]
            load = route.load
            dur = route.service + route.cost
        cost = cstar
        if beta:
            over_new = load + dv - q
            over_old = load - q
            cost += beta * (
                (over_new if over_new > 0.0 else 0.0)
                - (over_old if over_old > 0.0 else 0.0)
            )
        if t is not None and gamma:
            late_new = dur + cstar + sv - t
            late_old = dur - t
            cost += gamma * (
                (late_new if late_new > 0.0 else 0.0)
                - (late_old if late_old > 0.0 else 0.0)
            )
        if cost < best_cost or (cost == best_cost and key < best_key):
            best_cost = cost
            best_key = key
    return best_key


def repair(
    partial: Solution,
    removed: list[int],
    mu: int,
    rng: np.random.Generator,
    weights: FitnessWeights,
    allow_route_creation: bool = True,
) -> Solution:
    """Reinsert the removed customers, each at its cheapest position, in a
    uniformly random order. Mutates and returns `partial`."""
    if not removed:
        return partial
    order = list(removed)
    rng.shuffle(order)
    entries = max(3, mu)
    for v in order:
        r, p = _best_insertion(partial, v, entries, weights, allow_route_creation)
        if r == len(partial.routes):
            partial.add_empty_route()
        partial.insert(v, r, p)
    partial.prune_empty_routes()
    return partial


def extent(site_age: int, rate: float, list_len: int) -> int:
    """Share of the candidate list scanned by repair; grows linearly with the
    site's age and saturates at the whole list after `rate` stale iterations."""
    if site_age < 0:
        raise ValueError("site age must be non-negative")
    if rate <= 0:
        raise ValueError("extent rate must be positive")
    return int(math.floor(list_len * min(site_age / rate, 1.0)))


def _segment_cost(inst, seq: list[int]) -> float:
    if len(seq) < 2:
        return 0.0
    d = inst.dist_rows
    return sum(d[a][b] for a, b in zip(seq, seq[1:]))


def _route_penalty(load, dur, q, t, beta, gamma) -> float:
    pen = beta * max(load - q, 0.0)
    if t is not None:
        pen += gamma * max(dur - t, 0.0)
    return pen


def lambda_interchange(
    sol: Solution,
    lambda_max: int,
    rng: np.random.Generator,
    weights: FitnessWeights,
    policy: str = "first_improvement",
) -> Solution | None:
    """Exchange chains of up to `lambda_max` customers between two routes
    (including one-sided relocations). Returns an improved solution, or None
    when no examined move strictly decreases fitness."""
    if lambda_max == 0:
        return None
    if lambda_max not in (1, 2):
        raise ValueError("lambda_max must be 1 or 2")
    if policy not in ("first_improvement", "best_improvement"):
        raise ValueError(f"unknown policy {policy!r}")

    inst = sol.inst
    q = inst.capacity
    t = inst.max_duration
    beta, gamma = weights.beta, weights.gamma
    d = inst.dist_rows
    demands = inst.demands_list
    services = inst.service_list
    routes = sol.routes

    pairs = [
        (i, j)
        for i in range(len(routes))
        for j in range(i + 1, len(routes))
        if routes[i].seq or routes[j].seq
    ]
    if policy == "first_improvement":
        rng.shuffle(pairs)

    best_delta = -_IMPROVEMENT_EPS
    best_move = None

    def route_terms(route):
        dur = route.service + route.cost
        return route.load, dur, _route_penalty(route.load, dur, q, t, beta, gamma)

    for ri, rj in pairs:
        ra, rb = routes[ri], routes[rj]
        sa, sb = ra.seq, rb.seq
        load_a, dur_a, pen_a = route_terms(ra)
        load_b, dur_b, pen_b = route_terms(rb)

        moves = []
        # swaps: chain from each route, replaced in place
        for la in range(1, lambda_max + 1):
            for lb in range(1, lambda_max + 1):
                for i in range(len(sa) - la + 1):
                    for j in range(len(sb) - lb + 1):
                        moves.append(("swap", la, lb, i, j))
        # relocations: chain from one route into any slot of the other
        for la in range(1, lambda_max + 1):
            for i in range(len(sa) - la + 1):
                for j in range(len(sb) + 1):
                    moves.append(("ab", la, 0, i, j))
            for j in range(len(sb) - la + 1):
                for i in range(len(sa) + 1):
                    moves.append(("ba", la, 0, j, i))

        for kind, l1, l2, i, j in moves:
            if kind == "swap":
                chain_a = sa[i : i + l1]
                chain_b = sb[j : j + l2]
                prev_a = sa[i - 1] if i > 0 else 0
                next_a = sa[i + l1] if i + l1 < len(sa) else 0
                prev_b = sb[j - 1] if j > 0 else 0
                next_b = sb[j + l2] if j + l2 < len(sb) else 0
                dc_a = (
                    d[prev_a][chain_b[0]]
                    + _segment_cost(inst, chain_b)
                    + d[chain_b[-1]][next_a]
                ) - (
                    d[prev_a][chain_a[0]]
                    + _segment_cost(inst, chain_a)
                    + d[chain_a[-1]][next_a]
                )
                dc_b = (
                    d[prev_b][chain_a[0]]
                    + _segment_cost(inst, chain_a)
                    + d[chain_a[-1]][next_b]
                ) - (
                    d[prev_b][chain_b[0]]
                    + _segment_cost(inst, chain_b)
                    + d[chain_b[-1]][next_b]
                )
                dl = sum(demands[c] for c in chain_b) - sum(demands[c] for c in chain_a)
                ds = sum(services[c] for c in chain_b) - sum(services[c] for c in chain_a)
                new_pen_a = _route_penalty(load_a + dl, dur_a + ds + dc_a, q, t, beta, gamma)
                new_pen_b = _route_penalty(load_b - dl, dur_b - ds + dc_b, q, t, beta, gamma)
                delta = (
                    weights.alpha * (dc_a + dc_b)
                    + new_pen_a
                    + new_pen_b
                    - pen_a
                    - pen_b
                )
            else:
                if kind == "ab":
                    src_seq, dst_seq = sa, sb
                    src_load, src_dur, src_pen = load_a, dur_a, pen_a
                    dst_load, dst_dur, dst_pen = load_b, dur_b, pen_b
                else:
                    src_seq, dst_seq = sb, sa
                    src_load, src_dur, src_pen = load_b, dur_b, pen_b
                    dst_load, dst_dur, dst_pen = load_a, dur_a, pen_a
                chain = src_seq[i : i + l1]
                prev_s = src_seq[i - 1] if i > 0 else 0
                next_s = src_seq[i + l1] if i + l1 < len(src_seq) else 0
                inner = _segment_cost(inst, chain)
                dc_src = d[prev_s][next_s] - (
                    d[prev_s][chain[0]] + inner + d[chain[-1]][next_s]
                )
                prev_d = dst_seq[j - 1] if j > 0 else 0
                next_d = dst_seq[j] if j < len(dst_seq) else 0
                dc_dst = (
                    d[prev_d][chain[0]] + inner + d[chain[-1]][next_d]
                ) - d[prev_d][next_d]
                dl = sum(demands[c] for c in chain)
                ds = sum(services[c] for c in chain)
                new_pen_src = _route_penalty(
                    src_load - dl, src_dur - ds + dc_src, q, t, beta, gamma
                )
                new_pen_dst = _route_penalty(
                    dst_load + dl, dst_dur + ds + dc_dst, q, t, beta, gamma
                )
                delta = (
                    weights.alpha * (dc_src + dc_dst)
                    + new_pen_src
                    + new_pen_dst
                    - src_pen
                    - dst_pen
                )

            if delta < best_delta:
                move = (ri, rj, kind, l1, l2, i, j)
                if policy == "first_improvement":
                    return _apply_interchange(sol, move)
                best_delta = delta
                best_move = move

    if best_move is None:
        return None
    return _apply_interchange(sol, best_move)


def _apply_interchange(sol: Solution, move) -> Solution:
    ri, rj, kind, l1, l2, i, j = move
    out = sol.clone()
    if kind == "swap":
        chain_a = out.routes[ri].seq[i : i + l1]
        chain_b = out.routes[rj].seq[j : j + l2]
        for c in chain_a + chain_b:
            out.remove(c)
        for off, c in enumerate(chain_b):
            out.insert(c, ri, i + off)
        for off, c in enumerate(chain_a):
            out.insert(c, rj, j + off)
    else:
        src, dst = (ri, rj) if kind == "ab" else (rj, ri)
        chain = out.routes[src].seq[i : i + l1]
        for c in chain:
            out.remove(c)
        for off, c in enumerate(chain):
            out.insert(c, dst, j + off)
    return out
