"""Solution representation, fitness with constraint penalties, validation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .instance import Instance


@dataclass(frozen=True)
class FitnessWeights:
    """Penalty weights: alpha per unit distance, beta per unit of capacity
    excess, gamma per unit of duration excess. Lower fitness is better."""

    alpha: float = 1.0
    beta: float = 1.0
    gamma: float = 1.0

    def __post_init__(self):
        if min(self.alpha, self.beta, self.gamma) < 0:
            raise ValueError("fitness weights must be non-negative")


def default_weights(inst: Instance) -> FitnessWeights:
    """Penalties scaled to the instance's cost magnitude: breaking a
    constraint by one unit costs ten average edges."""
    p = 10.0 * inst.mean_edge_cost
    return FitnessWeights(alpha=1.0, beta=p, gamma=p)


def route_cost(inst: Instance, seq: list[int]) -> float:
    """Length of depot -> seq... -> depot; an empty route costs nothing."""
    if not seq:
        return 0.0
    d = inst.dist
    total = d[0, seq[0]]
    for a, b in zip(seq, seq[1:]):
        total += d[a, b]
    total += d[seq[-1], 0]
    return float(total)


def route_overcapacity(inst: Instance, seq: list[int]) -> float:
    return max(float(inst.demands[seq].sum()) - inst.capacity, 0.0) if seq else 0.0


def route_overtime(inst: Instance, seq: list[int]) -> float:
    if inst.max_duration is None or not seq:
        return 0.0
    duration = float(inst.service_times[seq].sum()) + route_cost(inst, seq)
    return max(duration - inst.max_duration, 0.0)


class Route:
    """Ordered customer visits with cached load, cost and service time.

    The depot is implicit at both ends. Caches are maintained incrementally
    by Solution's mutators and must always match a from-scratch recompute.
    """

    __slots__ = ("seq", "cost", "load", "service")

    def __init__(self, seq: list[int] | None = None, cost=0.0, load=0.0, service=0.0):
        self.seq = seq if seq is not None else []
        self.cost = cost
        self.load = load
        self.service = service

    def __len__(self):
        return len(self.seq)

    def overcapacity(self, capacity: float) -> float:
        return max(self.load - capacity, 0.0)

    def overtime(self, max_duration: float | None) -> float:
        if max_duration is None or not self.seq:
            return 0.0
        return max(self.service + self.cost - max_duration, 0.0)


@dataclass
class Violation:
    kind: str  # missing | duplicate | overcapacity | overtime
    customer: int | None = None
    route_index: int | None = None
    amount: float = 0.0

    def __str__(self):
        if self.kind in ("missing", "duplicate"):
            return f"{self.kind} customer {self.customer}"
        return f"route {self.route_index} {self.kind} by {self.amount:g}"


class Solution:
    """A set of routes over an instance.

    Owned and mutated by a single search thread; cloned when another thread
    or site needs its own copy. Keeps a customer -> (route, position) index
    so operators can locate any customer in O(1).
    """

    def __init__(self, inst: Instance):
        self.inst = inst
        self.routes: list[Route] = []
        self.route_of = np.full(inst.n + 1, -1, dtype=np.int32)
        self.pos_of = np.full(inst.n + 1, -1, dtype=np.int32)

    @classmethod
    def from_routes(cls, inst: Instance, seqs: list[list[int]]) -> "Solution":
        sol = cls(inst)
        for seq in seqs:
            r = sol.add_empty_route()
            for c in seq:
                sol.insert(c, r, len(sol.routes[r].seq))
        return sol

    def clone(self) -> "Solution":
        other = Solution.__new__(Solution)
        other.inst = self.inst
        other.routes = [
            Route(list(r.seq), r.cost, r.load, r.service) for r in self.routes
        ]
        other.route_of = self.route_of.copy()
        other.pos_of = self.pos_of.copy()
        return other

    def add_empty_route(self) -> int:
        self.routes.append(Route())
        return len(self.routes) - 1

    def insert(self, c: int, route_index: int, pos: int) -> None:
        inst = self.inst
        route = self.routes[route_index]
        seq = route.seq
        prev = seq[pos - 1] if pos > 0 else 0
        nxt = seq[pos] if pos < len(seq) else 0
        d = inst.dist_rows
        route.cost += d[prev][c] + d[c][nxt] - d[prev][nxt]
        route.load += inst.demands_list[c]
        route.service += inst.service_list[c]
        seq.insert(pos, c)
        self.route_of[c] = route_index
        self.pos_of[c] = pos
        for j in seq[pos + 1 :]:
            self.pos_of[j] += 1

    def remove(self, c: int) -> None:
        inst = self.inst
        route_index = int(self.route_of[c])
        if route_index < 0:
            raise ValueError(f"customer {c} is not routed")
        route = self.routes[route_index]
        seq = route.seq
        pos = int(self.pos_of[c])
        prev = seq[pos - 1] if pos > 0 else 0
        nxt = seq[pos + 1] if pos + 1 < len(seq) else 0
        d = inst.dist_rows
        route.cost -= d[prev][c] + d[c][nxt] - d[prev][nxt]
        route.load -= inst.demands_list[c]
        route.service -= inst.service_list[c]
        del seq[pos]
        if not seq:
            route.cost = 0.0  # clear residual float noise on emptied routes
        self.route_of[c] = -1
        self.pos_of[c] = -1
        for j in seq[pos:]:
            self.pos_of[j] -= 1

    def prune_empty_routes(self) -> None:
        if all(r.seq for r in self.routes):
            return
        self.routes = [r for r in self.routes if r.seq]
        for i, r in enumerate(self.routes):
            for p, c in enumerate(r.seq):
                self.route_of[c] = i
                self.pos_of[c] = p

    def unrouted(self) -> list[int]:
        return [c for c in range(1, self.inst.n + 1) if self.route_of[c] < 0]

    def total_cost(self) -> float:
        return float(sum(r.cost for r in self.routes))

    def fitness(self, w: FitnessWeights) -> float:
        inst = self.inst
        total = 0.0
        t = inst.max_duration
        for r in self.routes:
            if not r.seq:
                continue
            total += w.alpha * r.cost + w.beta * max(r.load - inst.capacity, 0.0)
            if t is not None:
                total += w.gamma * max(r.service + r.cost - t, 0.0)
        return total

    def is_feasible(self) -> bool:
        """Capacity and duration limits hold on every route; completeness is
        checked separately by validate()."""
        inst = self.inst
        for r in self.routes:
            if not r.seq:
                continue
            if r.load > inst.capacity + 1e-9:
                return False
            if (
                inst.max_duration is not None
                and r.service + r.cost > inst.max_duration + 1e-9
            ):
                return False
        return True

    def recompute(self) -> None:
        """Rebuild all caches from the sequences (testing aid)."""
        inst = self.inst
        for r in self.routes:
            r.cost = route_cost(inst, r.seq)
            r.load = float(inst.demands[r.seq].sum()) if r.seq else 0.0
            r.service = float(inst.service_times[r.seq].sum()) if r.seq else 0.0


def fitness(sol: Solution, w: FitnessWeights) -> float:
    return sol.fitness(w)


def fitness_from_scratch(sol: Solution, w: FitnessWeights) -> float:
    """Reference evaluation that ignores all caches."""
    inst = sol.inst
    total = 0.0
    for r in sol.routes:
        total += (
            w.alpha * route_cost(inst, r.seq)
            + w.beta * route_overcapacity(inst, r.seq)
            + w.gamma * route_overtime(inst, r.seq)
        )
    return total


def validate(sol: Solution) -> list[Violation]:
    """Empty list iff the solution is complete and feasible."""
    inst = sol.inst
    violations: list[Violation] = []
    counts = np.zeros(inst.n + 1, dtype=np.int64)
    for r in sol.routes:
        for c in r.seq:
            counts[c] += 1
    for c in range(1, inst.n + 1):
        if counts[c] == 0:
            violations.append(Violation("missing", customer=c))
        elif counts[c] > 1:
            violations.append(Violation("duplicate", customer=c))
    for i, r in enumerate(sol.routes):
        over = route_overcapacity(inst, r.seq)
        if over > 1e-9:
            violations.append(Violation("overcapacity", route_index=i, amount=over))
        late = route_overtime(inst, r.seq)
        if late > 1e-9:
            violations.append(Violation("overtime", route_index=i, amount=late))
    return violations


def format_solution(sol: Solution) -> str:
    """One line per non-empty route, then a '# cost <value>' trailer."""
    lines = [" ".join(str(c) for c in r.seq) for r in sol.routes if r.seq]
    lines.append(f"# cost {sol.total_cost():.6f}")
    return "\n".join(lines) + "\n"


def parse_solution(text: str, inst: Instance) -> Solution:
    seqs = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        seqs.append([int(tok) for tok in line.split()])
    return Solution.from_routes(inst, seqs)
