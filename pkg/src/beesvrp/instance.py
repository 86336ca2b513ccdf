"""Problem data: instance files, distance matrices, candidate neighbour lists.

Instance file format (line oriented text)::

    NAME: P01E51K05
    CAPACITY: 160
    MAX_DURATION: 200     # optional; omitted means unconstrained
    SERVICE_TIME: 10      # optional; uniform per-customer service time
    DEPOT: 30 40
    CUSTOMERS:
    1 37 52 7             # id x y demand
    ...

``convert_cmt`` accepts the widely circulated layout for the classic
Christofides/Mingozzi/Toth benchmark files (first line ``n q t s``, then the
depot coordinates, then one ``x y demand`` line per customer) and produces
the format above.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np


class Metric(Enum):
    EUCLIDEAN = "euclidean"
    MANHATTAN = "manhattan"


class InstanceError(ValueError):
    """Raised for malformed or inconsistent instance files."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class Customer:
    id: int
    x: float
    y: float
    demand: float
    service_time: float = 0.0

    def __post_init__(self):
        if self.demand < 0:
            raise InstanceError(f"customer {self.id}: negative demand {self.demand}")
        if self.service_time < 0:
            raise InstanceError(f"customer {self.id}: negative service time")


def distance(ax: float, ay: float, bx: float, by: float, metric: Metric) -> float:
    """Travel cost between two points under the chosen metric."""
    if metric is Metric.EUCLIDEAN:
        return math.hypot(bx - ax, by - ay)
    # Taxicab distance. Both coordinate differences are taken in absolute
    # value so the result is a proper metric.
    return abs(bx - ax) + abs(by - ay)


class Instance:
    """Immutable problem data.

    Vertex 0 is the depot; customers are indexed 1..n in file order. The
    distance matrix and the per-vertex candidate lists are built eagerly and
    never change, so an instance can be shared freely between threads.
    """

    def __init__(
        self,
        name: str,
        depot: tuple[float, float],
        customers: list[Customer],
        capacity: float,
        max_duration: float | None = None,
        metric: Metric = Metric.EUCLIDEAN,
    ):
        if not customers:
            raise InstanceError("instance has no customers")
        if capacity <= 0:
            raise InstanceError(f"capacity must be positive, got {capacity}")
        if max_duration is not None and max_duration <= 0:
            raise InstanceError(f"max duration must be positive, got {max_duration}")
        ids = [c.id for c in customers]
        if ids != list(range(1, len(customers) + 1)):
            seen = set()
            for c in customers:
                if c.id in seen:
                    raise InstanceError(f"duplicate customer id {c.id}")
                seen.add(c.id)
            raise InstanceError("customer ids must be 1..n in order")
        for c in customers:
            if c.demand <= 0:
                raise InstanceError(f"customer {c.id}: demand must be positive")
            if c.demand > capacity:
                raise InstanceError(
                    f"customer {c.id}: demand {c.demand} exceeds capacity {capacity}"
                )

        self.name = name
        self.depot = depot
        self.customers = tuple(customers)
        self.capacity = float(capacity)
        self.max_duration = None if max_duration is None else float(max_duration)
        self.metric = metric

        self.n = len(customers)
        xs = np.array([depot[0]] + [c.x for c in customers], dtype=np.float64)
        ys = np.array([depot[1]] + [c.y for c in customers], dtype=np.float64)
        self.xs, self.ys = xs, ys
        self.demands = np.array([0.0] + [c.demand for c in customers], dtype=np.float64)
        self.service_times = np.array(
            [0.0] + [c.service_time for c in customers], dtype=np.float64
        )

        dx = xs[:, None] - xs[None, :]
        dy = ys[:, None] - ys[None, :]
        if metric is Metric.EUCLIDEAN:
            self.dist = np.sqrt(dx * dx + dy * dy)
        else:
            self.dist = np.abs(dx) + np.abs(dy)

        # Plain-python mirrors for the scalar-indexing hot paths; numpy
        # scalar lookups cost several times more than list indexing.
        self.dist_rows: list[list[float]] = self.dist.tolist()
        self.demands_list: list[float] = self.demands.tolist()
        self.service_list: list[float] = self.service_times.tolist()

        m = self.n + 1
        if m > 1:
            triu = self.dist[np.triu_indices(m, k=1)]
            self.mean_edge_cost = float(triu.mean())
        else:
            self.mean_edge_cost = 1.0
        if self.mean_edge_cost == 0.0:
            self.mean_edge_cost = 1.0  # degenerate all-coincident layouts

        self.candidate_lists = _build_candidate_lists(self.dist, self.n)

    def distance_between(self, a: int, b: int) -> float:
        return float(self.dist[a, b])

    def total_demand(self) -> float:
        return float(self.demands.sum())

    def __repr__(self):
        dur = "none" if self.max_duration is None else f"{self.max_duration:g}"
        return (
            f"Instance({self.name!r}, n={self.n}, q={self.capacity:g}, "
            f"t={dur}, {self.metric.value})"
        )


def _build_candidate_lists(dist: np.ndarray, n: int) -> list[np.ndarray]:
    """For every vertex, all customers other than itself by ascending distance.

    Ties are broken by ascending customer id, which lexsort gives us for free
    (the id array is the secondary key in reverse-key order).
    """
    lists = []
    ids = np.arange(1, n + 1)
    for v in range(n + 1):
        others = ids[ids != v]
        order = np.lexsort((others, dist[v, others]))
        lists.append(others[order].astype(np.int32))
    return lists


def build_candidate_lists(inst: "Instance") -> list[np.ndarray]:
    """Recompute the candidate lists from the instance's distance matrix
    (instances already carry them as `candidate_lists`)."""
    return _build_candidate_lists(inst.dist, inst.n)


def parse_instance(text: str, metric: Metric = Metric.EUCLIDEAN) -> Instance:
    """Parse the native instance format. Errors carry the offending line number."""
    name = None
    capacity = None
    max_duration = None
    service_time = 0.0
    depot = None
    customers: list[Customer] = []
    seen_ids: set[int] = set()
    in_customers = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if in_customers:
            parts = line.split()
            if len(parts) != 4:
                raise InstanceError(
                    f"expected 'id x y demand', got {line!r}", lineno
                )
            try:
                cid = int(parts[0])
                x, y, demand = (float(p) for p in parts[1:])
            except ValueError:
                raise InstanceError(f"non-numeric customer field in {line!r}", lineno)
            if cid in seen_ids:
                raise InstanceError(f"duplicate customer id {cid}", lineno)
            if demand < 0:
                raise InstanceError(f"customer {cid}: negative demand", lineno)
            if capacity is not None and demand > capacity:
                raise InstanceError(
                    f"customer {cid}: demand {demand:g} exceeds capacity {capacity:g}",
                    lineno,
                )
            seen_ids.add(cid)
            customers.append(Customer(cid, x, y, demand, service_time))
            continue

        key, _, value = line.partition(":")
        key = key.strip().upper()
        value = value.strip()
        try:
            if key == "NAME":
                name = value
            elif key == "CAPACITY":
                capacity = float(value)
            elif key == "MAX_DURATION":
                max_duration = float(value)
            elif key == "SERVICE_TIME":
                service_time = float(value)
            elif key == "DEPOT":
                dx, dy = (float(p) for p in value.split())
                depot = (dx, dy)
            elif key == "CUSTOMERS":
                in_customers = True
            else:
                raise InstanceError(f"unknown header {key!r}", lineno)
        except InstanceError:
            raise
        except ValueError:
            raise InstanceError(f"malformed value for {key}: {value!r}", lineno)

    if capacity is None:
        raise InstanceError("missing CAPACITY header")
    if depot is None:
        raise InstanceError("missing DEPOT header")
    if not customers:
        raise InstanceError("missing CUSTOMERS section")

    # Renumber check happens in the constructor; sort by id so files may list
    # customers out of order as long as ids are 1..n.
    customers.sort(key=lambda c: c.id)
    return Instance(
        name or "unnamed", depot, customers, capacity, max_duration, metric
    )


def _num(x: float) -> str:
    """Shortest exact decimal: integers lose the trailing '.0'."""
    f = float(x)
    return str(int(f)) if f.is_integer() else repr(f)


def format_instance(inst: Instance) -> str:
    """Serialise an instance in the native format (parse round-trips)."""
    lines = [f"NAME: {inst.name}", f"CAPACITY: {_num(inst.capacity)}"]
    if inst.max_duration is not None:
        lines.append(f"MAX_DURATION: {_num(inst.max_duration)}")
    service = inst.customers[0].service_time if inst.customers else 0.0
    if service:
        lines.append(f"SERVICE_TIME: {_num(service)}")
    lines.append(f"DEPOT: {_num(inst.depot[0])} {_num(inst.depot[1])}")
    lines.append("CUSTOMERS:")
    for c in inst.customers:
        lines.append(f"{c.id} {_num(c.x)} {_num(c.y)} {_num(c.demand)}")
    return "\n".join(lines) + "\n"


def convert_cmt(text: str, name: str = "converted") -> str:
    """Normalise the published benchmark layout to the native format.

    Expected layout: ``n q t s`` on the first line (customer count, vehicle
    capacity, maximum route duration, per-customer service time), depot
    ``x y`` on the second, then one ``x y demand`` line per customer. A
    non-positive or sentinel (>= 999999) duration means unconstrained.
    """
    rows = [r.split() for r in text.splitlines() if r.strip()]
    if not rows or len(rows[0]) < 2:
        raise InstanceError("expected 'n q [t s]' on the first line", 1)
    try:
        head = [float(v) for v in rows[0]]
    except ValueError:
        raise InstanceError(f"non-numeric header {rows[0]!r}", 1)
    n = int(head[0])
    q = head[1]
    t = head[2] if len(head) > 2 else 0.0
    s = head[3] if len(head) > 3 else 0.0
    if len(rows) < 2 + n:
        raise InstanceError(f"expected depot plus {n} customer lines")
    depot = rows[1]
    out = [f"NAME: {name}", f"CAPACITY: {q:g}"]
    if 0 < t < 999999:
        out.append(f"MAX_DURATION: {t:g}")
    if s > 0:
        out.append(f"SERVICE_TIME: {s:g}")
    out.append(f"DEPOT: {depot[0]} {depot[1]}")
    out.append("CUSTOMERS:")
    for i, row in enumerate(rows[2 : 2 + n], start=1):
        if len(row) < 3:
            raise InstanceError(f"expected 'x y demand', got {row!r}", i + 2)
        out.append(f"{i} {row[0]} {row[1]} {row[2]}")
    return "\n".join(out) + "\n"
