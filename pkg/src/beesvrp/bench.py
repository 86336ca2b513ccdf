"""Benchmark harness: batch runs over instance files, gaps against the
best-known costs, and report emission (csv / markdown / json)."""

from __future__ import annotations

import csv
import io
import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path

from .baselines import LnsConfig, StandardBeesConfig, lns_hill_climb_solve, standard_bees_solve
from .instance import Instance, Metric, format_instance, parse_instance
from .solver import SolveResult, SolverConfig, best_profile, fast_profile, solve

log = logging.getLogger(__name__)

SOLVERS = ("enhanced", "standard_bees", "lns")
PROFILES = ("fast", "best")
GAP_TOLERANCE = 1e-9
WORKERS_ENV = "BEESVRP_WORKERS"


def data_path() -> Path:
    """Directory with the bundled benchmark files."""
    return Path(resources.files("beesvrp").joinpath("data"))


def load_best_known(path: str | Path | None = None) -> dict[str, float]:
    """Name -> best-known cost, one 'name cost' pair per line."""
    if path is None:
        path = data_path() / "best_known.txt"
    table: dict[str, float] = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, value = line.split()
        cost = float(value)
        if cost <= 0:
            raise ValueError(f"best-known cost must be positive: {line!r}")
        table[name] = cost
    return table


def gap(best_cost: float | None, best_known: float) -> float:
    """Best-known cost over achieved cost; 0 marks an infeasible run. Values
    above 1 (a new best, or a bug) are clamped to 1 + tolerance."""
    if best_known <= 0:
        raise ValueError(f"best_known must be positive, got {best_known}")
    if best_cost is None:
        return 0.0
    raw = best_known / best_cost
    if raw > 1.0 + GAP_TOLERANCE:
        log.warning(
            "suspect gap: cost %.4f beats best known %.4f", best_cost, best_known
        )
        return 1.0 + GAP_TOLERANCE
    return raw


@dataclass
class RunRecord:
    instance: str
    solver: str
    profile: str
    seed: int
    cost: float | None  # None marks an infeasible run
    gap: float
    elapsed: float
    iterations: int
    trace: list[tuple[float, float]] = field(default_factory=list)
    suspect: bool = False
    best_known: float | None = None


def build_config(
    solver_id: str,
    profile: str,
    seed: int,
    time_limit: float | None = None,
    base: SolverConfig | None = None,
):
    """Concrete configuration for a (solver, profile) pair. The profile sets
    the enhanced engine's shape; for the baselines it sets the time budget."""
    if solver_id not in SOLVERS:
        raise ValueError(f"unknown solver {solver_id!r}")
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}")
    budget = time_limit if time_limit is not None else (60.0 if profile == "fast" else 1800.0)
    if solver_id == "enhanced":
        if base is not None:
            return replace(base, seed=seed, time_limit=budget)
        make = fast_profile if profile == "fast" else best_profile
        return make(seed=seed, time_limit=budget)
    if solver_id == "standard_bees":
        return StandardBeesConfig(seed=seed, time_limit=budget)
    return LnsConfig(seed=seed, time_limit=budget)


def run_single(inst: Instance, solver_id: str, config) -> SolveResult:
    if solver_id == "enhanced":
        return solve(inst, config)
    if solver_id == "standard_bees":
        return standard_bees_solve(inst, config)
    if solver_id == "lns":
        return lns_hill_climb_solve(inst, config)
    raise ValueError(f"unknown solver {solver_id!r}")


def _benchmark_task(args) -> RunRecord:
    text, name, metric, solver_id, profile, seed, time_limit, best_known = args
    inst = parse_instance(text, metric)
    config = build_config(solver_id, profile, seed, time_limit)
    result = run_single(inst, solver_id, config)
    raw = None if result.best_cost is None else best_known / result.best_cost
    return RunRecord(
        instance=name,
        solver=solver_id,
        profile=profile,
        seed=seed,
        cost=result.best_cost,
        gap=gap(result.best_cost, best_known),
        elapsed=result.elapsed,
        iterations=result.iterations,
        trace=result.trace,
        suspect=raw is not None and raw > 1.0 + GAP_TOLERANCE,
        best_known=best_known,
    )


def run_benchmark(
    instances: list[Instance],
    solver_id: str,
    profile: str,
    runs: int,
    base_seed: int,
    best_known: dict[str, float],
    time_limit: float | None = None,
    workers: int | None = None,
) -> list[RunRecord]:
    """`runs` solves per instance with seeds base_seed..base_seed+runs-1.

    Independent (instance, seed) runs can execute in parallel worker
    processes; set the worker count via the BEESVRP_WORKERS environment
    variable or the `workers` argument.
    """
    if runs < 1:
        raise ValueError("runs must be >= 1")
    for inst in instances:
        if inst.name not in best_known:
            raise KeyError(f"no best-known cost for instance {inst.name!r}")

    tasks = []
    for inst in instances:
        text = format_instance(inst)
        for k in range(runs):
            tasks.append(
                (
                    text,
                    inst.name,
                    inst.metric,
                    solver_id,
                    profile,
                    base_seed + k,
                    time_limit,
                    best_known[inst.name],
                )
            )

    if workers is None:
        workers = int(os.environ.get(WORKERS_ENV, "1"))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_benchmark_task, tasks))
    else:
        records = [_benchmark_task(t) for t in tasks]
    return records


def _aggregate(records: list[RunRecord], best_known: dict[str, float] | None = None):
    """Best run per instance, in first-seen instance order."""
    order: list[str] = []
    groups: dict[str, list[RunRecord]] = {}
    for rec in records:
        if rec.instance not in groups:
            order.append(rec.instance)
            groups[rec.instance] = []
        groups[rec.instance].append(rec)
    rows = []
    for name in order:
        group = groups[name]
        feasible = [r for r in group if r.cost is not None]
        best = min(feasible, key=lambda r: r.cost) if feasible else None
        rows.append((name, best, group))
    return rows


def mean_best_gap(records: list[RunRecord]) -> float:
    rows = _aggregate(records)
    gaps = [(row[1].gap if row[1] is not None else 0.0) for row in rows]
    return sum(gaps) / len(gaps) if gaps else 0.0


def emit_report(records: list[RunRecord], format: str = "markdown") -> str:
    """Per-instance best cost/gap/elapsed plus a mean-gap summary row."""
    if not records:
        raise ValueError("no records to report")
    if format not in ("csv", "markdown", "json"):
        raise ValueError(f"unknown report format {format!r}")
    rows = _aggregate(records)
    mean = mean_best_gap(records)
    bk_of = {r.instance: r.best_known for r in records if r.best_known is not None}

    def best_known_of(name, best):
        return bk_of.get(name)

    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["instance", "best_cost", "gap", "elapsed", "best_known"])
        for name, best, _ in rows:
            bk = best_known_of(name, best)
            writer.writerow(
                [
                    name,
                    "" if best is None else f"{best.cost:.6f}",
                    f"{(best.gap if best else 0.0):.6f}",
                    "" if best is None else f"{best.elapsed:.3f}",
                    "" if bk is None else f"{bk:.6f}",
                ]
            )
        writer.writerow(["MEAN", "", f"{mean:.6f}", "", ""])
        return buf.getvalue()

    if format == "markdown":
        lines = [
            "| Instance | Result | % | Best Known |",
            "| --- | ---: | ---: | ---: |",
        ]
        for name, best, _ in rows:
            bk = best_known_of(name, best)
            bk_text = "" if bk is None else f"{bk:.2f}"
            if best is None:
                lines.append(f"| {name} | infeasible | 0.00% | {bk_text} |")
            else:
                lines.append(
                    f"| {name} | {best.cost:.2f} | {best.gap * 100:.2f}% | {bk_text} |"
                )
        lines.append(f"| Average |  | {mean * 100:.2f}% |  |")
        return "\n".join(lines) + "\n"

    payload = {
        "summary": {
            "mean_gap": mean,
            "per_instance": [
                {
                    "instance": name,
                    "best_cost": None if best is None else best.cost,
                    "gap": best.gap if best is not None else 0.0,
                    "elapsed": None if best is None else best.elapsed,
                }
                for name, best, _ in rows
            ],
        },
        "records": [
            {
                "instance": r.instance,
                "solver": r.solver,
                "profile": r.profile,
                "seed": r.seed,
                "cost": r.cost,
                "gap": r.gap,
                "elapsed": r.elapsed,
                "iterations": r.iterations,
                "suspect": r.suspect,
                "trace": [[t, c] for t, c in r.trace],
            }
            for r in records
        ],
    }
    return json.dumps(payload, indent=2) + "\n"


def load_instance_dir(
    directory: str | Path, metric: Metric = Metric.EUCLIDEAN
) -> list[Instance]:
    paths = sorted(Path(directory).glob("*.txt"))
    instances = []
    for p in paths:
        if p.name == "best_known.txt":
            continue
        instances.append(parse_instance(p.read_text(), metric))
    if not instances:
        raise FileNotFoundError(f"no instance files in {directory}")
    return instances
