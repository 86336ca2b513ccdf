"""Command line front end.

    beesvrp solve INSTANCE [--profile fast|best] [--solver enhanced|standard_bees|lns] ...
    beesvrp bench INSTANCE_DIR --runs N --seed N --profile P --solver S ...
    beesvrp convert RAW [--name NAME] [--out FILE]

Exit codes: 0 success, 2 no feasible solution, 1 usage or parse errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from . import bench as bench_mod
from .bench import (
    PROFILES,
    SOLVERS,
    RunRecord,
    build_config,
    emit_report,
    gap,
    load_best_known,
    load_instance_dir,
    run_benchmark,
    run_single,
)
from .instance import InstanceError, Metric, convert_cmt, parse_instance
from .model import FitnessWeights, format_solution
from .neighborhood import RelatednessParams
from .solver import SolverConfig

USAGE_ERROR, NO_FEASIBLE = 1, 2

# SolverConfig fields a config file or flag may set (name -> parser).
_SCALARS = {
    "initial_sites": int,
    "cull_period": int,
    "cull_fraction": float,
    "min_sites": int,
    "memory_size": int,
    "bees_per_position": int,
    "destroy_distribution": str,
    "shaw_probability": float,
    "extent_rate": float,
    "max_extent_fraction": float,
    "time_limit": float,
    "max_iterations": int,
    "seed": int,
    "route_count": int,
    "workers": int,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        sys.exit(USAGE_ERROR)


def _parse_triple(text: str) -> tuple[float, float, float]:
    parts = [float(p) for p in text.replace(",", " ").split()]
    if len(parts) != 3:
        raise ValueError(f"expected three values, got {text!r}")
    return parts[0], parts[1], parts[2]


def read_config_file(path: str | Path) -> dict:
    """key = value lines mirroring the solver configuration fields."""
    values: dict = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise InstanceError(f"expected 'key = value', got {line!r}", lineno)
        key = key.strip().lower()
        value = value.strip()
        if key == "destroy_fraction":
            values[key] = _parse_triple(value)
        elif key == "weights":
            a, b, g = _parse_triple(value)
            values[key] = FitnessWeights(a, b, g)
        elif key == "solver":
            values[key] = value
        elif key in _SCALARS:
            values[key] = _SCALARS[key](value)
        else:
            raise InstanceError(f"unknown config key {key!r}", lineno)
    return values


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    for name, typ in _SCALARS.items():
        if name in ("seed", "time_limit"):
            continue  # dedicated flags below
        p.add_argument(f"--{name.replace('_', '-')}", type=typ, default=None)
    p.add_argument("--destroy-fraction", type=str, default=None, metavar="MIN,MEAN,MAX")
    p.add_argument("--weights", type=str, default=None, metavar="ALPHA,BETA,GAMMA")


def _solver_config(args) -> SolverConfig | None:
    """Enhanced-engine overrides from --config file plus flags; None when
    everything is left at the profile defaults."""
    values: dict = {}
    if args.config:
        values.update(read_config_file(args.config))
    values.pop("solver", None)
    for name in list(_SCALARS) + ["destroy_fraction", "weights"]:
        flag = getattr(args, name, None)
        if flag is None:
            continue
        if name == "destroy_fraction":
            values[name] = _parse_triple(flag)
        elif name == "weights":
            a, b, g = _parse_triple(flag)
            values[name] = FitnessWeights(a, b, g)
        else:
            values[name] = flag
    if not values:
        return None
    from .solver import best_profile, fast_profile

    base = fast_profile() if args.profile == "fast" else best_profile()
    valid = {f.name for f in dataclasses.fields(SolverConfig)}
    unknown = set(values) - valid
    if unknown:
        raise InstanceError(f"unknown solver config keys: {sorted(unknown)}")
    return dataclasses.replace(base, **values)


def _write_out(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_solve(args) -> int:
    metric = Metric(args.metric)
    try:
        inst = parse_instance(Path(args.instance).read_text(), metric)
    except FileNotFoundError:
        print(f"error: no such instance file: {args.instance}", file=sys.stderr)
        return USAGE_ERROR

    base = _solver_config(args) if args.solver == "enhanced" else None
    config = build_config(args.solver, args.profile, args.seed, args.time_limit, base)
    result = run_single(inst, args.solver, config)

    best_known = None
    if args.best_known:
        best_known = load_best_known(args.best_known).get(inst.name)

    if result.feasible:
        print(f"{inst.name}: cost {result.best_cost:.2f} "
              f"({len([r for r in result.best_solution.routes if r.seq])} routes, "
              f"{result.iterations} iterations, {result.elapsed:.1f}s)")
        if best_known:
            print(f"best known {best_known:.2f}, gap {gap(result.best_cost, best_known) * 100:.2f}%")
        sys.stdout.write(format_solution(result.best_solution))
    else:
        print(f"{inst.name}: no feasible solution found", file=sys.stderr)
        if result.best_infeasible is not None:
            print(
                f"best infeasible fitness {result.best_infeasible_fitness:.2f}",
                file=sys.stderr,
            )

    if args.out:
        record = RunRecord(
            instance=inst.name,
            solver=args.solver,
            profile=args.profile,
            seed=args.seed,
            cost=result.best_cost,
            gap=gap(result.best_cost, best_known) if best_known else 0.0,
            elapsed=result.elapsed,
            iterations=result.iterations,
            trace=result.trace,
            best_known=best_known,
        )
        _write_out(emit_report([record], args.format), args.out)

    return 0 if result.feasible else NO_FEASIBLE


def cmd_bench(args) -> int:
    try:
        instances = load_instance_dir(args.instance_dir, Metric(args.metric))
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    best_known = load_best_known(args.best_known)
    try:
        records = run_benchmark(
            instances,
            args.solver,
            args.profile,
            args.runs,
            args.seed,
            best_known,
            time_limit=args.time_limit,
            workers=args.workers,
        )
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return USAGE_ERROR
    _write_out(emit_report(records, args.format), args.out)
    if all(r.cost is None for r in records):
        return NO_FEASIBLE
    return 0


def cmd_convert(args) -> int:
    try:
        raw = Path(args.source).read_text()
    except FileNotFoundError:
        print(f"error: no such file: {args.source}", file=sys.stderr)
        return USAGE_ERROR
    name = args.name or Path(args.source).stem
    text = convert_cmt(raw, name)
    _write_out(text, args.out)
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="beesvrp", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("solve", help="solve one instance file")
    ps.add_argument("instance")
    ps.add_argument("--profile", choices=PROFILES, default="fast")
    ps.add_argument("--solver", choices=SOLVERS, default="enhanced")
    ps.add_argument("--seed", type=int, default=0)
    ps.add_argument("--time-limit", type=float, default=None)
    ps.add_argument("--metric", choices=[m.value for m in Metric], default="euclidean")
    ps.add_argument("--config", default=None, help="key = value solver config file")
    ps.add_argument("--best-known", default=None)
    ps.add_argument("--out", default=None)
    ps.add_argument("--format", choices=["csv", "markdown", "json"], default="markdown")
    _add_config_flags(ps)
    ps.set_defaults(func=cmd_solve)

    pb = sub.add_parser("bench", help="run a solver over a directory of instances")
    pb.add_argument("instance_dir")
    pb.add_argument("--runs", type=int, default=10)
    pb.add_argument("--seed", type=int, default=0)
    pb.add_argument("--profile", choices=PROFILES, default="fast")
    pb.add_argument("--solver", choices=SOLVERS, default="enhanced")
    pb.add_argument("--best-known", default=None)
    pb.add_argument("--metric", choices=[m.value for m in Metric], default="euclidean")
    pb.add_argument("--time-limit", type=float, default=None)
    pb.add_argument("--workers", type=int, default=None,
                    help=f"parallel runs (default ${bench_mod.WORKERS_ENV} or 1)")
    pb.add_argument("--out", default=None)
    pb.add_argument("--format", choices=["csv", "markdown", "json"], default="markdown")
    pb.set_defaults(func=cmd_bench)

    pc = sub.add_parser("convert", help="normalise a published benchmark file")
    pc.add_argument("source")
    pc.add_argument("--name", default=None)
    pc.add_argument("--out", default=None)
    pc.set_defaults(func=cmd_convert)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InstanceError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
