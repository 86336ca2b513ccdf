"""Three solvers, same instance, same budget: a miniature of the benchmark.

Run from the repo root:  python demos/05_solver_comparison.py
Takes about a minute (three 20-second runs).
"""

from beesvrp import parse_instance
from beesvrp.bench import (
    build_config,
    data_path,
    emit_report,
    load_best_known,
    run_benchmark,
)

inst = parse_instance((data_path() / "P01E51K05.txt").read_text())
table = load_best_known()

records = []
for solver in ("standard_bees", "lns", "enhanced"):
    recs = run_benchmark([inst], solver, "fast", runs=1, base_seed=0,
                         best_known=table, time_limit=20.0)
    rec = recs[0]
    cost = "infeasible" if rec.cost is None else f"{rec.cost:.2f}"
    print(f"{solver:>14}: {cost:>10}  gap {rec.gap:.2%}")
    records.extend(recs)

# The same records render as a report in any of three formats; the markdown
# table mirrors the usual benchmark summary layout.
print()
print(emit_report(records, "markdown"))
