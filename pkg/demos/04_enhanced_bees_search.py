"""The full bees engine on a benchmark instance, with a convergence plot.

Run from the repo root:  python demos/04_enhanced_bees_search.py
Writes convergence.png next to this script.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from beesvrp import parse_instance, solve, fast_profile, validate
from beesvrp.bench import data_path, load_best_known

inst = parse_instance((data_path() / "P01E51K05.txt").read_text())
best_known = load_best_known()[inst.name]

# The fast profile: 25 sites culled down every iteration, 5-deep site
# memories, destroy 0-80% of the solution per move, 60 second budget.
# Shrink the budget here so the demo finishes quickly.
config = fast_profile(seed=0, time_limit=15.0)
result = solve(inst, config)

print(f"{inst.name}: cost {result.best_cost:.2f} "
      f"(best known {best_known}, gap {best_known / result.best_cost:.2%})")
print(f"{result.iterations} iterations, {len(result.trace)} improvements, "
      f"feasible={not validate(result.best_solution)}")
for r in result.best_solution.routes:
    if r.seq:
        print("  route:", " ".join(map(str, r.seq)))

times = [t for t, _ in result.trace]
costs = [c for _, c in result.trace]
plt.figure(figsize=(7, 4))
plt.step(times, costs, where="post", label="incumbent")
plt.axhline(best_known, color="red", linestyle="--", label="best known")
plt.xlabel("elapsed seconds")
plt.ylabel("cost")
plt.title(f"{inst.name} convergence")
plt.legend()
out = Path(__file__).with_name("convergence.png")
plt.savefig(out, dpi=120, bbox_inches="tight")
print(f"\nwrote {out}")
