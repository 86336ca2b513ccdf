"""Building first solutions: savings merges versus random seeding.

Run from the repo root:  python demos/02_construction_heuristics.py
"""

import numpy as np

from beesvrp import clarke_wright, parse_instance, random_seed_insertion, validate
from beesvrp.bench import data_path
from beesvrp.construct import savings_list

inst = parse_instance((data_path() / "P01E51K05.txt").read_text())

# The savings list pairs customers by how much linking them saves over two
# separate out-and-back trips.
top = savings_list(inst)[:5]
print("largest savings:")
for e in top:
    print(f"  join {e.i:>3} and {e.j:>3}: saves {e.saving:7.2f}")

# Walking that list under the three merge rules gives the classic result.
for mode in ("parallel", "sequential"):
    sol = clarke_wright(inst, mode)
    routes = [r for r in sol.routes if r.seq]
    print(f"\nclarke-wright {mode}: {len(routes)} routes, "
          f"cost {sol.total_cost():.2f}, violations {len(validate(sol))}")

# The bees engine instead seeds routes with random customers and fills the
# rest by cheapest insertion; quality varies with the seed, and that's the
# point: each site starts somewhere else.
print("\nrandom seed insertion from five seeds:")
for seed in range(5):
    sol = random_seed_insertion(inst, np.random.default_rng(seed))
    print(f"  seed {seed}: cost {sol.total_cost():8.2f} "
          f"feasible={not validate(sol)}")
