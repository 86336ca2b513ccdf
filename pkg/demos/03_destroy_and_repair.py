"""One large-neighbourhood move, step by step.

Run from the repo root:  python demos/03_destroy_and_repair.py
"""

import numpy as np

from beesvrp import (
    clarke_wright,
    default_weights,
    destroy_random,
    destroy_shaw,
    parse_instance,
    repair,
)
from beesvrp.bench import data_path

inst = parse_instance((data_path() / "P01E51K05.txt").read_text())
w = default_weights(inst)
rng = np.random.default_rng(42)

start = clarke_wright(inst)
print(f"start: cost {start.total_cost():.2f}")

# Random destroy rips out customers uniformly; Shaw destroy prefers removing
# customers that are near each other or routed back to back, because related
# customers are the ones worth re-shuffling jointly.
for name, op in (("random", destroy_random), ("shaw", destroy_shaw)):
    destroyed = op(start, 15, rng)
    print(f"\n{name} destroy removed: {sorted(destroyed.removed)}")

    # Repair reinserts them one at a time at the cheapest position. The
    # `mu` argument widens how much of each candidate list is scanned;
    # full extent (n-1) means every routed neighbour is considered.
    repaired = repair(destroyed.partial, destroyed.removed, inst.n - 1, rng, w)
    print(f"after repair: cost {repaired.total_cost():.2f} "
          f"(start was {start.total_cost():.2f})")

# A single move rarely improves a good solution; the solvers apply thousands,
# keeping the winners. Chain a few accepted moves to see the costs fall:
current = start
best = current.total_cost()
for step in range(200):
    destroyed = destroy_random(current, int(rng.integers(5, 20)), rng)
    cand = repair(destroyed.partial, destroyed.removed, inst.n - 1, rng, w)
    if cand.fitness(w) < current.fitness(w):
        current = cand
        if current.total_cost() < best:
            best = current.total_cost()
            print(f"step {step:3d}: improved to {best:.2f}")
print(f"\nafter 200 moves: {best:.2f}")
