"""Loading problem files and poking at the derived structures.

Run from the repo root:  python demos/01_instances_and_distances.py
"""

import numpy as np

from beesvrp import Metric, parse_instance
from beesvrp.bench import data_path

# The package bundles the classic benchmark files in a simple text format.
text = (data_path() / "P01E51K05.txt").read_text()
inst = parse_instance(text)
print(inst)
print(f"total demand {inst.total_demand():g} over capacity {inst.capacity:g} "
      f"-> at least {int(np.ceil(inst.total_demand() / inst.capacity))} routes")

# Distances come pre-built as a dense symmetric matrix, index 0 = depot.
print("\ndepot -> customer 1:", inst.distance_between(0, 1))
print("matrix is symmetric:", np.allclose(inst.dist, inst.dist.T))

# Every vertex also carries a candidate list: all other customers ordered by
# increasing distance. The repair operator scans a prefix of this list.
lv = inst.candidate_lists[1]
print("\nfive nearest neighbours of customer 1:", lv[:5].tolist())
print("their distances:", np.round(inst.dist[1, lv[:5]], 2).tolist())

# The same file parsed under the taxicab metric yields different costs.
manhattan = parse_instance(text, Metric.MANHATTAN)
print("\neuclidean vs manhattan depot->1:",
      round(inst.distance_between(0, 1), 2),
      round(manhattan.distance_between(0, 1), 2))
