"""Walk through the two-qubit learning story behind the solver.

A rejected candidate seeds the tabu matrix; reading that matrix as annealer
weights makes the rejected state energetically expensive, so the next
annealing run is steered elsewhere. Accumulating a second rejected candidate
sharpens the picture further.
"""

import numpy as np

from qals import WeightMatrix, complete_graph, exact_minimizers, tabu_init, tabu_update

graph = complete_graph(2)


def show(tag, tabu):
    w = WeightMatrix(tabu.s.astype(float), graph)
    minimizers, emin = exact_minimizers(w)
    print(f"{tag}: biases ({tabu.s[0, 0]}, {tabu.s[1, 1]}), coupling {tabu.s[0, 1]}")
    print(f"  lowest energy {emin} at {[tuple(int(v) for v in z) for z in minimizers]}")


print("Reject the candidate (1, -1); it becomes the first tabu entry.")
tabu = tabu_init(np.array([1, -1]))
show("after one rejection", tabu)
print("  -> (1, -1) itself now costs 3, every other state costs -1\n")

print("Reject (1, 1) as well (say a better state displaced it).")
tabu = tabu_update(tabu, np.array([1, 1]))
show("after two rejections", tabu)
print("  -> the energy landscape reduces to z1: both remaining states",
      "(-1, 1) and (-1, -1) stay cheapest")
