"""End-to-end solve of a random QUBO, checked against the brute-force oracle."""

import numpy as np

from qals import (
    ExactSampler,
    QalsParams,
    brute_force_min,
    complete_graph,
    random_qubo,
    solve,
)

n = 12
problem = random_qubo(n, 0.5, (-1.0, 1.0), np.random.default_rng(3))
graph = complete_graph(n)
z_opt, f_opt = brute_force_min(problem)
print(f"oracle minimum over 2^{n} states: {f_opt:.4f}")

params = QalsParams(i_max=300, seed=4)
report = solve(problem, graph, ExactSampler(), params, record_trace=True)

print(f"solver best:  {report.f_best:.4f}  (found at iteration {report.best_found_at})")
print(f"returned:     {report.f_returned:.4f}  after {report.iterations} iterations")
print(f"objective evaluations: {report.evaluations}, tabu entries: {report.tabu.m}")
print("optimal?", report.f_best == f_opt)

print("\nshuffle probability p cools toward its floor while the tabu weight fades:")
for t in report.trace[:: max(1, report.iterations // 8)]:
    state = "improved" if t["improved"] else ("accepted" if t["accepted"] else "kept")
    f_str = "     --" if t["f_prime"] is None else f"{t['f_prime']:7.3f}"
    print(f"  i={t['i']:3d}  p={t['p']:.3f}  lambda={t['lam']:.4f}  f'={f_str}  {state}")
