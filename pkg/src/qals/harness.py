"""Experiment infrastructure: instance generation, oracle, replicated runs."""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace

import numpy as np

from .core import QalsParams, QuboProblem, TopologyGraph, objective
from .samplers import (
    ENUMERATION_LIMIT,
    ExactSampler,
    MetropolisSampler,
    RandomSampler,
    RemoteSampler,
    SaSchedule,
    _spin_block,
)
from .solver import solve
from .topology import chimera_graph, complete_graph, load_edge_list


def random_qubo(
    n: int, density: float, coeff_range: tuple, rng: np.random.Generator
) -> QuboProblem:
    """Random symmetric instance: each off-diagonal pair kept with
    probability ``density``, all values uniform over ``coeff_range``."""
    if n < 1:
        raise ValueError("n must be positive")
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    lo, hi = coeff_range
    if not lo < hi:
        raise ValueError("coefficient range must be a nonempty interval")
    diag = rng.uniform(lo, hi, size=n)
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(iu.size) < density
    vals = rng.uniform(lo, hi, size=iu.size)
    q = np.zeros((n, n))
    q[iu, ju] = np.where(keep, vals, 0.0)
    q += q.T
    np.fill_diagonal(q, diag)
    return QuboProblem(q)


def brute_force_min(problem: QuboProblem) -> tuple[np.ndarray, float]:
    """Exhaustive minimum of the objective.

    Returns the lexicographically smallest minimizer (-1 sorts before +1)
    and its objective value, re-evaluated through ``objective`` so equality
    comparisons against solver output see the same float path.
    """
    n = problem.n
    if n > ENUMERATION_LIMIT:
        raise ValueError(
            f"brute force supports at most {ENUMERATION_LIMIT} variables, got {n}"
        )
    # Over spins the diagonal of Q is a constant, so ranking states only needs
    # the doubled off-diagonal part.
    doubled = 2.0 * (problem.q - np.diag(np.diagonal(problem.q)))
    total = 1 << n
    step = min(total, 1 << 18)
    best_val = np.inf
    best_index = 0
    for start in range(0, total, step):
        block = _spin_block(n, start, min(start + step, total))
        vals = _block_energies_no_bias(doubled, block)
        local = int(np.argmin(vals))
        if vals[local] < best_val:
            best_val = vals[local]
            best_index = start + local
    z = _spin_block(n, best_index, best_index + 1)[0]
    return z, objective(problem, z)


def _block_energies_no_bias(sym: np.ndarray, block: np.ndarray) -> np.ndarray:
    zf = block.astype(np.float64)
    upper = np.triu(sym, k=1)
    return ((zf @ upper) * zf).sum(axis=1)


@dataclass
class ExperimentSpec:
    """One replicated-benchmark configuration.

    A single random instance is generated from ``params.seed``; replica r
    then solves it with seed ``params.seed + r``.
    """

    n: int
    density: float = 0.5
    coeff_range: tuple = (-1.0, 1.0)
    replicas: int = 10
    params: QalsParams = field(default_factory=QalsParams)
    backend: str = "sa"
    graph: str = "complete"
    success_stats: bool = True

    def __post_init__(self):
        if self.replicas < 1:
            raise ValueError("replicas must be at least 1")
        if not 0.0 < self.density <= 1.0:
            raise ValueError("density must lie in (0, 1]")
        if self.success_stats and self.n > ENUMERATION_LIMIT:
            raise ValueError(
                f"success statistics need the brute-force oracle, which supports "
                f"at most {ENUMERATION_LIMIT} variables (got n={self.n}); "
                f"set success_stats=false for larger instances"
            )


@dataclass
class ReplicaResult:
    replica: int
    seed: int
    f_best: float
    success: bool | None
    iters_to_opt: int | None
    millis: float


@dataclass
class ExperimentReport:
    spec: ExperimentSpec
    oracle_value: float | None
    replicas: list
    success_rate: float | None
    iters_to_opt_quantiles: dict


def make_sampler(selector: str):
    """Build a sampler from a CLI-style selector string."""
    if selector == "exact":
        return ExactSampler()
    if selector == "sa":
        return MetropolisSampler(SaSchedule())
    if selector == "random":
        return RandomSampler()
    if selector.startswith("remote:"):
        return RemoteSampler(selector.split(":", 1)[1])
    raise ValueError(f"unknown sampler selector {selector!r}")


def make_graph(selector: str, n: int) -> TopologyGraph:
    """Build a topology from a CLI-style selector string, checked against n."""
    if selector == "complete":
        return complete_graph(n)
    if selector.startswith("chimera:"):
        g = chimera_graph(int(selector.split(":", 1)[1]))
    elif selector.startswith("file:"):
        g = load_edge_list(selector.split(":", 1)[1])
    else:
        raise ValueError(f"unknown graph selector {selector!r}")
    if g.n != n:
        raise ValueError(f"graph has {g.n} nodes but the problem has {n} variables")
    return g


def run_experiment(spec: ExperimentSpec) -> ExperimentReport:
    """Run ``spec.replicas`` independently seeded solves on one random instance.

    Deterministic apart from the wall-time fields.
    """
    instance_rng = np.random.default_rng(spec.params.seed)
    problem = random_qubo(spec.n, spec.density, spec.coeff_range, instance_rng)
    graph = make_graph(spec.graph, spec.n)
    sampler = make_sampler(spec.backend)

    oracle_value = None
    if spec.success_stats:
        _, oracle_value = brute_force_min(problem)

    results = []
    for r in range(spec.replicas):
        seed = spec.params.seed + r
        t0 = time.perf_counter()
        try:
            report = solve(problem, graph, sampler, replace(spec.params, seed=seed))
        except Exception as exc:
            raise type(exc)(f"{exc} (replica {r})") from exc
        millis = (time.perf_counter() - t0) * 1e3
        success = None
        iters = None
        if oracle_value is not None:
            success = report.f_best == oracle_value
            iters = report.best_found_at if success else None
        results.append(
            ReplicaResult(
                replica=r,
                seed=seed,
                f_best=report.f_best,
                success=success,
                iters_to_opt=iters,
                millis=millis,
            )
        )

    success_rate = None
    if oracle_value is not None:
        success_rate = sum(1 for r in results if r.success) / len(results)
    found = sorted(r.iters_to_opt for r in results if r.iters_to_opt is not None)
    quantiles = {}
    if found:
        for label, qq in (("p25", 0.25), ("p50", 0.5), ("p75", 0.75), ("p90", 0.9)):
            quantiles[label] = float(np.quantile(found, qq))
    return ExperimentReport(
        spec=spec,
        oracle_value=oracle_value,
        replicas=results,
        success_rate=success_rate,
        iters_to_opt_quantiles=quantiles,
    )
