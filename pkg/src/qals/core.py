"""Domain types and exact algebra: objectives, energies, tabu matrices, encodings.

Spin vectors are plain 1-D integer numpy arrays with entries in {-1, +1}.
Permutations are 1-D integer arrays holding the image of each index:
``sigma[i]`` is the qubit that hosts logical variable ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

SPIN_DTYPE = np.int8


def as_spins(values) -> np.ndarray:
    """Validate and return a spin vector (every entry -1 or +1)."""
    z = np.asarray(values)
    if z.ndim != 1 or z.size == 0:
        raise ValueError("spin vector must be a non-empty 1-D array")
    if not np.all(np.abs(z) == 1):
        raise ValueError("spin entries must be -1 or +1")
    return z.astype(SPIN_DTYPE)


def is_permutation(sigma: np.ndarray) -> bool:
    sigma = np.asarray(sigma)
    return sigma.ndim == 1 and np.array_equal(np.sort(sigma), np.arange(sigma.size))


def identity_permutation(n: int) -> np.ndarray:
    return np.arange(n, dtype=np.int64)


@dataclass
class QuboProblem:
    """A QUBO instance: minimize z^T Q z over z in {-1,+1}^n, Q symmetric."""

    q: np.ndarray

    def __post_init__(self):
        q = np.asarray(self.q, dtype=np.float64)
        if q.ndim != 2 or q.shape[0] != q.shape[1] or q.shape[0] < 1:
            raise ValueError("Q must be a square matrix with n >= 1")
        if not np.array_equal(q, q.T):
            raise ValueError("Q must be symmetric")
        self.q = q

    @property
    def n(self) -> int:
        return self.q.shape[0]


@dataclass
class TopologyGraph:
    """Undirected hardware graph with a 0/1 adjacency mask (unit diagonal).

    The diagonal of the mask is all ones so that encoding keeps linear bias
    terms; off-diagonal entries are 1 exactly on the edge set.
    """

    n: int
    edges: frozenset
    adjacency_mask: np.ndarray

    def __post_init__(self):
        mask = np.asarray(self.adjacency_mask, dtype=np.float64)
        if mask.shape != (self.n, self.n):
            raise ValueError("adjacency mask shape does not match node count")
        if not np.array_equal(mask, mask.T):
            raise ValueError("adjacency mask must be symmetric")
        if not np.all(np.diagonal(mask) == 1.0):
            raise ValueError("adjacency mask must have a unit diagonal")
        self.adjacency_mask = mask

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degree(self, i: int) -> int:
        return int(self.adjacency_mask[i].sum()) - 1


@dataclass
class WeightMatrix:
    """Annealer weights: diagonal entries are biases, off-diagonal couplings.

    Off-diagonal entries must vanish outside the support graph's edge set.
    """

    theta: np.ndarray
    graph: TopologyGraph

    def __post_init__(self):
        theta = np.asarray(self.theta, dtype=np.float64)
        n = self.graph.n
        if theta.shape != (n, n):
            raise ValueError("weight matrix shape does not match graph")
        if not np.array_equal(theta, theta.T):
            raise ValueError("weight matrix must be symmetric")
        off_support = (self.graph.adjacency_mask == 0) & (theta != 0.0)
        if off_support.any():
            raise ValueError("weight matrix has couplings outside the edge set")
        self.theta = theta

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def biases(self) -> np.ndarray:
        return np.diagonal(self.theta)


@dataclass
class TabuMatrix:
    """Integer symmetric matrix accumulating penalties for rejected candidates.

    ``m`` counts accumulated candidates; every entry has absolute value at
    most ``m`` and the same parity as ``m``.
    """

    s: np.ndarray
    m: int = 0

    def __post_init__(self):
        s = np.asarray(self.s, dtype=np.int64)
        if s.ndim != 2 or s.shape[0] != s.shape[1]:
            raise ValueError("tabu matrix must be square")
        if not np.array_equal(s, s.T):
            raise ValueError("tabu matrix must be symmetric")
        self.s = s

    @property
    def n(self) -> int:
        return self.s.shape[0]

    @classmethod
    def zeros(cls, n: int) -> "TabuMatrix":
        return cls(np.zeros((n, n), dtype=np.int64), m=0)


@dataclass
class QalsParams:
    """Tunable knobs of the learning search loop.

    Defaults are desk-scale choices; see README for their calibration.
    """

    p_delta: float = 0.1
    eta: float = 0.01
    q: float = 0.2
    N: int = 10
    lambda0: float = 1.0
    k: int = 10
    i_max: int = 1000
    N_max: int = 100
    d_min: int = 20
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.p_delta < 0.5:
            raise ValueError("p_delta must lie in (0, 0.5)")
        if not 0.0 < self.eta < 1.0:
            raise ValueError("eta must lie in (0, 1)")
        if not 0.0 < self.q <= 1.0:
            raise ValueError("q must lie in (0, 1]")
        if self.lambda0 <= 0.0:
            raise ValueError("lambda0 must be positive")
        for name in ("N", "k", "i_max", "N_max", "d_min"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be a positive integer")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")


@dataclass
class SolveReport:
    """Outcome of one solver run.

    ``z_returned`` is the loop's final current solution, which the acceptance
    rule may have left above the best candidate ever evaluated; ``z_best``
    tracks that best candidate. ``best_found_at`` is 0 when the best candidate
    appeared during initialization, otherwise the 1-based iteration count at
    which it was first evaluated.
    """

    z_returned: np.ndarray
    f_returned: float
    z_best: np.ndarray
    f_best: float
    iterations: int
    evaluations: int
    best_found_at: int
    tabu: TabuMatrix
    seed: int
    trace: list | None = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return self.z_best.size


def objective(problem: QuboProblem, z: np.ndarray) -> float:
    """Evaluate f(z) = z^T Q z."""
    z = np.asarray(z)
    if z.shape != (problem.n,):
        raise ValueError(f"spin vector has length {z.size}, problem expects {problem.n}")
    zf = z.astype(np.float64)
    return float(zf @ problem.q @ zf)


def energy(theta: WeightMatrix, z: np.ndarray) -> float:
    """Evaluate the annealer cost: sum of biases plus one term per edge."""
    z = np.asarray(z)
    if z.shape != (theta.n,):
        raise ValueError(f"spin vector has length {z.size}, weights expect {theta.n}")
    zf = z.astype(np.float64)
    upper = np.triu(theta.theta, k=1)
    return float(theta.biases @ zf + zf @ upper @ zf)


def _tabu_term(z: np.ndarray) -> np.ndarray:
    # z (x) z - I + diag(z): off-diagonal z_i z_j, diagonal z_i
    z = np.asarray(z, dtype=np.int64)
    term = np.outer(z, z)
    np.fill_diagonal(term, z)
    return term


def tabu_init(z: np.ndarray) -> TabuMatrix:
    """Start a tabu matrix from one rejected candidate."""
    z = as_spins(z)
    return TabuMatrix(_tabu_term(z), m=1)


def tabu_update(s: TabuMatrix, z: np.ndarray) -> TabuMatrix:
    """Fold one more rejected candidate into the tabu matrix."""
    z = as_spins(z)
    if z.size != s.n:
        raise ValueError(f"spin vector has length {z.size}, tabu matrix expects {s.n}")
    return TabuMatrix(s.s + _tabu_term(z), m=s.m + 1)


def conjugate_tabu(s: TabuMatrix, sigma: np.ndarray) -> TabuMatrix:
    """Relabel the tabu matrix so entry (i, j) moves to (sigma[i], sigma[j]).

    Equals the tabu matrix that the sigma-relabeled candidates would have
    generated directly.
    """
    sigma = np.asarray(sigma)
    if sigma.size != s.n or not is_permutation(sigma):
        raise ValueError("sigma is not a permutation of the tabu matrix's indices")
    out = np.zeros_like(s.s)
    out[np.ix_(sigma, sigma)] = s.s
    return TabuMatrix(out, m=s.m)


def encode(qprime: np.ndarray, sigma: np.ndarray, graph: TopologyGraph) -> WeightMatrix:
    """Map a symmetric coefficient matrix onto the hardware graph.

    Logical variable i is assigned to qubit sigma[i]; entries landing outside
    the edge set are masked away (the unit diagonal keeps every bias).
    """
    qprime = np.asarray(qprime, dtype=np.float64)
    n = graph.n
    if qprime.shape != (n, n):
        raise ValueError(f"coefficient matrix is {qprime.shape}, graph has {n} nodes")
    sigma = np.asarray(sigma)
    if sigma.size != n or not is_permutation(sigma):
        raise ValueError("sigma is not a permutation of the graph's nodes")
    theta = np.zeros((n, n), dtype=np.float64)
    theta[np.ix_(sigma, sigma)] = qprime
    theta *= graph.adjacency_mask
    return WeightMatrix(theta, graph)


def decode(y: np.ndarray, sigma: np.ndarray) -> np.ndarray:
    """Read a qubit-ordered sample back into logical variable order."""
    y = np.asarray(y)
    sigma = np.asarray(sigma)
    if y.size != sigma.size or not is_permutation(sigma):
        raise ValueError("sigma is not a permutation of the sample's indices")
    return y[sigma]
