"""Annealer backends: exact enumeration, Metropolis chains, uniform noise, HTTP.

A sampler is anything with ``sample(theta, k, rng) -> (k, n) array`` of spin
rows. All local backends are deterministic functions of the rng state they
are handed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol

import numpy as np
import requests

from .core import SPIN_DTYPE, WeightMatrix, energy

ENUMERATION_LIMIT = 24
_BLOCK_BITS = 18  # states per enumeration block: 2**18


class SamplerError(Exception):
    """Base class for sampler failures."""


class CapacityError(SamplerError):
    """Problem too large for this backend."""


class TransportError(SamplerError):
    """The remote endpoint could not be reached."""


class MalformedResponseError(SamplerError):
    """The remote endpoint answered with a bad status or schema."""


class SampleShapeError(SamplerError):
    """A backend returned vectors of the wrong dimension."""


class Sampler(Protocol):
    def sample(self, theta: WeightMatrix, k: int, rng: np.random.Generator) -> np.ndarray:
        ...


def _spin_block(n: int, start: int, stop: int) -> np.ndarray:
    """Rows ``start..stop`` of the lexicographic enumeration of {-1,+1}^n.

    Index 0 is the all -1 vector and indices increase in lexicographic
    order with -1 < +1 (bit n-1-i of the index drives component i).
    """
    idx = np.arange(start, stop, dtype=np.int64)[:, None]
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    bits = (idx >> shifts) & 1
    return (2 * bits - 1).astype(SPIN_DTYPE)


def _block_energies(theta: WeightMatrix, block: np.ndarray) -> np.ndarray:
    zf = block.astype(np.float64)
    upper = np.triu(theta.theta, k=1)
    return zf @ theta.biases + ((zf @ upper) * zf).sum(axis=1)


def _check_enumerable(n: int):
    if n > ENUMERATION_LIMIT:
        raise CapacityError(
            f"exact enumeration supports at most {ENUMERATION_LIMIT} variables, "
            f"got {n}; use the Metropolis or remote backend instead"
        )


def exact_minimizers(theta: WeightMatrix) -> tuple[np.ndarray, float]:
    """Enumerate the full minimizer set of the energy landscape.

    Returns the minimizers as rows in lexicographic order together with the
    minimum energy. Only valid up to the enumeration limit.
    """
    n = theta.n
    _check_enumerable(n)
    total = 1 << n
    step = min(total, 1 << _BLOCK_BITS)
    best = np.inf
    rows = []
    for start in range(0, total, step):
        block = _spin_block(n, start, min(start + step, total))
        e = _block_energies(theta, block)
        block_min = e.min()
        if block_min < best:
            best = block_min
            rows = [block[e == block_min]]
        elif block_min == best:
            rows.append(block[e == best])
    return np.concatenate(rows, axis=0), float(best)


def exact_sample(theta: WeightMatrix, k: int, rng: np.random.Generator) -> np.ndarray:
    """Return k states drawn uniformly from the exact minimizer set.

    Enumerates all 2^n states in blocks; memory stays bounded even when the
    landscape is massively degenerate.
    """
    n = theta.n
    _check_enumerable(n)
    if k < 1:
        raise ValueError("k must be at least 1")
    total = 1 << n
    step = min(total, 1 << _BLOCK_BITS)

    if total == step:
        block = _spin_block(n, 0, total)
        e = _block_energies(theta, block)
        minima = np.flatnonzero(e == e.min())
        return block[minima[rng.integers(0, minima.size, size=k)]]

    # pass 1: global minimum and per-block minima
    block_minima = []
    best = np.inf
    for start in range(0, total, step):
        e = _block_energies(theta, _spin_block(n, start, min(start + step, total)))
        block_minima.append(e.min())
        best = min(best, block_minima[-1])

    # pass 2: count minimizers per block that can contain any
    counts = []
    for b, start in enumerate(range(0, total, step)):
        if block_minima[b] > best:
            counts.append(0)
            continue
        e = _block_energies(theta, _spin_block(n, start, min(start + step, total)))
        counts.append(int((e == best).sum()))
    cumulative = np.cumsum([0] + counts)
    num_min = int(cumulative[-1])

    # pass 3: map uniform ordinals back to states
    ordinals = rng.integers(0, num_min, size=k)
    out = np.empty((k, n), dtype=SPIN_DTYPE)
    for which, ordinal in enumerate(ordinals):
        b = int(np.searchsorted(cumulative, ordinal, side="right")) - 1
        start = b * step
        block = _spin_block(n, start, min(start + step, total))
        e = _block_energies(theta, block)
        local = np.flatnonzero(e == best)[ordinal - cumulative[b]]
        out[which] = block[local]
    return out


@dataclass
class SaSchedule:
    """Geometric inverse-temperature ramp for the Metropolis surrogate.

    When no explicit endpoints are given they are derived from the weights:
    hot enough to accept the worst single-spin move about half the time,
    cold enough to freeze the smallest nonzero single-spin gap.
    """

    sweeps: int = 100
    beta_start: float | None = None
    beta_end: float | None = None

    def __post_init__(self):
        if self.sweeps < 1:
            raise ValueError("sweeps must be at least 1")
        if (self.beta_start is None) != (self.beta_end is None):
            raise ValueError("give both beta endpoints or neither")
        if self.beta_start is not None:
            if not 0.0 < self.beta_start <= self.beta_end:
                raise ValueError("need 0 < beta_start <= beta_end")

    def betas(self, theta: WeightMatrix) -> np.ndarray:
        if self.beta_start is not None:
            lo, hi = self.beta_start, self.beta_end
        else:
            lo, hi = _auto_beta_range(theta.theta)
        return np.geomspace(lo, hi, self.sweeps)


def _auto_beta_range(theta: np.ndarray) -> tuple[float, float]:
    magnitudes = np.abs(theta)
    biases = np.diagonal(magnitudes)
    couplings = magnitudes - np.diag(biases)
    max_gain = 2.0 * (biases + couplings.sum(axis=1)).max()
    if max_gain == 0.0:
        return 1.0, 1.0
    nonzero = magnitudes[magnitudes > 0.0]
    min_gap = 2.0 * nonzero.min()
    hot = np.log(2.0) / max_gain
    cold = max(np.log(100.0) / min_gap, hot)
    return hot, cold


def metropolis_sample(
    theta: WeightMatrix, k: int, schedule: SaSchedule, rng: np.random.Generator
) -> np.ndarray:
    """Run k independent annealed Metropolis chains and return their endpoints.

    Each chain starts from a uniform random state and performs one single-spin
    update per variable per sweep; the flip cost uses only the spin's bias and
    incident couplings. The k chains advance in lockstep so the whole call is
    one deterministic function of the rng state.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    n = theta.n
    couplings = theta.theta.copy()
    np.fill_diagonal(couplings, 0.0)
    biases = theta.biases.copy()

    states = (2 * rng.integers(0, 2, size=(k, n)) - 1).astype(np.float64)
    for beta in schedule.betas(theta):
        for i in range(n):
            local = states @ couplings[i]
            delta = -2.0 * states[:, i] * (biases[i] + local)
            u = rng.random(k)
            accept = (delta <= 0.0) | (u < np.exp(-beta * np.maximum(delta, 0.0)))
            states[accept, i] = -states[accept, i]
    return states.astype(SPIN_DTYPE)


def random_sample(n: int, k: int, rng: np.random.Generator) -> np.ndarray:
    """k uniform random spin vectors."""
    if k < 1:
        raise ValueError("k must be at least 1")
    return (2 * rng.integers(0, 2, size=(k, n)) - 1).astype(SPIN_DTYPE)


def scale_to_ranges(theta: WeightMatrix, delta: float, gamma: float) -> WeightMatrix:
    """Rescale weights so biases fill [-delta, delta] and couplings [-gamma, gamma].

    Divides by the smallest factor that brings every entry inside its range,
    so at least one bound is attained; positive scaling leaves the minimizer
    set untouched. A zero matrix is returned unchanged.
    """
    if delta <= 0 or gamma <= 0:
        raise ValueError("range bounds must be positive")
    biases = np.abs(theta.biases)
    upper = np.abs(np.triu(theta.theta, k=1))
    c = max(biases.max() / delta, upper.max() / gamma)
    if c == 0.0:
        return theta
    return WeightMatrix(theta.theta / c, theta.graph)


def _validate_samples(samples: np.ndarray, n: int, k: int) -> np.ndarray:
    samples = np.asarray(samples)
    if samples.shape != (k, n):
        raise SampleShapeError(
            f"backend returned shape {samples.shape}, expected ({k}, {n})"
        )
    if not np.all(np.abs(samples) == 1):
        raise SampleShapeError("backend returned entries other than -1/+1")
    return samples.astype(SPIN_DTYPE)


def estimate_argmin(
    sampler: Sampler, theta: WeightMatrix, k: int, rng: np.random.Generator
) -> np.ndarray:
    """Draw k samples and keep the lowest-energy one (first on ties)."""
    samples = _validate_samples(sampler.sample(theta, k, rng), theta.n, k)
    energies = [energy(theta, s) for s in samples]
    return samples[int(np.argmin(energies))]


@dataclass
class ExactSampler:
    """Oracle backend: every sample is a true minimizer of the landscape."""

    def sample(self, theta, k, rng):
        return exact_sample(theta, k, rng)


@dataclass
class MetropolisSampler:
    """Classical annealed-chain surrogate for the hardware."""

    schedule: SaSchedule = None

    def __post_init__(self):
        if self.schedule is None:
            self.schedule = SaSchedule()

    def sample(self, theta, k, rng):
        return metropolis_sample(theta, k, self.schedule, rng)


@dataclass
class RandomSampler:
    """Worst-case backend: ignores the landscape entirely."""

    def sample(self, theta, k, rng):
        return random_sample(theta.n, k, rng)


class RemoteSampler:
    """Client for a JSON-over-HTTP sampling service.

    ``GET {endpoint}/info`` advertises the service's weight ranges; weights
    are rescaled client-side before each ``POST {endpoint}/sample``. No
    retries: transport failures surface immediately.
    """

    def __init__(self, endpoint: str, timeout: float = 30.0):
        self.endpoint = endpoint.rstrip("/")
        self.timeout = timeout
        self._info = None

    def info(self) -> dict:
        if self._info is None:
            try:
                r = requests.get(f"{self.endpoint}/info", timeout=self.timeout)
            except requests.RequestException as exc:
                raise TransportError(f"cannot reach {self.endpoint}/info: {exc}") from exc
            self._info = self._parse_info(r)
        return self._info

    @staticmethod
    def _parse_info(r) -> dict:
        if r.status_code != 200:
            raise MalformedResponseError(f"info returned status {r.status_code}")
        try:
            payload = r.json()
            return {
                "delta": float(payload["delta"]),
                "gamma": float(payload["gamma"]),
                "topology": str(payload["topology"]),
                "max_nodes": int(payload["max_nodes"]),
            }
        except (ValueError, KeyError, TypeError) as exc:
            raise MalformedResponseError(f"bad info payload: {exc}") from exc

    def sample(self, theta: WeightMatrix, k: int, rng=None) -> np.ndarray:
        info = self.info()
        n = theta.n
        if n > info["max_nodes"]:
            raise CapacityError(
                f"service accepts at most {info['max_nodes']} nodes, got {n}"
            )
        scaled = scale_to_ranges(theta, info["delta"], info["gamma"])
        couplings = [
            [int(i), int(j), float(scaled.theta[i, j])]
            for i, j in sorted(scaled.graph.edges)
            if scaled.theta[i, j] != 0.0
        ]
        request = {
            "n": n,
            "biases": [float(b) for b in scaled.biases],
            "couplings": couplings,
            "num_reads": int(k),
        }
        try:
            r = requests.post(
                f"{self.endpoint}/sample", json=request, timeout=self.timeout
            )
        except requests.RequestException as exc:
            raise TransportError(f"cannot reach {self.endpoint}/sample: {exc}") from exc
        if r.status_code != 200:
            raise MalformedResponseError(f"sample returned status {r.status_code}")
        try:
            payload = r.json()
            samples = np.asarray(payload["samples"], dtype=np.int64)
            energies = [float(e) for e in payload["energies"]]
        except (ValueError, KeyError, TypeError) as exc:
            raise MalformedResponseError(f"bad sample payload: {exc}") from exc
        if samples.ndim != 2 or samples.shape[1] != n:
            raise SampleShapeError(
                f"service returned vectors of length "
                f"{samples.shape[1] if samples.ndim == 2 else '?'}, expected {n}"
            )
        if samples.shape[0] != k or len(energies) != samples.shape[0]:
            raise MalformedResponseError(
                f"service returned {samples.shape[0]} samples and "
                f"{len(energies)} energies for {k} reads"
            )
        if not np.all(np.abs(samples) == 1):
            raise MalformedResponseError("service returned entries other than -1/+1")
        return samples.astype(SPIN_DTYPE)


def remote_sample(endpoint: str, theta: WeightMatrix, k: int) -> np.ndarray:
    """One-shot convenience wrapper around RemoteSampler."""
    return RemoteSampler(endpoint).sample(theta, k)
