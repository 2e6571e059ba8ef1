"""Annealer topology constructors: complete graphs, Chimera grids, edge lists."""

from __future__ import annotations

import numpy as np

from .core import TopologyGraph


def _build(n: int, pairs) -> TopologyGraph:
    edges = set()
    for i, j in pairs:
        if i == j:
            raise ValueError(f"self-loop on node {i}")
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"edge ({i}, {j}) out of range for {n} nodes")
        edges.add((min(i, j), max(i, j)))
    mask = np.eye(n, dtype=np.float64)
    for i, j in edges:
        mask[i, j] = mask[j, i] = 1.0
    return TopologyGraph(n=n, edges=frozenset(edges), adjacency_mask=mask)


def complete_graph(n: int) -> TopologyGraph:
    """All-to-all connectivity on n nodes."""
    if n < 1:
        raise ValueError("node count must be positive")
    return _build(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def chimera_graph(m: int) -> TopologyGraph:
    """An m-by-m grid of K_{4,4} unit cells, 8*m^2 qubits in total.

    Cell (r, c) in row-major order holds qubits 8*(r*m + c) + t for
    t in 0..7; t in 0..3 is the left partition, 4..7 the right. Each cell
    is fully bipartite (16 edges). Left qubits couple to the same-position
    left qubit in the vertically adjacent cell, right qubits to the
    same-position right qubit in the horizontally adjacent cell.
    """
    if m < 1:
        raise ValueError("grid size must be positive")
    n = 8 * m * m
    pairs = []
    for r in range(m):
        for c in range(m):
            base = 8 * (r * m + c)
            for t in range(4):
                for u in range(4, 8):
                    pairs.append((base + t, base + u))
            if r + 1 < m:
                below = 8 * ((r + 1) * m + c)
                for t in range(4):
                    pairs.append((base + t, below + t))
            if c + 1 < m:
                right = 8 * (r * m + c + 1)
                for u in range(4, 8):
                    pairs.append((base + u, right + u))
    return _build(n, pairs)


def graph_from_edge_list(n: int, pairs) -> TopologyGraph:
    """Build a graph from explicit (i, j) pairs; duplicates collapse."""
    if n < 1:
        raise ValueError("node count must be positive")
    return _build(n, pairs)


def parse_edge_list(text: str) -> TopologyGraph:
    """Parse the line-oriented edge-list format.

    First non-comment line is ``n <count>``; each following line is ``i j``
    with 0-based node indices. ``#`` starts a comment.
    """
    n = None
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if n is None:
            if len(tokens) != 2 or tokens[0] != "n":
                raise ValueError(f"line {lineno}: expected header 'n <count>'")
            try:
                n = int(tokens[1])
            except ValueError:
                raise ValueError(f"line {lineno}: node count is not an integer") from None
            if n < 1:
                raise ValueError(f"line {lineno}: node count must be positive")
            continue
        if len(tokens) != 2:
            raise ValueError(f"line {lineno}: expected 'i j'")
        try:
            i, j = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise ValueError(f"line {lineno}: node indices are not integers") from None
        if i == j:
            raise ValueError(f"line {lineno}: self-loop on node {i}")
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"line {lineno}: edge ({i}, {j}) out of range for {n} nodes")
        pairs.append((i, j))
    if n is None:
        raise ValueError("missing header line 'n <count>'")
    return _build(n, pairs)


def load_edge_list(path) -> TopologyGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_edge_list(fh.read())
