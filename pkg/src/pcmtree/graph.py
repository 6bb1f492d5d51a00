"""Comparison graphs, spanning-tree counting and enumeration.

Vertices are 0-based here; the CLI converts to 1-based labels.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import DisconnectedGraph, TreeCountExceedsCap

DEFAULT_TREE_CAP = 10**7


def default_tree_cap() -> int:
    """Enumeration cap, overridable through the PCM_TREE_CAP environment variable."""
    raw = os.environ.get("PCM_TREE_CAP")
    return int(raw) if raw else DEFAULT_TREE_CAP


class _DSU:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def _connected(n: int, pairs) -> bool:
    dsu = _DSU(n)
    components = n
    for i, j in pairs:
        if dsu.union(i, j):
            components -= 1
    return components <= 1


@dataclass(frozen=True)
class ComparisonGraph:
    n: int
    edges: tuple  # of (i, j, label) with i < j, sorted

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j, _ in self.edges]

    def is_connected(self) -> bool:
        return _connected(self.n, self.pairs)

    def label(self, i: int, j: int) -> float:
        """Ratio ``m_ij`` read off the edge, for either orientation."""
        for a, b, lab in self.edges:
            if (a, b) == (i, j):
                return lab
            if (a, b) == (j, i):
                return 1.0 / lab
        raise KeyError((i, j))


@dataclass(frozen=True)
class SpanningTree:
    edges: tuple  # of (i, j) with i < j, sorted

    def __len__(self):
        return len(self.edges)


def induce_graph(m) -> ComparisonGraph:
    v = m.values
    edges = tuple((i, j, float(v[i, j])) for i, j in m.known_pairs())
    return ComparisonGraph(m.n, edges)


def complete_graph(n: int) -> ComparisonGraph:
    return ComparisonGraph(n, tuple((i, j, 1.0) for i in range(n) for j in range(i + 1, n)))


def laplacian(g: ComparisonGraph) -> np.ndarray:
    lap = np.zeros((g.n, g.n), dtype=np.int64)
    for i, j, _ in g.edges:
        lap[i, j] -= 1
        lap[j, i] -= 1
        lap[i, i] += 1
        lap[j, j] += 1
    return lap


def bareiss_determinant(a) -> int:
    """Exact determinant of an integer matrix by fraction-free elimination."""
    a = [[int(x) for x in row] for row in a]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def count_spanning_trees(g: ComparisonGraph, vertex: int = 0) -> int:
    """Number of spanning trees, as the cofactor of ``vertex`` in the Laplacian."""
    if g.n == 1:
        return 1
    lap = laplacian(g)
    keep = [k for k in range(g.n) if k != vertex]
    return bareiss_determinant(lap[np.ix_(keep, keep)].tolist())


def enumerate_spanning_trees(g: ComparisonGraph, cap: int | None = None) -> Iterator[SpanningTree]:
    """Yield every spanning tree of ``g`` exactly once.

    Branches on the edges in order: each edge is either contracted into the
    partial tree or deleted, and deletion is only explored while the edge is
    not a bridge of what remains, so every leaf of the search is a tree.
    """
    if cap is None:
        cap = default_tree_cap()
    if not g.is_connected():
        raise DisconnectedGraph(f"comparison graph on {g.n} vertices is not connected")
    count = count_spanning_trees(g)
    if count > cap:
        raise TreeCountExceedsCap(count, cap)
    return _enumerate(g.n, g.pairs)


def _enumerate(n: int, pairs: list[tuple[int, int]]) -> Iterator[SpanningTree]:
    chosen: list[tuple[int, int]] = []
    m = len(pairs)
    # union-find over contracted vertices, without path compression so merges can be undone
    parent = list(range(n))
    size = [1] * n

    def root(x):
        while parent[x] != x:
            x = parent[x]
        return x

    def rec(k: int):
        if len(chosen) == n - 1:
            yield SpanningTree(tuple(chosen))
            return
        if k == m:
            return
        i, j = pairs[k]
        ri, rj = root(i), root(j)
        if ri == rj:
            # closes a cycle with the contracted part, so it can only be deleted
            yield from rec(k + 1)
            return
        if size[ri] > size[rj]:
            ri, rj = rj, ri
        parent[ri] = rj
        size[rj] += size[ri]
        chosen.append((i, j))
        yield from rec(k + 1)
        chosen.pop()
        size[rj] -= size[ri]
        parent[ri] = ri
        # deleting a bridge would leave no spanning tree below this branch
        if _connected(n, chosen + pairs[k + 1:]):
            yield from rec(k + 1)

    yield from rec(0)


def is_spanning_tree(n: int, pairs) -> bool:
    """Independent check: exactly n-1 distinct edges that connect all vertices."""
    pairs = list(pairs)
    return len(pairs) == n - 1 and len(set(pairs)) == len(pairs) and _connected(n, pairs)
