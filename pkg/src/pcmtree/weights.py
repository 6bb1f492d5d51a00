"""Priority vectors derived from pairwise comparison matrices."""

from __future__ import annotations

from collections import deque
from typing import NamedTuple

import numpy as np

from .errors import EdgeNotInMatrix, IncompleteMatrix, NonConvergence, TreeCountExceedsCap
from .graph import SpanningTree, default_tree_cap, enumerate_spanning_trees, induce_graph

EVM_TOL = 1e-12
EVM_MAX_ITER = 10_000


class EigenResult(NamedTuple):
    lambda_max: float
    vector: np.ndarray
    iterations: int


def _require_complete(m, what):
    if not m.complete:
        raise IncompleteMatrix(f"{what} needs a complete matrix")


def evm_weights(m, tol: float = EVM_TOL, max_iter: int = EVM_MAX_ITER) -> EigenResult:
    """Principal eigenpair by power iteration, vector normalized to unit sum.

    Starts from the uniform vector and rescales by the largest component each
    step, so the rescaling factor converges to the principal eigenvalue.
    """
    _require_complete(m, "the eigenvector method")
    a = m.values
    x = np.ones(m.n)
    lam = 0.0
    for it in range(1, max_iter + 1):
        y = a @ x
        new_lam = y.max()
        x = y / new_lam
        if abs(new_lam - lam) < tol * max(1.0, new_lam):
            return EigenResult(float(new_lam), x / x.sum(), it)
        lam = new_lam
    raise NonConvergence(f"power iteration did not converge in {max_iter} iterations")


def gmm_weights(m) -> np.ndarray:
    """Normalized geometric means of the rows."""
    _require_complete(m, "the geometric mean method")
    logs = np.log(m.values).mean(axis=1)
    w = np.exp(logs - logs.max())
    return w / w.sum()


def tree_weights(tree: SpanningTree, m) -> np.ndarray:
    """The weight vector fixed by the ratios on a spanning tree's edges.

    Vertex 0 gets weight 1 and ``w_j = w_i / m_ij`` is propagated outwards.
    """
    n = m.n
    adj: list[list[int]] = [[] for _ in range(n)]
    for i, j in tree.edges:
        if m.entry(i, j) is None:
            raise EdgeNotInMatrix(f"tree edge {i + 1}-{j + 1} is a missing comparison")
        adj[i].append(j)
        adj[j].append(i)
    w = np.full(n, np.nan)
    w[0] = 1.0
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if np.isnan(w[v]):
                w[v] = w[u] / m.values[u, v]
                queue.append(v)
    if np.isnan(w).any():
        raise ValueError("edge set does not span the matrix's alternatives")
    return w / w.sum()


def _tree_incidence(n: int, index: dict, tree: SpanningTree) -> np.ndarray:
    """Row v holds the signed edge combination giving ``log w_v - log w_0``."""
    adj: list[list[int]] = [[] for _ in range(n)]
    for i, j in tree.edges:
        adj[i].append(j)
        adj[j].append(i)
    rows = np.zeros((n, len(index)), dtype=np.int8)
    seen = [False] * n
    seen[0] = True
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                # log w_v = log w_u - log m_uv, and m_uv = label or 1/label
                rows[v] = rows[u]
                if u < v:
                    rows[v, index[u, v]] -= 1
                else:
                    rows[v, index[v, u]] += 1
                queue.append(v)
    return rows


_CACHE_CELLS = 4_000_000
_incidence_cache: dict = {}


def incidence_blocks(g, cap: int | None = None, chunk: int = 4096):
    """Tree incidence arrays of shape (trees, n, edges), in enumeration order.

    Structures small enough are computed once and cached, which is what makes
    scoring many matrices with the same comparison pattern cheap.
    """
    key = (g.n, tuple(g.pairs))
    cached = _incidence_cache.get(key)
    if cached is not None:
        limit = default_tree_cap() if cap is None else cap
        if cached.shape[0] > limit:
            raise TreeCountExceedsCap(cached.shape[0], limit)
        yield cached
        return
    trees = enumerate_spanning_trees(g, cap)
    index = {p: k for k, p in enumerate(g.pairs)}
    blocks = []
    buf = []
    small = True
    for tree in trees:
        buf.append(_tree_incidence(g.n, index, tree))
        if len(buf) == chunk:
            block = np.stack(buf)
            buf = []
            if small:
                blocks.append(block)
                small = sum(b.size for b in blocks) <= _CACHE_CELLS
                if not small:
                    yield from blocks
                    blocks = []
            else:
                yield block
    if buf:
        block = np.stack(buf)
        if small:
            blocks.append(block)
        else:
            yield block
    if small:
        whole = np.concatenate(blocks) if len(blocks) > 1 else blocks[0]
        whole.setflags(write=False)
        if whole.size <= _CACHE_CELLS:
            _incidence_cache[key] = whole
        yield whole


def tree_log_weights(m, cap: int | None = None):
    """Yield blocks of log normalized tree weight vectors, one row per tree."""
    g = induce_graph(m)
    logm = np.log(np.array([lab for _, _, lab in g.edges], dtype=float))
    for block in incidence_blocks(g, cap):
        lw = block @ logm if logm.size else np.zeros(block.shape[:2])
        top = lw.max(axis=1, keepdims=True)
        lw = lw - (top + np.log(np.exp(lw - top).sum(axis=1, keepdims=True)))
        yield lw


def gmt_weights(m, cap: int | None = None) -> np.ndarray:
    """Normalized geometric mean of the weight vectors of all spanning trees."""
    total = np.zeros(m.n)
    count = 0
    for block in tree_log_weights(m, cap):
        total += block.sum(axis=0)
        count += block.shape[0]
    logs = total / count
    w = np.exp(logs - logs.max())
    return w / w.sum()


def normalize(w) -> np.ndarray:
    w = np.asarray(w, dtype=float)
    return w / w.sum()
