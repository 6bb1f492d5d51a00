"""Inconsistency indices.

The two spanning-tree indices compare every tree's priority vector with the
geometric-mean aggregate over all trees: MII by averaged Manhattan distance of
the weights, KII by Kendall distance of the induced rankings.  The classical
indices (CI, GCI, HCI, Koczkodaj, Golden-Wang, relative error) are defined for
complete matrices only.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal, NamedTuple

import numpy as np

from .errors import IncompleteMatrix, LengthMismatch, TooSmall
from .weights import evm_weights, gmm_weights, tree_log_weights

TIE_TOL = 1e-9


def amd(v, w) -> float:
    """Averaged Manhattan distance ``sum |v_i - w_i| / n``."""
    v = np.asarray(v, dtype=float)
    w = np.asarray(w, dtype=float)
    if v.shape != w.shape:
        raise LengthMismatch(f"vectors have lengths {v.size} and {w.size}")
    return float(np.abs(v - w).sum() / v.size)


def order_vectors(weights, tie_tol: float = TIE_TOL) -> np.ndarray:
    """Dense rankings of each row of ``weights`` (1 = largest weight).

    Neighbouring weights in sorted order share a rank when they differ by at
    most ``tie_tol`` relative to the larger one.
    """
    w = np.atleast_2d(np.asarray(weights, dtype=float))
    idx = np.argsort(-w, axis=1, kind="stable")
    srt = np.take_along_axis(w, idx, axis=1)
    gaps = (srt[:, :-1] - srt[:, 1:]) > tie_tol * np.abs(srt[:, :-1])
    ranks_sorted = np.ones_like(idx)
    ranks_sorted[:, 1:] += np.cumsum(gaps, axis=1)
    ranks = np.empty_like(idx)
    np.put_along_axis(ranks, idx, ranks_sorted, axis=1)
    return ranks


def order_vector(w, tie_tol: float = TIE_TOL) -> np.ndarray:
    return order_vectors(w, tie_tol)[0]


@lru_cache(maxsize=None)
def _pair_index(n: int):
    if n < 2:
        return np.zeros(0, dtype=int), np.zeros(0, dtype=int)
    i, j = np.array(list(itertools.combinations(range(n), 2))).T
    return i, j


def _kendall_many(ps: np.ndarray, q: np.ndarray) -> np.ndarray:
    i, j = _pair_index(q.size)
    sp = np.sign(ps[:, i] - ps[:, j])
    sq = np.sign(q[i] - q[j])
    return (sp != sq).sum(axis=1)


def kendall_tau(p, q) -> int:
    """Pairs ordered oppositely by ``p`` and ``q``, or tied in exactly one of them."""
    p = np.asarray(p)
    q = np.asarray(q)
    if p.shape != q.shape:
        raise LengthMismatch(f"order vectors have lengths {p.size} and {q.size}")
    return int(_kendall_many(p[None, :], q)[0])


class TreeTerms(NamedTuple):
    aggregate: np.ndarray  # normalized geometric mean of all tree vectors
    tree_count: int
    amd_sum: float
    kendall_sum: int


def tree_terms(m, cap: int | None = None, tie_tol: float = TIE_TOL) -> TreeTerms:
    """Per-tree sums behind MII and KII, streamed over the spanning trees twice."""
    total = np.zeros(m.n)
    count = 0
    for block in tree_log_weights(m, cap):
        total += block.sum(axis=0)
        count += block.shape[0]
    logs = total / count
    agg = np.exp(logs - logs.max())
    agg /= agg.sum()
    ref_order = order_vector(agg, tie_tol)

    amd_sum = 0.0
    kendall_sum = 0
    for block in tree_log_weights(m, cap):
        w = np.exp(block)
        amd_sum += float(np.abs(w - agg).sum(axis=1).sum() / m.n)
        kendall_sum += int(_kendall_many(order_vectors(w, tie_tol), ref_order).sum())
    return TreeTerms(agg, count, amd_sum, kendall_sum)


def mii(m, cap: int | None = None) -> float:
    """Manhattan inconsistency index."""
    t = tree_terms(m, cap)
    return t.amd_sum / t.tree_count


def kii(m, cap: int | None = None, tie_tol: float = TIE_TOL) -> float:
    """Kendall inconsistency index."""
    t = tree_terms(m, cap, tie_tol)
    return t.kendall_sum / t.tree_count


class ClassicalIndices(NamedTuple):
    ci: float
    gci: float
    hci: float
    koczkodaj: float
    gw: float
    re: float

    def as_dict(self) -> dict:
        return {"ci": self.ci, "gci": self.gci, "hci": self.hci,
                "k": self.koczkodaj, "gw": self.gw, "re": self.re}


GCINormalization = Literal["pairs", "simple"]


@lru_cache(maxsize=None)
def _triads(n: int):
    return np.array(list(itertools.combinations(range(n), 3))).T


def koczkodaj(a: np.ndarray) -> float:
    i, j, k = _triads(a.shape[0])
    r = a[i, k] / (a[i, j] * a[j, k])
    return float(np.minimum(np.abs(1 - r), np.abs(1 - 1 / r)).max())


def golden_wang(a: np.ndarray, w: np.ndarray) -> float:
    n = a.shape[0]
    col_normalized = a / a.sum(axis=0)
    return float(np.abs(col_normalized - w[:, None]).sum() / n)


def relative_error(a: np.ndarray) -> float:
    logs = np.log(a)
    denom = float((logs**2).sum())
    if denom == 0.0:
        return 0.0
    row_means = logs.mean(axis=1)
    num = float(((row_means[:, None] - row_means[None, :]) ** 2).sum())
    return 1.0 - num / denom


def geometric_consistency(a: np.ndarray, w: np.ndarray, normalization: GCINormalization = "pairs") -> float:
    """GCI from GMM weights.

    ``"pairs"`` scales the squared log errors by ``2/((n-1)(n-2))``;
    ``"simple"`` uses ``2/(n-2)``.
    """
    n = a.shape[0]
    i, j = _pair_index(n)
    s = float((np.log(a[i, j] * w[j] / w[i]) ** 2).sum())
    if normalization == "pairs":
        return 2.0 * s / ((n - 1) * (n - 2))
    if normalization == "simple":
        return 2.0 * s / (n - 2)
    raise ValueError(f"unknown GCI normalization {normalization!r}")


def harmonic_consistency(a: np.ndarray) -> float:
    n = a.shape[0]
    hm = 1.0 / (1.0 / a.sum(axis=0)).sum()
    return float((hm - 1.0) * (n + 1) / (n - 1))


def classical_indices(
    m,
    gw_weights: Literal["gmm", "evm"] = "gmm",
    gci_normalization: GCINormalization = "pairs",
) -> ClassicalIndices:
    if not m.complete:
        raise IncompleteMatrix("classical indices need a complete matrix")
    n = m.n
    if n < 3:
        raise TooSmall(f"classical indices need at least 3 alternatives, got {n}")
    a = m.values
    eig = evm_weights(m)
    w_gm = gmm_weights(m)
    w_gw = w_gm if gw_weights == "gmm" else eig.vector
    return ClassicalIndices(
        ci=(eig.lambda_max - n) / (n - 1),
        gci=geometric_consistency(a, w_gm, gci_normalization),
        hci=harmonic_consistency(a),
        koczkodaj=koczkodaj(a),
        gw=golden_wang(a, w_gw),
        re=relative_error(a),
    )


@dataclass(frozen=True, eq=False)
class IndexReport:
    n: int
    complete: bool
    tree_count: int
    mii: float
    kii: float
    almost_consistent: bool
    classical: ClassicalIndices | None
    weights: np.ndarray

    def as_dict(self) -> dict:
        out = {
            "n": self.n,
            "complete": self.complete,
            "tree_count": self.tree_count,
            "mii": self.mii,
            "kii": self.kii,
            "almost_consistent": self.almost_consistent,
        }
        if self.classical is not None:
            out["classical"] = self.classical.as_dict()
        return out


def analyze(m, cap: int | None = None, tie_tol: float = TIE_TOL, **classical_opts) -> IndexReport:
    """MII, KII and, for complete matrices with n >= 3, the classical indices."""
    t = tree_terms(m, cap, tie_tol)
    classical = None
    if m.complete and m.n >= 3:
        classical = classical_indices(m, **classical_opts)
    return IndexReport(
        n=m.n,
        complete=m.complete,
        tree_count=t.tree_count,
        mii=t.amd_sum / t.tree_count,
        kii=t.kendall_sum / t.tree_count,
        almost_consistent=t.kendall_sum == 0,
        classical=classical,
        weights=t.aggregate,
    )
