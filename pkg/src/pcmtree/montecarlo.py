"""Monte Carlo comparison of inconsistency indices on random 5x5 matrices.

Series 1 holds consistent matrices built from random weight vectors; series
``s >= 2`` multiplies every upper-triangle entry of a fresh consistent matrix
by an independent factor from ``[1/s, s]`` and restores reciprocity.

Every matrix draws from its own PCG64 stream seeded with
``SeedSequence(seed, spawn_key=(series, matrix))``, so results do not depend
on evaluation order or on how the work is split between processes.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .errors import DegenerateSample, PCMError
from .indices import classical_indices, tree_terms
from .matrix import PCMatrix, from_weights

INDEX_NAMES = ("ci", "gci", "hci", "k", "gw", "re", "mii", "kii")

FactorDistribution = Literal["loguniform", "uniform"]


class StudyError(PCMError):
    def __init__(self, series, matrix, cause):
        self.series = series
        self.matrix = matrix
        super().__init__(f"series {series}, matrix {matrix}: {cause}")


@dataclass(frozen=True)
class SeriesConfig:
    n: int = 5
    matrices_per_series: int = 1000
    series_count: int = 30
    seed: int = 2019
    weight_range: tuple[float, float] = (1 / 9, 9.0)
    factor_distribution: FactorDistribution = "loguniform"
    workers: int = 1

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("matrix size must be at least 3 for the classical indices")
        if self.matrices_per_series < 1 or self.series_count < 1:
            raise ValueError("series and matrix counts must be positive")
        lo, hi = self.weight_range
        if not 0 < lo <= hi:
            raise ValueError(f"weight range must satisfy 0 < low <= high, got {self.weight_range}")
        if self.factor_distribution not in ("loguniform", "uniform"):
            raise ValueError(f"unknown factor distribution {self.factor_distribution!r}")


@dataclass(frozen=True, eq=False)
class SeriesStats:
    series_index: int
    means: dict
    correlation: np.ndarray  # 8x8 Pearson matrix, NaN where a column is constant
    samples: np.ndarray = field(repr=False)  # matrices_per_series x 8, columns as INDEX_NAMES

    def r(self, a: str, b: str) -> float:
        return float(self.correlation[INDEX_NAMES.index(a), INDEX_NAMES.index(b)])


def matrix_rng(seed: int, series: int, matrix: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(series, matrix))))


def _log_uniform(rng, lo, hi, size=None):
    return np.exp(rng.uniform(math.log(lo), math.log(hi), size))


def generate_consistent(n: int, rng: np.random.Generator, weight_range=(1 / 9, 9.0)) -> PCMatrix:
    """Consistent matrix from a weight vector drawn log-uniformly from ``weight_range``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return from_weights(_log_uniform(rng, *weight_range, size=n))


def perturb(m: PCMatrix, s: float, rng: np.random.Generator,
            distribution: FactorDistribution = "loguniform") -> PCMatrix:
    """Multiply each upper entry by a random factor from ``[1/s, s]``; rebuild the lower triangle."""
    if not m.complete:
        raise ValueError("perturbation needs a complete matrix")
    n = m.n
    iu = np.triu_indices(n, 1)
    if distribution == "loguniform":
        factors = _log_uniform(rng, 1 / s, s, size=iu[0].size)
    elif distribution == "uniform":
        factors = rng.uniform(1 / s, s, size=iu[0].size)
    else:
        raise ValueError(f"unknown factor distribution {distribution!r}")
    values = np.ones((n, n))
    values[iu] = m.values[iu] * factors
    values[(iu[1], iu[0])] = 1.0 / values[iu]
    return PCMatrix(values)


def study_matrix(cfg: SeriesConfig, series: int, matrix: int) -> PCMatrix:
    rng = matrix_rng(cfg.seed, series, matrix)
    m = generate_consistent(cfg.n, rng, cfg.weight_range)
    if series >= 2:
        m = perturb(m, series, rng, cfg.factor_distribution)
    return m


def score(m: PCMatrix) -> np.ndarray:
    """The eight indices of a complete matrix, ordered as INDEX_NAMES."""
    c = classical_indices(m)
    t = tree_terms(m)
    return np.array([c.ci, c.gci, c.hci, c.koczkodaj, c.gw, c.re,
                     t.amd_sum / t.tree_count, t.kendall_sum / t.tree_count])


def score_series(cfg: SeriesConfig, series: int) -> np.ndarray:
    out = np.empty((cfg.matrices_per_series, len(INDEX_NAMES)))
    for k in range(cfg.matrices_per_series):
        try:
            out[k] = score(study_matrix(cfg, series, k))
        except PCMError as exc:
            raise StudyError(series, k, exc) from exc
    return out


def pearson(xs, ys) -> float:
    """Sample Pearson correlation; raises DegenerateSample for a constant input."""
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.shape != y.shape or x.size < 2:
        raise ValueError("pearson needs two samples of equal length >= 2")
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    if sxx == 0.0 or syy == 0.0:
        raise DegenerateSample("correlation is undefined for a constant sample")
    r = float(dx @ dy) / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


def correlation_matrix(samples: np.ndarray) -> np.ndarray:
    k = samples.shape[1]
    out = np.full((k, k), np.nan)
    for a in range(k):
        for b in range(a, k):
            try:
                out[a, b] = out[b, a] = 1.0 if a == b and np.ptp(samples[:, a]) > 0 else pearson(
                    samples[:, a], samples[:, b])
            except DegenerateSample:
                pass
    return out


def series_stats(series: int, samples: np.ndarray) -> SeriesStats:
    means = {name: float(samples[:, c].mean()) for c, name in enumerate(INDEX_NAMES)}
    return SeriesStats(series, means, correlation_matrix(samples), samples)


def _score_task(args):
    cfg, series = args
    return score_series(cfg, series)


def run_study(cfg: SeriesConfig) -> list[SeriesStats]:
    series = range(1, cfg.series_count + 1)
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            all_samples = list(pool.map(_score_task, [(cfg, s) for s in series]))
    else:
        all_samples = [score_series(cfg, s) for s in series]
    return [series_stats(s, x) for s, x in zip(series, all_samples)]


def write_samples_csv(stats: list[SeriesStats], path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["series", "matrix", *INDEX_NAMES])
        for st in stats:
            for k, row in enumerate(st.samples):
                w.writerow([st.series_index, k + 1, *(repr(float(x)) for x in row)])


def write_summary_csv(stats: list[SeriesStats], path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["series", *INDEX_NAMES, "r_gw_mii"])
        for st in stats:
            w.writerow([st.series_index, *(repr(st.means[name]) for name in INDEX_NAMES),
                        repr(st.r("gw", "mii"))])
