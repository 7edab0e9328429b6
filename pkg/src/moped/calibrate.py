"""Permutation calibration of the detector threshold and single-scale MOPED."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .detector import (
    ChangePointSet,
    DetectorConfig,
    DetectorTrace,
    offdiag_products,
    select_changes,
    trace_from_arrays,
)
from .errors import MopedError, SeriesTooShort
from .margins import as_series


@dataclass(frozen=True)
class PermutationConfig:
    M: int = 200
    alpha: float = 0.05
    seed: int = 0

    def __post_init__(self):
        if self.M < 1:
            raise MopedError(f"need at least one permutation, got M={self.M}")
        if not 0 < self.alpha < 1:
            raise MopedError(f"alpha must lie in (0, 1), got {self.alpha}")


@dataclass(frozen=True)
class NullStatistics:
    t_max: np.ndarray
    threshold: float
    alpha: float

    @property
    def M(self) -> int:
        return self.t_max.size


def quantile_rank(M: int, alpha: float) -> int:
    """1-based order statistic ``ceil((1 - alpha)(M + 1))``, clamped to ``[1, M]``."""
    r = math.ceil((1.0 - alpha) * (M + 1) - 1e-9)
    return min(max(r, 1), M)


def null_threshold(t_max, alpha: float) -> float:
    t_max = np.sort(np.asarray(t_max, dtype=float))
    return float(t_max[quantile_rank(t_max.size, alpha) - 1])


def permutation_rng(seed: int, m: int) -> np.random.Generator:
    """Independent generator for permutation ``m``; depends only on ``(seed, m)``."""
    return np.random.default_rng([int(seed) & 0xFFFFFFFFFFFFFFFF, int(m)])


def permutation_maxima(series, config: DetectorConfig, pconfig: PermutationConfig, threads: int = 1):
    series = as_series(series)
    n, G = series.n, config.G
    if n < 2 * G:
        raise SeriesTooShort(f"series too short for bandwidth: n={n} < 2G={2 * G}")
    radii = series.radii
    products = offdiag_products(series.values)

    def one(m):
        perm = permutation_rng(pconfig.seed, m).permutation(n)
        return trace_from_arrays(radii[perm], products[perm], series.d, G, config.k).max()

    if threads > 1:
        # the numba kernel releases the GIL, so threads run in parallel
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return np.array(list(pool.map(one, range(pconfig.M))))
    return np.array([one(m) for m in range(pconfig.M)])


def permutation_null(
    series, config: DetectorConfig, pconfig: PermutationConfig, threads: int = 1
) -> NullStatistics:
    """Null distribution of the maximal detector value under random reordering.

    Whole rows are permuted, so cross-sectional dependence is kept and only
    the time order is destroyed.  The threshold is the
    ``ceil((1 - alpha)(M + 1))``-th smallest of the ``M`` maxima.
    """
    t_max = permutation_maxima(series, config, pconfig, threads)
    return NullStatistics(t_max, null_threshold(t_max, pconfig.alpha), pconfig.alpha)


def p_value(height: float, null: NullStatistics) -> float:
    """``(1 + #{m : T_m >= height}) / (M + 1)``."""
    exceed = int(np.count_nonzero(null.t_max >= height))
    return (1 + exceed) / (null.M + 1)


def moped(
    series,
    config: DetectorConfig,
    pconfig: PermutationConfig = PermutationConfig(),
    threads: int = 1,
) -> ChangePointSet:
    """Single-bandwidth, single-rank change point detection.

    Computes the detector trace, calibrates the threshold by permutation,
    selects change points with the eta-criterion and attaches p-values.

    Parameters
    ----------
    series : MultivariateSeries or array_like
        Data on Pareto(2) margins.
    config : DetectorConfig
    pconfig : PermutationConfig
    threads : int
        Number of worker threads for the permutations.

    Returns
    -------
    ChangePointSet
        Points sorted by location; ``traces`` and ``thresholds`` hold the trace
        and threshold under the key ``(G, k)``.
    """
    series = as_series(series)
    trace = DetectorTrace(
        trace_from_arrays(series.radii, offdiag_products(series.values), series.d, config.G, config.k),
        config,
        series.n,
    )
    null = permutation_null(series, config, pconfig, threads)
    found = select_changes(trace, null.threshold)
    points = [replace(c, p_value=p_value(c.height, null)) for c in found]
    key = (config.G, config.k)
    return ChangePointSet(points, {key: trace}, {key: null.threshold})
