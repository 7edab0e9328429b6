"""MOSUM detector over local TPDM differences and eta-criterion selection."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.ndimage import maximum_filter1d

from .errors import MopedError, RankTooLarge, SeriesTooShort
from .margins import as_series
from .sliding import rolling_topk_sums


@dataclass(frozen=True)
class DetectorConfig:
    """Bandwidth ``G``, exceedance rank ``k`` and selection parameter ``eta``."""

    G: int
    k: int
    eta: float = 0.4

    def __post_init__(self):
        if self.G < 1:
            raise MopedError(f"bandwidth must be positive, got {self.G}")
        if not 1 <= self.k <= self.G:
            raise RankTooLarge(f"rank k={self.k} must lie in [1, G={self.G}]")
        if not 0 < self.eta < 1:
            raise MopedError(f"eta must lie in (0, 1), got {self.eta}")

    @property
    def radius(self) -> int:
        """Neighbourhood half-width ``floor(eta * G)`` used by the selection rule."""
        return int(math.floor(self.eta * self.G + 1e-9))


@dataclass(frozen=True)
class DetectorTrace:
    """Detector values ``T(G, t)`` for ``t = G, ..., n - G``.

    A location ``t`` splits the series as ``x[:t] | x[t:]``.
    """

    values: np.ndarray
    config: DetectorConfig
    n: int

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.config.G, self.n - self.config.G + 1)

    def at(self, t: int) -> float:
        return float(self.values[t - self.config.G])

    def max(self) -> float:
        return float(self.values.max())


@dataclass(frozen=True)
class ChangePoint:
    tau: int
    height: float
    p_value: float | None
    G: int
    k: int


@dataclass
class ChangePointSet:
    """Estimated change points, sorted by location.

    ``traces`` and ``thresholds`` keep the per-``(G, k)`` detector traces and
    thresholds that produced the points, when available.
    """

    points: list[ChangePoint] = field(default_factory=list)
    traces: dict = field(default_factory=dict, repr=False)
    thresholds: dict = field(default_factory=dict)

    def __post_init__(self):
        self.points = sorted(self.points, key=lambda c: c.tau)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    @property
    def locations(self) -> list[int]:
        return [c.tau for c in self.points]


def pair_index(d: int):
    return np.triu_indices(d, k=1)


def offdiag_products(values) -> np.ndarray:
    """Terms ``X_i X_j / R^2`` for ``i < j``, shape ``(n, d(d-1)/2)``."""
    values = np.asarray(values, dtype=float)
    r2 = np.einsum("ij,ij->i", values, values)
    iu, ju = pair_index(values.shape[1])
    return values[:, iu] * values[:, ju] / r2[:, None]


def trace_from_arrays(radii, products, d: int, G: int, k: int) -> np.ndarray:
    """Detector values from precomputed radii and off-diagonal products.

    The right window at ``t`` is the left window at ``t + G``, so a single
    rolling pass of window top-k sums serves both sides.
    """
    n = radii.shape[0]
    if n < 2 * G:
        raise SeriesTooShort(f"series too short for bandwidth: n={n} < 2G={2 * G}")
    sums = rolling_topk_sums(radii, products, G, k)
    diff = sums[: n - 2 * G + 1] - sums[G:]
    # each off-diagonal pair appears twice in the Frobenius norm
    return (d / k) * np.sqrt(2.0 * np.einsum("ij,ij->i", diff, diff))


def detector_trace(series, config: DetectorConfig) -> DetectorTrace:
    """Compute ``T(G, t)``, the Frobenius norm of the difference of local
    TPDMs (diagonal zeroed) on ``(t - G, t]`` and ``(t, t + G]``.

    Parameters
    ----------
    series : MultivariateSeries or array_like
        Data on Pareto(2) margins, ``n >= 2G``.
    config : DetectorConfig

    Returns
    -------
    DetectorTrace
    """
    series = as_series(series)
    values = trace_from_arrays(
        series.radii, offdiag_products(series.values), series.d, config.G, config.k
    )
    return DetectorTrace(values, config, series.n)


def select_changes(trace: DetectorTrace, threshold: float) -> ChangePointSet:
    """Apply the eta-criterion to a detector trace.

    A location ``t`` qualifies when ``T(G, t) > threshold`` and ``T(G, t)`` is
    the maximum over ``|s - t| <= floor(eta * G)``.  A run of consecutive
    qualifying locations (necessarily a plateau of tied maxima) is reported
    once, at its mid-point rounded down.  Returned points carry no p-value.
    """
    cfg = trace.config
    vals = trace.values
    radius = cfg.radius
    local_max = maximum_filter1d(vals, size=2 * radius + 1, mode="nearest")
    hits = np.flatnonzero((vals > threshold) & (vals >= local_max))

    points = []
    i = 0
    while i < hits.size:
        j = i
        while j + 1 < hits.size and hits[j + 1] == hits[j] + 1:
            j += 1
        mid = (int(hits[i]) + int(hits[j])) // 2
        tau = mid + cfg.G
        points.append(ChangePoint(tau, float(vals[mid]), None, cfg.G, cfg.k))
        i = j + 1
    return ChangePointSet(points, {(cfg.G, cfg.k): trace}, {})
