"""Empirical tail pairwise dependence matrix (TPDM)."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptyWindow, RankTooLarge, SegmentTooShort
from .margins import MultivariateSeries, as_series


@dataclass(frozen=True)
class TpdmEstimate:
    """TPDM estimate over the half-open row window ``window = (start, stop)``.

    ``r0`` is the smallest radius among the ``k`` retained rows.
    """

    sigma: np.ndarray
    k: int
    r0: float
    window: tuple[int, int]

    @property
    def d(self) -> int:
        return self.sigma.shape[0]


def top_k_indices(radii, k: int) -> np.ndarray:
    """Indices of the ``k`` largest radii, earlier index first among ties."""
    order = np.argsort(-np.asarray(radii, dtype=float), kind="stable")
    return order[:k]


def angular_products(values) -> np.ndarray:
    """Pairwise terms ``X_i X_j / R^2`` for every row, shape (n, d, d)."""
    values = np.asarray(values, dtype=float)
    r2 = np.einsum("ij,ij->i", values, values)
    return values[:, :, None] * values[:, None, :] / r2[:, None, None]


def estimate_tpdm(series, window=None, k: int = None) -> TpdmEstimate:
    """Estimate the TPDM from the ``k`` largest-radius rows of a window.

    Parameters
    ----------
    series : MultivariateSeries or array_like
        Data on Pareto(2) margins.
    window : (start, stop), optional
        Half-open 0-based row range; defaults to the whole series.  In 1-based
        time this covers ``start + 1, ..., stop``.
    k : int
        Number of exceedances retained.

    Returns
    -------
    TpdmEstimate
    """
    series = as_series(series)
    start, stop = (0, series.n) if window is None else (int(window[0]), int(window[1]))
    start, stop = max(start, 0), min(stop, series.n)
    if stop <= start:
        raise EmptyWindow(f"window ({start}, {stop}) is empty")
    if k is None or k < 1:
        raise RankTooLarge(f"k must be a positive integer, got {k}")
    if k > stop - start:
        raise RankTooLarge(f"k={k} exceeds window length {stop - start}")

    radii = series.radii[start:stop]
    keep = top_k_indices(radii, k)
    # d * sum / k keeps exact cases exact (e.g. identical columns give 1.0)
    sigma = series.d * angular_products(series.values[start:stop][keep]).sum(axis=0) / k
    return TpdmEstimate(sigma, int(k), float(radii[keep].min()), (start, stop))


def exceedance_count(length: int, quantile: float) -> int:
    # guard against 0.05 * 1000 = 50.000000000000004 rounding up to 51
    return max(1, math.ceil((1.0 - quantile) * length - 1e-9))


def segment_bounds(n: int, changes) -> list[tuple[int, int]]:
    cuts = [0, *sorted(int(c) for c in changes), n]
    return list(zip(cuts[:-1], cuts[1:]))


def estimate_segment_tpdms(series, changes=(), quantile: float = 0.95) -> list[TpdmEstimate]:
    """One TPDM per segment of the partition induced by ``changes``.

    Each segment retains ``ceil((1 - quantile) * length)`` rows (at least one),
    so ``quantile=0.95`` thresholds at the 95% empirical quantile of the radii.
    ``changes`` may be a sequence of integers or a ``ChangePointSet``.
    """
    series = as_series(series)
    locations = getattr(changes, "locations", changes)
    bounds = segment_bounds(series.n, locations)
    out = []
    for start, stop in bounds:
        if stop - start < 2:
            raise SegmentTooShort(f"segment ({start}, {stop}) has fewer than 2 rows")
        out.append(estimate_tpdm(series, (start, stop), exceedance_count(stop - start, quantile)))
    return out


__all__ = [
    "MultivariateSeries",
    "TpdmEstimate",
    "estimate_tpdm",
    "estimate_segment_tpdms",
    "angular_products",
    "top_k_indices",
]
