"""Marginal standardisation to Pareto(2) scale."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata

from .errors import InvalidData, TooShort


@dataclass(frozen=True)
class MultivariateSeries:
    """An ``n x d`` panel on Pareto(2) margins together with its row norms.

    Build one with :func:`rank_transform_pareto2` (from raw data) or
    :meth:`from_pareto` (data already on the Pareto(2) scale).
    """

    values: np.ndarray
    radii: np.ndarray

    @classmethod
    def from_pareto(cls, values) -> "MultivariateSeries":
        values = np.array(values, dtype=float)
        if values.ndim != 2:
            raise InvalidData(f"expected a 2-d array, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise InvalidData("series contains non-finite values")
        if np.any(values <= 0):
            raise InvalidData("Pareto-scale values must be positive")
        values.setflags(write=False)
        radii = compute_radii(values)
        radii.setflags(write=False)
        return cls(values, radii)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def d(self) -> int:
        return self.values.shape[1]

    def __len__(self) -> int:
        return self.n


def as_series(data) -> MultivariateSeries:
    """Accept either a :class:`MultivariateSeries` or a Pareto-scale array."""
    if isinstance(data, MultivariateSeries):
        return data
    return MultivariateSeries.from_pareto(data)


def validate_raw(raw) -> np.ndarray:
    raw = np.asarray(raw, dtype=float)
    if raw.ndim == 1:
        raw = raw[:, None]
    if raw.ndim != 2:
        raise InvalidData(f"expected a 2-d array, got shape {raw.shape}")
    if not np.all(np.isfinite(raw)):
        raise InvalidData("series contains non-finite values")
    if raw.shape[0] < 2:
        raise TooShort(f"need at least 2 time points, got {raw.shape[0]}")
    return raw


def pareto2_from_uniform(u):
    """Pareto(2) quantile function ``(1 - u) ** -0.5``."""
    return 1.0 / np.sqrt(1.0 - np.asarray(u, dtype=float))


def rank_transform_pareto2(raw) -> MultivariateSeries:
    """Column-wise empirical rank transform to Pareto(2) margins.

    Ranks are average ranks (ties share the mean rank); rank ``r`` maps to
    ``u = r / (n + 1)`` and then to ``(1 - u) ** -0.5``, which is finite and
    strictly greater than one.

    Parameters
    ----------
    raw : array_like, shape (n, d)
        Finite observations, ``n >= 2``.

    Returns
    -------
    MultivariateSeries
    """
    raw = validate_raw(raw)
    n = raw.shape[0]
    ranks = rankdata(raw, method="average", axis=0)
    return MultivariateSeries.from_pareto(pareto2_from_uniform(ranks / (n + 1)))


def compute_radii(values) -> np.ndarray:
    """Euclidean norm of each row."""
    values = np.asarray(values, dtype=float)
    if values.ndim == 1:
        values = values[:, None]
    return np.sqrt(np.einsum("ij,ij->i", values, values))
