"""Segmentation accuracy: covering metric, V-measure and the q-hat - q summary."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyResults, InvalidSpec, LengthMismatch

QHAT_BINS = ("<=-2", "-1", "0", "1", ">=2")


@dataclass(frozen=True)
class Segmentation:
    """Partition of ``1..n`` into ``{tau_{l-1}+1, ..., tau_l}`` with
    ``tau_0 = 0`` and ``tau_{q+1} = n``."""

    n: int
    boundaries: tuple[int, ...] = ()

    def __post_init__(self):
        b = tuple(sorted(int(c) for c in getattr(self.boundaries, "locations", self.boundaries)))
        object.__setattr__(self, "boundaries", b)
        if self.n < 1:
            raise InvalidSpec(f"length must be positive, got {self.n}")
        if any(not 0 < c < self.n for c in b) or len(set(b)) != len(b):
            raise InvalidSpec(f"boundaries {b} must be distinct and lie strictly inside (0, {self.n})")

    @property
    def cuts(self) -> list[int]:
        return [0, *self.boundaries, self.n]

    @property
    def lengths(self) -> np.ndarray:
        return np.diff(self.cuts)

    def labels(self) -> np.ndarray:
        return np.repeat(np.arange(len(self.boundaries) + 1), self.lengths)


def _check(truth: Segmentation, estimate: Segmentation):
    if truth.n != estimate.n:
        raise LengthMismatch(f"partitions cover different lengths: {truth.n} vs {estimate.n}")


def covering_metric(truth: Segmentation, estimate: Segmentation) -> float:
    """Length-weighted best Jaccard overlap of each true segment with the
    estimated segments.  Not symmetric in its arguments."""
    _check(truth, estimate)
    a0, a1 = np.array(truth.cuts[:-1]), np.array(truth.cuts[1:])
    b0, b1 = np.array(estimate.cuts[:-1]), np.array(estimate.cuts[1:])
    inter = np.clip(np.minimum(a1[:, None], b1) - np.maximum(a0[:, None], b0), 0, None)
    union = (a1 - a0)[:, None] + (b1 - b0) - inter
    best = (inter / union).max(axis=1)
    return float(np.sum((a1 - a0) * best) / truth.n)


def contingency(truth: Segmentation, estimate: Segmentation) -> np.ndarray:
    """Counts of time points shared by each (true, estimated) segment pair."""
    _check(truth, estimate)
    a0, a1 = np.array(truth.cuts[:-1]), np.array(truth.cuts[1:])
    b0, b1 = np.array(estimate.cuts[:-1]), np.array(estimate.cuts[1:])
    return np.clip(np.minimum(a1[:, None], b1) - np.maximum(a0[:, None], b0), 0, None)


def _entropy(counts, n):
    p = counts[counts > 0] / n
    return float(-np.sum(p * np.log(p)))


def homogeneity_completeness(truth: Segmentation, estimate: Segmentation) -> tuple[float, float]:
    table = contingency(truth, estimate).astype(float)
    n = truth.n
    nz = table > 0
    joint = table[nz] / n
    row = table.sum(axis=1, keepdims=True)
    col = table.sum(axis=0, keepdims=True)
    h_truth, h_est = _entropy(row.ravel(), n), _entropy(col.ravel(), n)
    h_truth_given_est = float(-np.sum(joint * np.log((table / col)[nz])))
    h_est_given_truth = float(-np.sum(joint * np.log((table / row)[nz])))
    h = 1.0 if h_truth == 0 else 1.0 - h_truth_given_est / h_truth
    c = 1.0 if h_est == 0 else 1.0 - h_est_given_truth / h_est
    return h, c


def v_measure(truth: Segmentation, estimate: Segmentation) -> float:
    """Harmonic mean of homogeneity and completeness (natural logarithms)."""
    h, c = homogeneity_completeness(truth, estimate)
    return 0.0 if h + c == 0 else 2.0 * h * c / (h + c)


def qhat_distribution(differences) -> dict[str, float]:
    """Fractions of replications with ``q_hat - q`` in each of the bins
    ``<=-2, -1, 0, 1, >=2``."""
    diffs = np.asarray(list(differences), dtype=int)
    if diffs.size == 0:
        raise EmptyResults("no replications to summarise")
    clipped = np.clip(diffs, -2, 2)
    counts = [np.count_nonzero(clipped == v) for v in range(-2, 3)]
    return {label: c / diffs.size for label, c in zip(QHAT_BINS, counts)}
