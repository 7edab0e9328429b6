"""Bottom-up pooling of change point estimates across ranks and bandwidths."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .calibrate import PermutationConfig, moped
from .detector import ChangePoint, ChangePointSet, DetectorConfig
from .errors import MopedError, SeriesTooShort
from .margins import as_series


def resolve_rank(rank, G: int) -> int:
    """Integer rank from an absolute value (``>= 1``) or a fraction of ``G``
    (``< 1``).  Fractions round half up and are clamped to at least one.
    """
    if rank <= 0:
        raise MopedError(f"rank must be positive, got {rank}")
    if rank < 1:
        return max(1, int(math.floor(rank * G + 0.5)))
    if float(rank) != int(rank):
        raise MopedError(f"absolute rank must be an integer, got {rank}")
    return int(rank)


@dataclass(frozen=True)
class RankLadder:
    ranks: tuple[int, ...]

    def __post_init__(self):
        r = tuple(int(v) for v in self.ranks)
        object.__setattr__(self, "ranks", r)
        if len(r) < 1 or r[0] < 1 or any(b <= a for a, b in zip(r, r[1:])):
            raise MopedError(f"ranks must be strictly increasing positive integers, got {r}")

    @classmethod
    def from_fractions(cls, fractions, G: int) -> "RankLadder":
        return cls(tuple(sorted({resolve_rank(f, G) for f in fractions})))


@dataclass(frozen=True)
class BandwidthLadder:
    """Bandwidths with the ranks used at each, given as fractions of ``G``
    (values below one) or absolute ranks."""

    bandwidths: tuple[int, ...]
    rank_fractions: tuple[float, ...] = (0.2, 0.1, 0.05)

    def __post_init__(self):
        g = tuple(int(v) for v in self.bandwidths)
        object.__setattr__(self, "bandwidths", g)
        if len(g) < 1 or g[0] < 1 or any(b <= a for a, b in zip(g, g[1:])):
            raise MopedError(f"bandwidths must be strictly increasing positive integers, got {g}")

    def ranks(self, G: int) -> RankLadder:
        return RankLadder.from_fractions(self.rank_fractions, G)


def bottom_up(levels: Sequence[Sequence[ChangePoint]], radii: Sequence[float]) -> list[ChangePoint]:
    """Accept every point of the first level, then a point of level ``h`` only
    if it lies at least ``radii[h]`` from everything accepted so far.  Within
    a level, points are visited in increasing location."""
    accepted: list[ChangePoint] = []
    for h, level in enumerate(levels):
        for c in sorted(level, key=lambda c: c.tau):
            if h == 0 or all(abs(a.tau - c.tau) >= radii[h] - 1e-9 for a in accepted):
                accepted.append(c)
    return sorted(accepted, key=lambda c: c.tau)


def _combine(runs, points) -> ChangePointSet:
    traces, thresholds = {}, {}
    for run in runs:
        traces.update(run.traces)
        thresholds.update(run.thresholds)
    return ChangePointSet(points, traces, thresholds)


def merge_over_ranks(
    series,
    G: int,
    ladder: RankLadder,
    eta: float = 0.4,
    pconfig: PermutationConfig = PermutationConfig(),
    threads: int = 1,
) -> ChangePointSet:
    """Multi-threshold MOPED at a single bandwidth.

    Runs :func:`moped` for every rank, smallest first, and pools the results
    bottom-up with exclusion radius ``eta * G``.
    """
    series = as_series(series)
    if ladder.ranks[-1] > G:
        raise MopedError(f"largest rank {ladder.ranks[-1]} exceeds bandwidth {G}")
    runs = [moped(series, DetectorConfig(G, k, eta), pconfig, threads) for k in ladder.ranks]
    points = bottom_up([r.points for r in runs], [eta * G] * len(runs))
    return _combine(runs, points)


def merge_over_bandwidths(
    series,
    ladder: BandwidthLadder,
    eta: float = 0.4,
    pconfig: PermutationConfig = PermutationConfig(),
    threads: int = 1,
) -> ChangePointSet:
    """Multiscale, multi-threshold MOPED.

    Runs :func:`merge_over_ranks` at each bandwidth, finest first; a point
    found at bandwidth ``G_h`` is kept only if it is at least ``eta * G_h``
    from every point already kept.
    """
    series = as_series(series)
    if 2 * ladder.bandwidths[-1] > series.n:
        raise SeriesTooShort(
            f"series too short for bandwidth: n={series.n} < 2G={2 * ladder.bandwidths[-1]}"
        )
    runs = [
        merge_over_ranks(series, G, ladder.ranks(G), eta, pconfig, threads)
        for G in ladder.bandwidths
    ]
    points = bottom_up([r.points for r in runs], [eta * G for G in ladder.bandwidths])
    return _combine(runs, points)
