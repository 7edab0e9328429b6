"""Sliding-window top-k sums over radii-ordered rows.

Elements are ranked by radius (largest first, earlier time index first among
ties).  Presence is tracked in a Fenwick tree indexed by rank position, which
gives ``O(log m)`` insert, delete and "k-th present element" queries.  The sum
of the vectors attached to the current top-k members is kept as a running
total: an insertion into the top-k demotes the old k-th member, a deletion from
the top-k promotes the new k-th member.

:func:`rolling_topk_sums` rebuilds the tree every ``G`` steps over the ``2G - 1``
rows those steps can touch, so each step costs ``O(p + log G)`` for vectors of
length ``p``.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def _bit_add(tree, i, delta):
    m = tree.shape[0] - 1
    i += 1
    while i <= m:
        tree[i] += delta
        i += i & -i


@njit(cache=True, nogil=True)
def _bit_count_before(tree, i):
    s = 0
    while i > 0:
        s += tree[i]
        i -= i & -i
    return s


@njit(cache=True, nogil=True)
def _bit_kth(tree, k):
    # 0-based position of the k-th present element (k is 1-based); caller ensures it exists
    m = tree.shape[0] - 1
    step = 1
    while step * 2 <= m:
        step *= 2
    pos = 0
    while step > 0:
        nxt = pos + step
        if nxt <= m and tree[nxt] < k:
            pos = nxt
            k -= tree[nxt]
        step //= 2
    return pos


@njit(cache=True, nogil=True)
def _topk_insert(tree, owner, p, e, vecs, total, k, size):
    c = _bit_count_before(tree, p)
    if c < k:
        if size >= k:
            q = owner[_bit_kth(tree, k)]
            for j in range(total.shape[0]):
                total[j] -= vecs[q, j]
        for j in range(total.shape[0]):
            total[j] += vecs[e, j]
    _bit_add(tree, p, 1)
    owner[p] = e
    return size + 1


@njit(cache=True, nogil=True)
def _topk_delete(tree, owner, p, e, vecs, total, k, size):
    c = _bit_count_before(tree, p)
    _bit_add(tree, p, -1)
    size -= 1
    if c < k:
        for j in range(total.shape[0]):
            total[j] -= vecs[e, j]
        if size >= k:
            q = owner[_bit_kth(tree, k)]
            for j in range(total.shape[0]):
                total[j] += vecs[q, j]
    return size


@njit(cache=True, nogil=True)
def _rolling_topk_sums(radii, vecs, G, k):
    n = radii.shape[0]
    p = vecs.shape[1]
    out = np.empty((n - G + 1, p))
    tree_buf = np.zeros(2 * G + 1, dtype=np.int64)
    owner = np.empty(2 * G, dtype=np.int64)
    pos = np.empty(n, dtype=np.int64)
    total = np.zeros(p)
    first = G - 1
    while first <= n - 1:
        last = min(first + G - 1, n - 1)
        lo = first - G + 1
        m = last - lo + 1
        order = np.argsort(-radii[lo:last + 1], kind="mergesort")
        for r in range(m):
            pos[lo + order[r]] = r
        tree = tree_buf[:m + 1]
        tree[:] = 0
        # fresh sum per block stops rounding drift from accumulating
        total[:] = 0.0
        taken = 0
        for r in range(m):
            t = lo + order[r]
            if t <= first:
                _bit_add(tree, r, 1)
                owner[r] = t
                if taken < k:
                    for j in range(p):
                        total[j] += vecs[t, j]
                    taken += 1
        out[first - G + 1] = total
        size = G
        for end in range(first + 1, last + 1):
            old = end - G
            size = _topk_delete(tree, owner, pos[old], old, vecs, total, k, size)
            size = _topk_insert(tree, owner, pos[end], end, vecs, total, k, size)
            out[end - G + 1] = total
        first = last + 1
    return out


def rolling_topk_sums(radii, vecs, G: int, k: int) -> np.ndarray:
    """Top-k vector sums for every length-``G`` window.

    Row ``i`` of the result is the sum of ``vecs[s]`` over the ``k`` rows ``s``
    with the largest radii among ``i, ..., i + G - 1``.

    Parameters
    ----------
    radii : array_like, shape (n,)
    vecs : array_like, shape (n, p)
    G : int
        Window length, ``1 <= G <= n``.
    k : int
        ``1 <= k <= G``.

    Returns
    -------
    ndarray, shape (n - G + 1, p)
    """
    radii = np.ascontiguousarray(radii, dtype=np.float64)
    vecs = np.ascontiguousarray(vecs, dtype=np.float64)
    if vecs.ndim == 1:
        vecs = vecs[:, None]
    n = radii.shape[0]
    if not 1 <= G <= n:
        raise ValueError(f"window length {G} outside [1, {n}]")
    if not 1 <= k <= G:
        raise ValueError(f"k={k} outside [1, {G}]")
    return _rolling_topk_sums(radii, vecs, int(G), int(k))


class SlidingTopK:
    """Ordered multiset of rows of one series with a running top-k sum.

    Rows are referred to by time index.  Ordering is by radius (descending),
    earlier time index first among ties, fixed once at construction.

    >>> s = SlidingTopK([3.0, 1.0, 2.0], [[1.0], [10.0], [100.0]], k=2)
    >>> for t in range(3):
    ...     s.insert(t)
    >>> s.topk_sum()
    array([101.])
    >>> s.delete(0)
    >>> s.topk_sum()
    array([110.])
    """

    def __init__(self, radii, vecs, k: int):
        self.radii = np.ascontiguousarray(radii, dtype=np.float64)
        vecs = np.ascontiguousarray(vecs, dtype=np.float64)
        self.vecs = vecs[:, None] if vecs.ndim == 1 else vecs
        if k < 1:
            raise ValueError("k must be positive")
        self.k = int(k)
        n = self.radii.shape[0]
        order = np.argsort(-self.radii, kind="stable")
        self._pos = np.empty(n, dtype=np.int64)
        self._pos[order] = np.arange(n)
        self._tree = np.zeros(n + 1, dtype=np.int64)
        self._owner = np.empty(n, dtype=np.int64)
        self._present = np.zeros(n, dtype=bool)
        self._total = np.zeros(self.vecs.shape[1])
        self._size = 0

    def __len__(self) -> int:
        return self._size

    def __contains__(self, t) -> bool:
        return bool(self._present[t])

    def insert(self, t: int) -> None:
        if self._present[t]:
            raise KeyError(f"time {t} already present")
        self._size = _topk_insert(
            self._tree, self._owner, self._pos[t], t, self.vecs, self._total, self.k, self._size
        )
        self._present[t] = True

    def delete(self, t: int) -> None:
        if not self._present[t]:
            raise KeyError(f"time {t} not present")
        self._size = _topk_delete(
            self._tree, self._owner, self._pos[t], t, self.vecs, self._total, self.k, self._size
        )
        self._present[t] = False

    def topk_members(self) -> list[int]:
        """Time indices of the current top-k, largest radius first."""
        count = min(self.k, self._size)
        return [int(self._owner[_bit_kth(self._tree, j + 1)]) for j in range(count)]

    def in_topk(self, t: int) -> bool:
        return bool(self._present[t]) and _bit_count_before(self._tree, self._pos[t]) < self.k

    def kth_radius(self) -> float:
        """Smallest radius within the current top-k."""
        if self._size == 0:
            raise IndexError("structure is empty")
        j = _bit_kth(self._tree, min(self.k, self._size))
        return float(self.radii[self._owner[j]])

    def topk_sum(self) -> np.ndarray:
        return self._total.copy()
