"""Slow, independent reference implementations used only by the tests."""

import math
from itertools import product

import numpy as np


def brute_top_k(radii, k):
    """k largest radii by explicit (radius desc, index asc) sort of tuples."""
    keyed = sorted(range(len(radii)), key=lambda i: (-radii[i], i))
    return keyed[:k]


def brute_tpdm(x, k):
    x = [list(map(float, row)) for row in np.asarray(x)]
    d = len(x[0])
    radii = [math.sqrt(sum(v * v for v in row)) for row in x]
    keep = brute_top_k(radii, k)
    sigma = np.zeros((d, d))
    for i, j in product(range(d), range(d)):
        sigma[i, j] = d / k * sum(x[t][i] * x[t][j] / radii[t] ** 2 for t in keep)
    return sigma


def naive_trace(x, G, k):
    """Detector recomputed from scratch at every location with full sorts."""
    x = np.asarray(x, dtype=float)
    n, d = x.shape
    radii = np.linalg.norm(x, axis=1)
    out = []
    for t in range(G, n - G + 1):
        D = np.zeros((d, d))
        for sign, lo in ((1.0, t - G), (-1.0, t)):
            keep = [lo + i for i in brute_top_k(list(radii[lo:lo + G]), k)]
            w = x[keep] / radii[keep, None]
            D += sign * (d / k) * (w.T @ w)
        np.fill_diagonal(D, 0.0)
        out.append(math.sqrt(float(np.sum(D * D))))
    return np.array(out)


def segments(n, cps):
    cuts = [0, *sorted(cps), n]
    return [set(range(a + 1, b + 1)) for a, b in zip(cuts, cuts[1:])]


def brute_covering(n, truth, est):
    T, E = segments(n, truth), segments(n, est)
    return sum(len(A) * max(len(A & B) / len(A | B) for B in E) for A in T) / n


def brute_v_measure(n, truth, est):
    T, E = segments(n, truth), segments(n, est)
    lab_t = {t: i for i, A in enumerate(T) for t in A}
    lab_e = {t: j for j, B in enumerate(E) for t in B}
    joint = {}
    for t in range(1, n + 1):
        joint[(lab_t[t], lab_e[t])] = joint.get((lab_t[t], lab_e[t]), 0) + 1

    def H(counts):
        return -sum(c / n * math.log(c / n) for c in counts if c)

    h_t = H([len(A) for A in T])
    h_e = H([len(B) for B in E])
    h_t_e = -sum(c / n * math.log(c / len(E[j])) for (i, j), c in joint.items())
    h_e_t = -sum(c / n * math.log(c / len(T[i])) for (i, j), c in joint.items())
    h = 1.0 if h_t == 0 else 1 - h_t_e / h_t
    c = 1.0 if h_e == 0 else 1 - h_e_t / h_e
    return 0.0 if h + c == 0 else 2 * h * c / (h + c)
