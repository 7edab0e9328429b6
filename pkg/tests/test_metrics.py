import numpy as np
import pytest
from oracles import brute_covering, brute_v_measure
from sklearn.metrics import v_measure_score

from moped import Segmentation, covering_metric, qhat_distribution, v_measure
from moped.errors import EmptyResults, InvalidSpec, LengthMismatch
from moped.metrics import homogeneity_completeness


def seg(n, *cps):
    return Segmentation(n, cps)


def test_covering_examples():
    assert covering_metric(seg(100, 30, 70), seg(100, 30, 70)) == 1.0
    assert covering_metric(seg(100, 50), seg(100)) == 0.5
    assert covering_metric(seg(100), seg(100, 50)) == 0.5


def test_covering_asymmetric():
    a, b = seg(10, 2), seg(10)
    # truth {1,2},{3..10} vs one segment: (2 * 0.2 + 8 * 0.8) / 10
    assert covering_metric(a, b) == pytest.approx(brute_covering(10, [2], []))
    assert covering_metric(a, b) == pytest.approx(0.68)
    assert covering_metric(b, a) == pytest.approx(0.8)


def test_v_measure_examples():
    assert v_measure(seg(100, 10, 60), seg(100, 10, 60)) == 1.0
    assert homogeneity_completeness(seg(100, 50), seg(100)) == (0.0, 1.0)
    assert v_measure(seg(100, 50), seg(100)) == 0.0
    h, c = homogeneity_completeness(seg(100), seg(100, 50))
    assert (h, c) == (1.0, 0.0)
    assert v_measure(seg(100), seg(100, 50)) == 0.0
    assert v_measure(seg(100), seg(100)) == 1.0


def random_partition(rng, n):
    q = rng.integers(0, min(5, n - 1) + 1)
    return sorted(rng.choice(np.arange(1, n), size=q, replace=False).tolist())


def test_against_brute_force(rng):
    for _ in range(500):
        n = int(rng.integers(2, 51))
        t, e = random_partition(rng, n), random_partition(rng, n)
        T, E = Segmentation(n, tuple(t)), Segmentation(n, tuple(e))
        assert abs(covering_metric(T, E) - brute_covering(n, t, e)) <= 1e-12
        vm = v_measure(T, E)
        assert abs(vm - brute_v_measure(n, t, e)) <= 1e-12
        assert vm == pytest.approx(v_measure(E, T), abs=1e-12)
        assert 0 <= covering_metric(T, E) <= 1 and -1e-12 <= vm <= 1 + 1e-12


def test_against_sklearn(rng):
    for _ in range(50):
        n = int(rng.integers(2, 200))
        T = Segmentation(n, tuple(random_partition(rng, n)))
        E = Segmentation(n, tuple(random_partition(rng, n)))
        assert v_measure(T, E) == pytest.approx(v_measure_score(T.labels(), E.labels()), abs=1e-10)


def test_refinement_monotonicity(rng):
    for _ in range(200):
        n = int(rng.integers(5, 50))
        T = Segmentation(n, tuple(random_partition(rng, n)))
        e = random_partition(rng, n)
        extra = int(rng.integers(1, n))
        E = Segmentation(n, tuple(e))
        finer = Segmentation(n, tuple(sorted(set(e) | {extra})))
        h0, _ = homogeneity_completeness(T, E)
        h1, _ = homogeneity_completeness(T, finer)
        assert h1 >= h0 - 1e-12  # refining never lowers homogeneity


def test_errors():
    with pytest.raises(LengthMismatch):
        covering_metric(seg(10), seg(11))
    with pytest.raises(LengthMismatch):
        v_measure(seg(10), seg(11))
    with pytest.raises(InvalidSpec):
        seg(10, 10)


def test_qhat_distribution():
    assert qhat_distribution([0, 0, 0]) == {"<=-2": 0, "-1": 0, "0": 1.0, "1": 0, ">=2": 0}
    assert list(qhat_distribution([-1, -1, 0, 1]).values()) == [0, 0.5, 0.25, 0.25, 0]
    d = qhat_distribution([-5, 3, 2, 0])
    assert d["<=-2"] == 0.25 and d[">=2"] == 0.5
    assert sum(d.values()) == pytest.approx(1.0)
    with pytest.raises(EmptyResults):
        qhat_distribution([])
