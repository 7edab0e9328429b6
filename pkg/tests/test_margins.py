import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from moped import compute_radii, rank_transform_pareto2
from moped.errors import InvalidData, TooShort


def test_rank_transform_small_column():
    out = rank_transform_pareto2(np.array([[3.0, 0.0], [1.0, 5.0], [2.0, 7.0]]))
    # ranks (3, 1, 2) -> u = (0.75, 0.25, 0.5) -> (1 - u) ** -0.5
    np.testing.assert_allclose(out.values[:, 0], [2.0, 1.1547005383792517, 1.4142135623730951], rtol=1e-15)


def test_sorted_column_stays_sorted(rng):
    x = np.sort(rng.normal(size=(50, 2)), axis=0)
    out = rank_transform_pareto2(x).values
    assert np.all(np.diff(out, axis=0) > 0)


def test_constant_column_maps_to_sqrt2():
    x = np.column_stack([np.full(7, 4.2), np.arange(7.0)])
    out = rank_transform_pareto2(x).values
    np.testing.assert_allclose(out[:, 0], np.sqrt(2.0), rtol=1e-15)


def test_errors():
    with pytest.raises(InvalidData):
        rank_transform_pareto2([[1.0, np.nan], [2.0, 3.0]])
    with pytest.raises(TooShort):
        rank_transform_pareto2([[1.0, 2.0]])


@pytest.mark.parametrize("row, expected", [((3.0, 4.0), 5.0), ((2.5, 2.5), 2.5 * np.sqrt(2)), ((7.0,), 7.0)])
def test_radii(row, expected):
    assert compute_radii(np.array([row]))[0] == pytest.approx(expected, rel=1e-15)


@settings(max_examples=60, deadline=None)
@given(arrays(np.float64, st.tuples(st.integers(2, 40), st.integers(2, 4)),
              elements=st.floats(-1e6, 1e6, allow_nan=False)),
       st.randoms(use_true_random=False))
def test_transform_properties(raw, pyrandom):
    n = raw.shape[0]
    out = rank_transform_pareto2(raw)
    assert np.all(out.values > 1)
    np.testing.assert_allclose(out.radii, np.linalg.norm(out.values, axis=1), rtol=1e-12)
    # permutation equivariance
    perm = np.array(pyrandom.sample(range(n), n))
    np.testing.assert_array_equal(rank_transform_pareto2(raw[perm]).values, out.values[perm])
    # inverse CDF recovers the plotting positions r / (n + 1)
    u = 1 - out.values ** -2.0
    for j in range(raw.shape[1]):
        ranks = np.array([np.sum(raw[:, j] < v) + (np.sum(raw[:, j] == v) + 1) / 2 for v in raw[:, j]])
        np.testing.assert_allclose(u[:, j], ranks / (n + 1), rtol=1e-12)
