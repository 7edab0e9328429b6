import numpy as np
import pytest
from scipy import integrate, stats

from moped import estimate_tpdm, random_correlation, sample_gaussian_copula, sample_t_copula
from moped.errors import InvalidSpec, NotPositiveDefinite
from moped.simulate import ScenarioSpec, equicorrelation, generate_scenario, t3_cdf


def t3_density(x):
    return 2 / (np.pi * np.sqrt(3) * (1 + x * x / 3) ** 2)


def test_t3_cdf_values():
    assert t3_cdf(0.0) == 0.5
    expected = 0.75 + 1 / (2 * np.pi)
    quad, _ = integrate.quad(t3_density, -np.inf, np.sqrt(3))
    assert expected == pytest.approx(quad, abs=1e-12)
    assert t3_cdf(np.sqrt(3)) == pytest.approx(expected, abs=1e-15)


def test_t3_cdf_against_quadrature_and_tails():
    for x in (-50.0, -7.3, -2.0, -0.4, 0.3, 1.1, 4.0, 25.0):
        quad, _ = integrate.quad(t3_density, -np.inf, x, epsabs=1e-14)
        assert t3_cdf(x) == pytest.approx(quad, rel=1e-9)
    # deep lower tail keeps relative precision
    xs = -np.logspace(1, 7, 25)
    np.testing.assert_allclose(t3_cdf(xs), stats.t(3).cdf(xs), rtol=1e-10)
    assert t3_cdf(-1e7) > 0


def test_gaussian_copula_independent():
    m = 20000
    u = sample_gaussian_copula(m, np.eye(3), 1)
    assert np.all((u > 0) & (u < 1))
    c = np.corrcoef(u.T)
    assert np.all(np.abs(c[np.triu_indices(3, 1)]) < 3 / np.sqrt(m))


def test_gaussian_copula_near_comonotone():
    u = sample_gaussian_copula(10000, equicorrelation(2, 0.999), 2)
    assert stats.spearmanr(u[:, 0], u[:, 1])[0] > 0.99


def test_copulas_deterministic():
    om = random_correlation(4, 3)
    assert np.array_equal(sample_t_copula(100, om, 3, 9), sample_t_copula(100, om, 3, 9))
    assert np.array_equal(sample_gaussian_copula(100, om, 9), sample_gaussian_copula(100, om, 9))


def test_t_copula_uniform_margins():
    u = sample_t_copula(20000, np.eye(2), 3, 4)
    for j in range(2):
        assert stats.kstest(u[:, j], "uniform").pvalue > 0.01


def test_not_positive_definite():
    with pytest.raises(NotPositiveDefinite):
        sample_gaussian_copula(10, np.array([[1.0, 1.2], [1.2, 1.0]]))
    with pytest.raises(InvalidSpec):
        equicorrelation(3, -0.6)


def test_random_correlation():
    a = random_correlation(8, 42)
    assert np.all(np.diag(a) == 1.0)
    assert np.array_equal(a, a.T)
    np.linalg.cholesky(a)
    assert np.array_equal(a, random_correlation(8, 42))
    assert not np.array_equal(a, random_correlation(8, 43))


def test_change_locations():
    assert generate_scenario(ScenarioSpec(n=5000, q=1), 0).change_points == [2500]
    assert generate_scenario(ScenarioSpec(n=7000, q=2), 0).change_points == [2333, 4666]
    assert generate_scenario(ScenarioSpec(n=500, q=0), 0).change_points == []
    sim = generate_scenario(ScenarioSpec(n=7000, change_points=(2000, 5000)), 0)
    assert sim.change_points == [2000, 5000]
    assert sim.values.shape == (7000, 2)
    with pytest.raises(InvalidSpec):
        generate_scenario(ScenarioSpec(n=100, change_points=(50, 51)), 0)


def test_margins_and_laws():
    spec = ScenarioSpec(1, 3000, 3, 2, 0.6, margin="uniform")
    u = generate_scenario(spec, 1)
    assert np.all((u.values > 0) & (u.values < 1))
    p = generate_scenario(ScenarioSpec(1, 3000, 3, 2, 0.6), 1)
    assert np.all(p.values > 1)
    np.testing.assert_allclose(p.values, 1 / np.sqrt(1 - u.values), rtol=1e-8)
    g = generate_scenario(ScenarioSpec(1, 3000, 3, 2, 0.6, margin="gaussian"), 1)
    assert stats.kstest(g.values[:, 0], "norm").pvalue > 0.001
    fam = [(law.family, law.omega[0, 1]) for law in p.laws]
    assert fam == [("student_t", 0.0), ("student_t", 0.6), ("student_t", 0.0)]
    assert generate_scenario(ScenarioSpec(1, 300, 2, 0, 0.6), 1).laws[0].omega[0, 1] == 0.6


def test_scenario2_shared_omega():
    sim = generate_scenario(ScenarioSpec(2, 4000, 5, 2, omega_seed=3), 1)
    assert [law.family for law in sim.laws] == ["student_t", "gaussian", "student_t"]
    assert all(np.array_equal(law.omega, sim.laws[0].omega) for law in sim.laws)
    assert np.array_equal(sim.laws[0].omega, random_correlation(5, 3))


def test_scenario1_tail_dependence_direction():
    sim = generate_scenario(ScenarioSpec(1, 20000, 2, 1, 0.6), 8)
    indep = estimate_tpdm(sim.values, (0, 10000), 500).sigma[0, 1]
    dep = estimate_tpdm(sim.values, (10000, 20000), 500).sigma[0, 1]
    assert dep > indep + 0.1
