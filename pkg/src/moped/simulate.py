"""Piecewise-stationary copula scenarios with change points in tail dependence.

Scenario 1 switches a Student-t(3) copula between independence and
equicorrelation ``rho``.  Scenario 2 keeps one random correlation matrix and
switches between a Student-t(3) copula (asymptotic dependence) and a Gaussian
copula (asymptotic independence).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import ndtr, ndtri, stdtr

from .errors import InvalidSpec, NotPositiveDefinite

MARGINS = ("uniform", "pareto2", "gaussian")


@dataclass(frozen=True)
class SegmentLaw:
    family: str
    omega: np.ndarray
    nu: float = 3.0

    def __post_init__(self):
        if self.family not in ("gaussian", "student_t"):
            raise InvalidSpec(f"unknown copula family {self.family!r}")


@dataclass(frozen=True)
class ScenarioSpec:
    """Simulation settings.

    ``change_points``, when given, overrides the equally spaced locations and
    ``q`` is taken from its length.
    """

    scenario: int = 1
    n: int = 5000
    d: int = 2
    q: int = 1
    rho: float = 0.6
    omega_seed: int = 1
    nu: float = 3.0
    margin: str = "pareto2"
    change_points: tuple[int, ...] | None = None


@dataclass
class SimulatedData:
    values: np.ndarray
    change_points: list[int]
    laws: list[SegmentLaw]
    spec: ScenarioSpec = field(repr=False)


def t3_cdf(x):
    """Student-t(3) distribution function in closed form.

    Uses ``F(x) = (phi - sin(2 phi) / 2) / pi`` with ``phi = arctan(sqrt(3)/|x|)``
    for ``x <= 0``, which equals the usual arctan expression but keeps full
    relative precision deep in the lower tail; ``F(x) = 1 - F(-x)`` otherwise.
    """
    x = np.asarray(x, dtype=float)
    a = np.abs(x)
    with np.errstate(divide="ignore"):
        y = 2.0 * np.arctan2(np.sqrt(3.0), a)
    y2 = y * y
    # y - sin(y) by its Taylor series where direct subtraction cancels
    series = y * y2 / 6.0 * (1 - y2 / 20.0 * (1 - y2 / 42.0 * (1 - y2 / 72.0 * (1 - y2 / 110.0))))
    lower = np.where(y < 0.1, series, y - np.sin(y)) / (2.0 * np.pi)
    return np.where(x <= 0, lower, 1.0 - lower)


def _t_cdf(x, nu):
    return t3_cdf(x) if nu == 3 else stdtr(nu, x)


def check_correlation(omega) -> np.ndarray:
    omega = np.asarray(omega, dtype=float)
    if omega.ndim != 2 or omega.shape[0] != omega.shape[1]:
        raise NotPositiveDefinite(f"correlation matrix must be square, got {omega.shape}")
    if not np.allclose(omega, omega.T, atol=1e-12) or not np.allclose(np.diag(omega), 1.0):
        raise NotPositiveDefinite("correlation matrix must be symmetric with unit diagonal")
    try:
        return np.linalg.cholesky(omega)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite("correlation matrix is not positive definite") from exc


def _latent(m, law: SegmentLaw, rng):
    """Copula draws as a pair ``(u, 1 - u)``, each computed without cancellation."""
    chol = check_correlation(law.omega)
    z = rng.standard_normal((m, chol.shape[0])) @ chol.T
    if law.family == "gaussian":
        return ndtr(z), ndtr(-z)
    w = rng.chisquare(law.nu, size=(m, 1))
    t = z / np.sqrt(w / law.nu)
    return _t_cdf(t, law.nu), _t_cdf(-t, law.nu)


def _open_unit(u):
    return np.clip(u, np.nextafter(0.0, 1.0), np.nextafter(1.0, 0.0))


def sample_gaussian_copula(m: int, omega, rng=None) -> np.ndarray:
    """``m`` draws from the Gaussian copula with correlation ``omega``."""
    rng = np.random.default_rng(rng)
    return _open_unit(_latent(m, SegmentLaw("gaussian", np.asarray(omega, float)), rng)[0])


def sample_t_copula(m: int, omega, nu: float = 3.0, rng=None) -> np.ndarray:
    """``m`` draws from the Student-t copula with correlation ``omega`` and
    ``nu`` degrees of freedom."""
    rng = np.random.default_rng(rng)
    return _open_unit(_latent(m, SegmentLaw("student_t", np.asarray(omega, float), nu), rng)[0])


def random_correlation(d: int, seed=None) -> np.ndarray:
    """Random correlation matrix: a rescaled Gram matrix of ``d x (d + 2)``
    standard normals."""
    if d < 2:
        raise InvalidSpec(f"dimension must be at least 2, got {d}")
    rng = np.random.default_rng(seed)
    while True:
        a = rng.standard_normal((d, d + 2))
        s = a @ a.T
        scale = np.sqrt(np.diag(s))
        omega = s / np.outer(scale, scale)
        omega = 0.5 * (omega + omega.T)
        np.fill_diagonal(omega, 1.0)
        try:
            np.linalg.cholesky(omega)
        except np.linalg.LinAlgError:
            continue
        return omega


def equicorrelation(d: int, rho: float) -> np.ndarray:
    if not -1.0 / (d - 1) < rho < 1.0:
        raise InvalidSpec(f"rho={rho} does not give a positive definite {d}x{d} equicorrelation")
    omega = np.full((d, d), float(rho))
    np.fill_diagonal(omega, 1.0)
    return omega


def equally_spaced(n: int, q: int) -> list[int]:
    return [l * n // (q + 1) for l in range(1, q + 1)]


def segment_laws(spec: ScenarioSpec, q: int) -> list[SegmentLaw]:
    if spec.scenario == 1:
        corr = SegmentLaw("student_t", equicorrelation(spec.d, spec.rho), spec.nu)
        if q == 0:
            return [corr]
        indep = SegmentLaw("student_t", np.eye(spec.d), spec.nu)
        return [indep if l % 2 == 0 else corr for l in range(q + 1)]
    if spec.scenario == 2:
        omega = random_correlation(spec.d, spec.omega_seed)
        t_law = SegmentLaw("student_t", omega, spec.nu)
        g_law = SegmentLaw("gaussian", omega)
        return [t_law if l % 2 == 0 else g_law for l in range(q + 1)]
    raise InvalidSpec(f"unknown scenario {spec.scenario}")


def _to_margin(u, s, margin):
    if margin == "uniform":
        return _open_unit(u)
    if margin == "pareto2":
        return 1.0 / np.sqrt(s)
    return np.where(u < 0.5, ndtri(u), -ndtri(s))


def generate_scenario(spec: ScenarioSpec, rng=None) -> SimulatedData:
    """Simulate a series from Scenario 1 or 2.

    Parameters
    ----------
    spec : ScenarioSpec
    rng : numpy Generator or seed, optional

    Returns
    -------
    SimulatedData
        ``values`` on the requested margin and the true change points, each
        the number of rows before the change.
    """
    if spec.margin not in MARGINS:
        raise InvalidSpec(f"margin must be one of {MARGINS}, got {spec.margin!r}")
    if spec.d < 2:
        raise InvalidSpec(f"dimension must be at least 2, got {spec.d}")
    if spec.change_points is not None:
        cps = [int(c) for c in spec.change_points]
    else:
        if spec.q < 0:
            raise InvalidSpec(f"q must be non-negative, got {spec.q}")
        cps = equally_spaced(spec.n, spec.q)
    cuts = [0, *cps, spec.n]
    if any(b - a < 2 for a, b in zip(cuts, cuts[1:])):
        raise InvalidSpec(f"change points {cps} leave a segment shorter than 2 in n={spec.n}")

    rng = np.random.default_rng(rng)
    laws = segment_laws(spec, len(cps))
    us, ss = [], []
    for (a, b), law in zip(zip(cuts, cuts[1:]), laws):
        u, s = _latent(b - a, law, rng)
        us.append(u)
        ss.append(s)
    values = _to_margin(np.vstack(us), np.vstack(ss), spec.margin)
    return SimulatedData(values, cps, laws, spec)
