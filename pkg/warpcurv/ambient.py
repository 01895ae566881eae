"""
Ambient Module

The pseudo-hyperbolic warped product M = R x_exp P with metric
dt^2 + e^{2t} g_P over a flat fiber, its Christoffel symbols and curvature,
and the potential V = c e^t together with its first and second
covariant derivatives.

Coordinates are always (t, p_1, ..., p_n); no orthonormal frames.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from warpcurv.errors import ArgumentError, NumericalFailure
from warpcurv.linalg import SymMatrix

logger = logging.getLogger(__name__)

FD_STEP = 1e-5
FD_STEP_SECOND = 1e-4  # nested differences; cancellation grows like 1/h^2


# =============================================================================
# TYPES
# =============================================================================

@dataclass(frozen=True)
class FlatTorus:
    """Flat torus fiber R^n / (L_1 Z x ... x L_n Z)."""

    periods: tuple[float, ...]

    def __post_init__(self):
        periods = tuple(float(x) for x in self.periods)
        if not periods or any(not math.isfinite(x) or x <= 0.0 for x in periods):
            raise ArgumentError(f"torus periods must be positive, got {self.periods}")
        object.__setattr__(self, "periods", periods)

    @property
    def kind(self) -> str:
        return "torus"

    @property
    def volume(self) -> float:
        return math.prod(self.periods)


@dataclass(frozen=True)
class EuclideanFiber:
    """Flat R^n fiber; M is then hyperbolic space in horospherical coordinates."""

    @property
    def kind(self) -> str:
        return "euclidean"


Fiber = Union[FlatTorus, EuclideanFiber]


@dataclass(frozen=True)
class WarpedAmbient:
    """R x_exp P with fiber dimension n, so dim M = n + 1."""

    n: int
    fiber: Fiber = field(default_factory=EuclideanFiber)
    potential_scale: float = 1.0

    def __post_init__(self):
        if int(self.n) != self.n or not 2 <= self.n <= 7:
            raise ArgumentError(f"fiber dimension n={self.n} outside [2, 7]")
        if isinstance(self.fiber, FlatTorus) and len(self.fiber.periods) != self.n:
            raise ArgumentError(
                f"torus has {len(self.fiber.periods)} periods but n={self.n}"
            )
        if not math.isfinite(self.potential_scale) or self.potential_scale <= 0.0:
            raise ArgumentError(f"potential_scale must be positive, got {self.potential_scale}")

    @property
    def dim(self) -> int:
        return self.n + 1

    @property
    def is_torus(self) -> bool:
        return isinstance(self.fiber, FlatTorus)

    def point(self, t: float, p) -> "AmbientPoint":
        """Build a point, reducing torus coordinates mod the periods."""
        coords = tuple(float(x) for x in p)
        if len(coords) != self.n:
            raise ArgumentError(f"expected {self.n} fiber coordinates, got {len(coords)}")
        if isinstance(self.fiber, FlatTorus):
            coords = tuple(x % L for x, L in zip(coords, self.fiber.periods))
        return AmbientPoint(float(t), coords)


@dataclass(frozen=True)
class AmbientPoint:
    """A point (t, p) of M."""

    t: float
    p: tuple[float, ...]

    def __post_init__(self):
        if not math.isfinite(self.t) or not all(math.isfinite(x) for x in self.p):
            raise NumericalFailure("ambient point has non-finite coordinates",
                                   {"t": self.t, "p": list(self.p)})

    def as_array(self) -> np.ndarray:
        return np.array((self.t, *self.p), dtype=float)


@dataclass(frozen=True)
class PotentialJet:
    """V, its gradient (upper index) and covariant Hessian at one point."""

    V: float
    grad: np.ndarray
    hess: SymMatrix


def _coords(x) -> np.ndarray:
    if isinstance(x, AmbientPoint):
        return x.as_array()
    return np.asarray(x, dtype=float)


# =============================================================================
# METRIC AND CONNECTION
# =============================================================================

def metric_array(amb: WarpedAmbient, x) -> np.ndarray:
    """diag(1, e^{2t}, ..., e^{2t}) as a plain array."""
    t = float(_coords(x)[0])
    diag = np.full(amb.dim, math.exp(2.0 * t))
    diag[0] = 1.0
    return np.diag(diag)


def metric_at(amb: WarpedAmbient, x) -> SymMatrix:
    """Metric components in coordinates (t, p_1..p_n)."""
    return SymMatrix(metric_array(amb, x))


def christoffel_at(amb: WarpedAmbient, x) -> np.ndarray:
    """
    Gamma[a, b, c] = Gamma^a_{bc}.

    Gamma^t_{ij} = -e^{2t} delta_ij and Gamma^i_{tj} = Gamma^i_{jt} = delta^i_j;
    everything else vanishes.
    """
    t = float(_coords(x)[0])
    d = amb.dim
    w = math.exp(2.0 * t)
    gamma = np.zeros((d, d, d))
    for i in range(1, d):
        gamma[0, i, i] = -w
        gamma[i, 0, i] = 1.0
        gamma[i, i, 0] = 1.0
    return gamma


def christoffel_fd(amb: WarpedAmbient, x, step: float = FD_STEP) -> np.ndarray:
    """Koszul formula applied to central differences of metric_at."""
    x0 = _coords(x)
    d = amb.dim
    dg = np.zeros((d, d, d))  # dg[c, a, b] = d_c g_ab
    for c in range(d):
        e = np.zeros(d)
        e[c] = step
        dg[c] = (metric_array(amb, x0 + e) - metric_array(amb, x0 - e)) / (2.0 * step)
    ginv = np.linalg.inv(metric_array(amb, x0))
    # lowered[d, b, c] = 1/2 (d_b g_dc + d_c g_db - d_d g_bc)
    lowered = 0.5 * (np.einsum("bdc->dbc", dg) + np.einsum("cdb->dbc", dg) - dg)
    return np.einsum("ad,dbc->abc", ginv, lowered)


def metric_compatibility_defect(amb: WarpedAmbient, x) -> float:
    """max |d_b g_cd - Gamma^e_bc g_ed - Gamma^e_bd g_ce| with closed-form derivatives."""
    x0 = _coords(x)
    d = amb.dim
    g = metric_array(amb, x0)
    gamma = christoffel_at(amb, x0)
    dg = np.zeros((d, d, d))
    dg[0] = 2.0 * g
    dg[0, 0, 0] = 0.0
    lowered = np.einsum("ebc,ed->bcd", gamma, g)
    residual = dg - lowered - np.einsum("bdc->bcd", lowered)
    return float(np.max(np.abs(residual)))


# =============================================================================
# CURVATURE
# =============================================================================

def riemann_fd(amb: WarpedAmbient, x, step: float = FD_STEP) -> np.ndarray:
    """
    R[a, b, c, d] = R^a_{bcd}, with R(d_c, d_d) d_b = R^a_{bcd} d_a.

    Derivatives of christoffel_at are taken by central differences.
    """
    x0 = _coords(x)
    dim = amb.dim
    gamma = christoffel_at(amb, x0)
    dgamma = np.zeros((dim, dim, dim, dim))  # dgamma[c, a, d, b] = d_c Gamma^a_{db}
    for c in range(dim):
        e = np.zeros(dim)
        e[c] = step
        dgamma[c] = (christoffel_at(amb, x0 + e) - christoffel_at(amb, x0 - e)) / (2.0 * step)
    term1 = np.einsum("cadb->abcd", dgamma)
    term2 = np.einsum("dacb->abcd", dgamma)
    term3 = np.einsum("ace,edb->abcd", gamma, gamma)
    term4 = np.einsum("ade,ecb->abcd", gamma, gamma)
    return term1 - term2 + term3 - term4


def sectional_curvature(amb: WarpedAmbient, x, X: np.ndarray, Y: np.ndarray,
                        riemann: np.ndarray = None) -> float:
    """<R(X,Y)Y, X> / |X ^ Y|^2."""
    x0 = _coords(x)
    R = riemann_fd(amb, x0) if riemann is None else riemann
    g = metric_array(amb, x0)
    RXYY = np.einsum("abcd,b,c,d->a", R, Y, X, Y)
    numerator = float(X @ g @ RXYY)
    denominator = float((X @ g @ X) * (Y @ g @ Y) - (X @ g @ Y) ** 2)
    return numerator / denominator


@dataclass(frozen=True)
class CurvatureSelftestReport:
    """Maximum deviations from constant curvature -1 over random samples."""

    samples: int
    max_sectional_deviation: float
    max_ricci_deviation: float
    max_scalar_deviation: float
    max_metric_compatibility: float
    tolerance: float
    passed: bool


def curvature_selftest(amb: WarpedAmbient, sample_count: int = 100, seed: int = 42,
                       tolerance: float = 1e-5, t_range: tuple[float, float] = (-2.0, 2.0)
                       ) -> CurvatureSelftestReport:
    """
    Finite-difference check that the ambient has sectional curvature -1,
    Ricci = -n g and scalar curvature -n(n+1) at random points.
    """
    rng = np.random.default_rng(seed)
    n = amb.n
    dim = amb.dim
    periods = amb.fiber.periods if isinstance(amb.fiber, FlatTorus) else (1.0,) * n
    sec_dev = ric_dev = scal_dev = compat = 0.0
    for _ in range(sample_count):
        t = rng.uniform(*t_range)
        p = np.array([rng.uniform(0.0, L) for L in periods])
        x = np.concatenate(([t], p))
        R = riemann_fd(amb, x)
        g = metric_array(amb, x)
        a, b = sorted(rng.choice(dim, size=2, replace=False))
        K = sectional_curvature(amb, x, np.eye(dim)[a], np.eye(dim)[b], riemann=R)
        sec_dev = max(sec_dev, abs(K + 1.0))
        ricci = np.einsum("abad->bd", R)
        # compare relative to the metric scale; entries grow like e^{2t}
        weights = np.sqrt(np.outer(np.diag(g), np.diag(g)))
        ric_dev = max(ric_dev, float(np.max(np.abs(ricci + n * g) / weights)))
        scalar = float(np.einsum("bd,bd->", np.linalg.inv(g), ricci))
        scal_dev = max(scal_dev, abs(scalar + n * (n + 1)))
        compat = max(compat, metric_compatibility_defect(amb, x))

    passed = max(sec_dev, ric_dev, scal_dev) <= tolerance and compat <= 1e-12
    report = CurvatureSelftestReport(sample_count, sec_dev, ric_dev, scal_dev, compat, tolerance, passed)
    if passed:
        logger.info(f"✅ Curvature self-test passed ({sample_count} samples, max |K+1| = {sec_dev:.2e})")
    else:
        logger.warning(f"⚠️ Curvature self-test exceeded tolerance {tolerance:g}: {report}")
    return report


# =============================================================================
# POTENTIAL
# =============================================================================

def potential_value(amb: WarpedAmbient, t: float) -> float:
    """V = c e^t."""
    return amb.potential_scale * math.exp(t)


def potential_jet(amb: WarpedAmbient, x) -> PotentialJet:
    """
    V = c e^t with gradient c e^t d_t and Hess V = d d V - Gamma dV.

    The Hessian is computed through christoffel_at; equality with V g is an
    invariant to check, not an assumption.
    """
    x0 = _coords(x)
    dim = amb.dim
    V = potential_value(amb, float(x0[0]))
    dV = np.zeros(dim)
    dV[0] = V
    ddV = np.zeros((dim, dim))
    ddV[0, 0] = V
    gamma = christoffel_at(amb, x0)
    hess = ddV - np.einsum("cab,c->ab", gamma, dV)
    grad = np.linalg.solve(metric_array(amb, x0), dV)
    return PotentialJet(V=V, grad=grad, hess=SymMatrix(hess))


def _potential_fd(amb: WarpedAmbient, x0: np.ndarray) -> np.ndarray:
    """Covariant Hessian of V from nested central differences and FD Christoffels."""
    dim = amb.dim
    h = FD_STEP_SECOND

    def V(y):
        return potential_value(amb, float(y[0]))

    ddV = np.zeros((dim, dim))
    for a in range(dim):
        for b in range(dim):
            ea = np.zeros(dim)
            eb = np.zeros(dim)
            ea[a] = h
            eb[b] = h
            ddV[a, b] = (V(x0 + ea + eb) - V(x0 + ea - eb) - V(x0 - ea + eb) + V(x0 - ea - eb)) / (4.0 * h * h)
    dV = np.zeros(dim)
    for c in range(dim):
        e = np.zeros(dim)
        e[c] = FD_STEP
        dV[c] = (V(x0 + e) - V(x0 - e)) / (2.0 * FD_STEP)
    gamma = christoffel_fd(amb, x0)
    return ddV - np.einsum("cab,c->ab", gamma, dV)


@dataclass(frozen=True)
class PotentialSelftestReport:
    """Hess V = V g and Delta V = (n+1) V at random points."""

    samples: int
    max_closed_form_deviation: float
    max_finite_difference_deviation: float
    max_laplacian_ratio_deviation: float
    passed: bool


def potential_selftest(amb: WarpedAmbient, sample_count: int = 1000, seed: int = 42,
                       t_range: tuple[float, float] = (-2.0, 2.0),
                       closed_tolerance: float = 1e-12, fd_tolerance: float = 1e-6
                       ) -> PotentialSelftestReport:
    """Closed-form and finite-difference checks of the potential identities."""
    rng = np.random.default_rng(seed)
    periods = amb.fiber.periods if isinstance(amb.fiber, FlatTorus) else (1.0,) * amb.n
    closed = fd = lap = 0.0
    for _ in range(sample_count):
        t = rng.uniform(*t_range)
        p = np.array([rng.uniform(0.0, L) for L in periods])
        x = np.concatenate(([t], p))
        jet = potential_jet(amb, x)
        g = metric_array(amb, x)
        closed = max(closed, float(np.max(np.abs(jet.hess.entries - jet.V * g))))
        laplacian = float(np.einsum("ab,ab->", np.linalg.inv(g), jet.hess.entries))
        lap = max(lap, abs(laplacian / jet.V - amb.dim))
        fd = max(fd, float(np.max(np.abs(_potential_fd(amb, x) - jet.V * g))))

    passed = closed < closed_tolerance and lap < closed_tolerance and fd < fd_tolerance
    report = PotentialSelftestReport(sample_count, closed, fd, lap, passed)
    if passed:
        logger.info(f"✅ Potential self-test passed ({sample_count} samples)")
    else:
        logger.warning(f"⚠️ Potential self-test failed: {report}")
    return report
