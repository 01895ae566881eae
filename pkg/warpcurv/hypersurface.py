"""
Hypersurface Module

Fundamental forms, inward normals and curvature profiles of the analytic
families, plus the intrinsic operators L_0 and L_1 on periodic grids.

Conventions:
    - h_ij = g(N, nabla_{d_i} d_j) with N the inward unit normal, so the
      slice {s} x P has principal curvatures 1 with respect to -d_t.
    - The shape operator is stored whitened, A = L^{-1} h L^{-T} with
      g1 = L L^T; Newton tensors and intrinsic Hessians use the same frame.
"""

import logging
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

import numpy as np

from warpcurv.ambient import AmbientPoint, WarpedAmbient, christoffel_at, metric_array, potential_jet
from warpcurv.errors import ArgumentError, ImmersionDegeneracyError, NumericalFailure, UnsupportedFamilyError
from warpcurv.families.base import SurfaceFamily, as_param
from warpcurv.linalg import CurvatureProfile, SymMatrix, cholesky_factor, newton_tensors, whiten

if TYPE_CHECKING:
    from warpcurv.quadrature import SurfaceGrid

logger = logging.getLogger(__name__)

DEGENERACY_TOLERANCE = 1e-12
NORMAL_FD_STEP = 1e-5
LK_ORDERS = (0, 1)


# =============================================================================
# CURVATURE DATA
# =============================================================================

@dataclass(frozen=True)
class CurvatureData:
    """Everything the verifier needs at one parameter point."""

    param: tuple[float, ...]
    point: AmbientPoint
    tangents: np.ndarray
    normal: np.ndarray
    g1: SymMatrix
    g2: SymMatrix
    shape: SymMatrix
    factor: np.ndarray
    profile: CurvatureProfile
    area_element: float
    V: float
    VN: float

    @property
    def height(self) -> float:
        return self.point.t

    @property
    def normal_t(self) -> float:
        """<N, d_t>, which is the t-component of N since g_tt = 1."""
        return float(self.normal[0])

    @property
    def mean_curvature(self) -> float:
        return self.profile.hk[1]

    @property
    def principal(self) -> tuple[float, ...]:
        return self.profile.principal

    @property
    def umbilicity_defect(self) -> float:
        return self.profile.umbilicity_defect

    def hk(self, k: int) -> float:
        if not 0 <= k <= self.profile.n:
            raise ArgumentError(f"order k={k} outside [0, {self.profile.n}]")
        return self.profile.hk[k]


# =============================================================================
# IMMERSION AND NORMAL
# =============================================================================

def immerse(fam: SurfaceFamily, amb: WarpedAmbient, q) -> tuple[AmbientPoint, np.ndarray]:
    """Ambient point and analytic tangent columns d f / d q_i."""
    fam.check_ambient(amb)
    x, J = fam.immerse(amb, q)
    return amb.point(x[0], x[1:]), J


def _normal_from_frame(amb: WarpedAmbient, x: np.ndarray, J: np.ndarray, reference: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(J, axis=0)
    if np.any(norms == 0.0) or not np.all(np.isfinite(J)):
        raise ImmersionDegeneracyError("tangent basis has a vanishing column", {"jacobian": J.tolist()})
    _, singular, vt = np.linalg.svd((J / norms).T)
    if singular[-1] <= DEGENERACY_TOLERANCE * singular[0]:
        raise ImmersionDegeneracyError(
            "tangent basis is rank deficient",
            {"jacobian": J.tolist(), "singular_values": singular.tolist()},
        )
    covector = vt[-1]
    raised = np.linalg.solve(metric_array(amb, x), covector)
    normal = raised / math.sqrt(float(covector @ raised))
    # g(normal, reference) has the sign of covector . reference
    if float(covector @ reference) < 0.0:
        normal = -normal
    return normal


def inward_normal(fam: SurfaceFamily, amb: WarpedAmbient, q) -> np.ndarray:
    """
    Unit g-normal pointing into the enclosed region.

    Raises:
        ImmersionDegeneracyError: if the tangent columns are rank deficient.
    """
    fam.check_ambient(amb)
    x, J = fam.immerse(amb, q)
    return _normal_from_frame(amb, x, J, fam.inward_reference(amb, q))


def curvature_data(fam: SurfaceFamily, amb: WarpedAmbient, q) -> CurvatureData:
    """
    Fundamental forms, shape operator and curvature profile at q.

    Raises:
        DegenerateMetricError: if g1 is not positive definite.
        NumericalFailure: if any form has non-finite entries.
    """
    fam.check_ambient(amb)
    arr = as_param(q)
    x, J = fam.immerse(amb, arr)
    D = fam.second_derivatives(amb, arr)
    normal = _normal_from_frame(amb, x, J, fam.inward_reference(amb, arr))

    G = metric_array(amb, x)
    gamma = christoffel_at(amb, x)
    first = J.T @ G @ J
    accel = D + np.einsum("abc,bi,cj->aij", gamma, J, J)
    second = np.einsum("a,ab,bij->ij", normal, G, accel)
    if not (np.all(np.isfinite(first)) and np.all(np.isfinite(second))):
        raise NumericalFailure(
            f"{fam.kind}: non-finite fundamental form",
            {"param": arr.tolist(), "point": x.tolist()},
        )

    g1 = SymMatrix(first)
    g2 = SymMatrix(second)
    L = cholesky_factor(g1)
    shape = SymMatrix(whiten(L, g2.entries))
    profile = newton_tensors(shape)
    jet = potential_jet(amb, x)
    VN = float(jet.grad @ G @ normal)

    return CurvatureData(
        param=tuple(float(v) for v in arr),
        point=amb.point(x[0], x[1:]),
        tangents=J,
        normal=normal,
        g1=g1,
        g2=g2,
        shape=shape,
        factor=L,
        profile=profile,
        area_element=float(np.prod(np.diag(L))),
        V=jet.V,
        VN=VN,
    )


def second_form_by_normal(fam: SurfaceFamily, amb: WarpedAmbient, q, step: float = NORMAL_FD_STEP) -> SymMatrix:
    """
    h_ij = -g(nabla_{d_i} N, d_j), with d_i N from central differences of
    the analytic normal field.
    """
    arr = as_param(q)
    x, J = fam.immerse(amb, arr)
    G = metric_array(amb, x)
    gamma = christoffel_at(amb, x)
    normal = inward_normal(fam, amb, arr)
    n = amb.n
    dN = np.zeros((amb.dim, n))
    for i in range(n):
        e = np.zeros(n)
        e[i] = step
        dN[:, i] = (inward_normal(fam, amb, arr + e) - inward_normal(fam, amb, arr - e)) / (2.0 * step)
    covariant = dN + np.einsum("abc,bi,c->ai", gamma, J, normal)
    return SymMatrix(-(covariant.T @ G @ J))


def scalar_curvature(data: CurvatureData, n: int | None = None) -> float:
    """S = n(n-1)(H_2 - 1) from the Gauss equation in curvature -1."""
    n = data.profile.n if n is None else n
    return n * (n - 1) * (data.profile.hk[2] - 1.0)


# =============================================================================
# INTRINSIC OPERATORS ON PERIODIC GRIDS
# =============================================================================

def spectral_derivative(field: np.ndarray, axis: int, period: float, order: int = 1) -> np.ndarray:
    """
    Fourier derivative of a real periodic field sampled uniformly along axis.

    The Nyquist mode is dropped for odd orders so real data stays real.
    """
    N = field.shape[axis]
    k = 2.0 * math.pi * np.fft.fftfreq(N, d=period / N)
    if order % 2 == 1 and N % 2 == 0:
        k[N // 2] = 0.0
    multiplier = (1j * k) ** order
    shape = [1] * field.ndim
    shape[axis] = N
    spectrum = np.fft.fft(field, axis=axis) * multiplier.reshape(shape)
    return np.fft.ifft(spectrum, axis=axis).real


def _require_torus(fam: SurfaceFamily, grid: "SurfaceGrid") -> None:
    if not fam.is_torus_family or grid.kind != "torus":
        raise UnsupportedFamilyError(f"intrinsic operators need a periodic grid; {fam.kind} has none")


def intrinsic_hessian_field(fam: SurfaceFamily, amb: WarpedAmbient, grid: "SurfaceGrid",
                            values: Sequence[float], samples: Sequence[CurvatureData]) -> np.ndarray:
    """
    Covariant Hessian of u in the induced metric at every grid node.

    Returns:
        Array of shape (nodes, n, n) in parameter coordinates.
    """
    _require_torus(fam, grid)
    n = amb.n
    shape = grid.shape
    u = np.asarray(values, dtype=float).reshape(shape)
    g = np.stack([s.g1.entries for s in samples]).reshape(*shape, n, n)
    periods = grid.periods

    du = np.stack([spectral_derivative(u, a, periods[a]) for a in range(n)], axis=-1)
    ddu = np.zeros((*shape, n, n))
    for a in range(n):
        ddu[..., a, a] = spectral_derivative(u, a, periods[a], order=2)
        for b in range(a + 1, n):
            mixed = spectral_derivative(spectral_derivative(u, a, periods[a]), b, periods[b])
            ddu[..., a, b] = mixed
            ddu[..., b, a] = mixed

    dg = np.stack([spectral_derivative(g, c, periods[c]) for c in range(n)], axis=-3)  # [..., c, a, b]
    lowered = 0.5 * (
        np.einsum("...ilj->...lij", dg) + np.einsum("...jli->...lij", dg) - dg
    )
    gamma = np.einsum("...kl,...lij->...kij", np.linalg.inv(g), lowered)
    hess = ddu - np.einsum("...kij,...k->...ij", gamma, du)
    return hess.reshape(-1, n, n)


def intrinsic_hessian(fam: SurfaceFamily, amb: WarpedAmbient, grid: "SurfaceGrid",
                      values: Sequence[float], samples: Sequence[CurvatureData], node: int) -> SymMatrix:
    """Hess u at one grid node."""
    return SymMatrix(intrinsic_hessian_field(fam, amb, grid, values, samples)[node])


def lk_field(k: int, fam: SurfaceFamily, amb: WarpedAmbient, grid: "SurfaceGrid",
             values: Sequence[float], samples: Sequence[CurvatureData]) -> np.ndarray:
    """L_k(u) = tr(T_k Hess u) at every node, both whitened by the factor of g1."""
    if k not in LK_ORDERS:
        raise ArgumentError(f"L_k is available for k in {LK_ORDERS}, got {k}")
    hess = intrinsic_hessian_field(fam, amb, grid, values, samples)
    out = np.empty(len(samples))
    for i, data in enumerate(samples):
        whitened = whiten(data.factor, hess[i])
        out[i] = float(np.einsum("ij,ji->", data.profile.newton[k].entries, whitened))
    return out


def lk_apply(k: int, fam: SurfaceFamily, amb: WarpedAmbient, grid: "SurfaceGrid",
             values: Sequence[float], samples: Sequence[CurvatureData], node: int) -> float:
    """L_k(u) at one grid node."""
    return float(lk_field(k, fam, amb, grid, values, samples)[node])


def exp_height_rhs(k: int, data: CurvatureData) -> float:
    """
    Closed form of L_k(e^h) for the height function h:
    L_0(e^h) = n e^h (1 + H <N, d_t>) and
    L_1(e^h) = n(n-1) e^h (H + <N, d_t> H_2).
    """
    n = data.profile.n
    e = math.exp(data.height)
    if k == 0:
        return n * e * (1.0 + data.mean_curvature * data.normal_t)
    if k == 1:
        return n * (n - 1) * e * (data.mean_curvature + data.normal_t * data.profile.hk[2])
    raise ArgumentError(f"closed form of L_k(e^h) is available for k in {LK_ORDERS}, got {k}")
