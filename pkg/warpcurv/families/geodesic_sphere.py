"""
Geodesic Sphere Family

Geodesic spheres of hyperbolic space R x_exp R^n. With z = e^{-t} the
ambient is the upper half-space model, and the sphere of hyperbolic radius
rho over (z0, x0) is the Euclidean sphere with center (z0 cosh rho, x0) and
radius z0 sinh rho.

Chart: q = (zeta, a_1, ..., a_{n-2}, phi). zeta = cos(polar angle) runs
over (-1, 1); the horizontal unit vector omega on S^{n-1} uses polar angles
a_j in (0, pi) and the azimuth phi. Poles are outside the chart.
"""

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from warpcurv.ambient import WarpedAmbient
from warpcurv.errors import ArgumentError, ChartError
from warpcurv.families.base import GRID_SPHERE, SurfaceFamily

_ONE, _SIN, _COS = 0, 1, 2


def _factor(code: int, s: float, c: float, order: int) -> float:
    if code == _ONE:
        return 1.0 if order == 0 else 0.0
    if code == _SIN:
        return (s, c, -s)[order]
    return (c, -s, -c)[order]


def direction_jet(angles: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Hyperspherical unit vector omega(angles) in R^{m+1} with its first and
    second angle derivatives, shapes (m+1,), (m+1, m), (m+1, m, m).
    """
    m = len(angles)
    n = m + 1
    s = np.sin(angles)
    c = np.cos(angles)
    omega = np.zeros(n)
    d1 = np.zeros((n, m))
    d2 = np.zeros((n, m, m))
    for k in range(n):
        codes = [_SIN if j < k else (_COS if j == k else _ONE) for j in range(m)]
        omega[k] = math.prod(_factor(codes[j], s[j], c[j], 0) for j in range(m))
        for i in range(m):
            d1[k, i] = math.prod(_factor(codes[j], s[j], c[j], int(j == i)) for j in range(m))
            for l in range(m):
                d2[k, i, l] = math.prod(
                    _factor(codes[j], s[j], c[j], int(j == i) + int(j == l)) for j in range(m)
                )
    return omega, d1, d2


def sphere_measure(n: int) -> float:
    """Volume of the unit round S^n."""
    return 2.0 * math.pi ** ((n + 1) / 2.0) / math.gamma((n + 1) / 2.0)


@dataclass(frozen=True)
class GeodesicSphere(SurfaceFamily):
    """Geodesic sphere of radius rho centered over (z0, x0) in half-space coordinates."""

    rho: float = 1.0
    z0: float = 1.0
    x0: tuple[float, ...] = field(default_factory=tuple)

    kind = "geodesic_sphere"
    grid_kind = GRID_SPHERE
    requires_fiber = "euclidean"

    def __post_init__(self):
        if not (math.isfinite(self.rho) and self.rho > 0.0):
            raise ArgumentError(f"sphere radius must be positive, got {self.rho}")
        if not (math.isfinite(self.z0) and self.z0 > 0.0):
            raise ArgumentError(f"sphere center height z0 must be positive, got {self.z0}")
        object.__setattr__(self, "x0", tuple(float(v) for v in self.x0))

    # closed forms used as oracles
    @property
    def euclidean_center_height(self) -> float:
        return self.z0 * math.cosh(self.rho)

    @property
    def euclidean_radius(self) -> float:
        return self.z0 * math.sinh(self.rho)

    @property
    def principal_curvature(self) -> float:
        """coth rho, the same in every direction."""
        return 1.0 / math.tanh(self.rho)

    def area(self, n: int) -> float:
        return sphere_measure(n) * math.sinh(self.rho) ** n

    def _center_offset(self, amb: WarpedAmbient) -> np.ndarray:
        if not self.x0:
            return np.zeros(amb.n)
        if len(self.x0) != amb.n:
            raise ArgumentError(f"sphere center x0 has {len(self.x0)} coordinates, ambient n={amb.n}")
        return np.array(self.x0)

    def validate_param(self, amb: WarpedAmbient, q) -> np.ndarray:
        arr = super().validate_param(amb, q)
        zeta = arr[0]
        if not -1.0 < zeta < 1.0:
            raise ChartError(f"geodesic_sphere: zeta={zeta} is a pole or outside (-1, 1)")
        polar = arr[1:-1]
        if np.any(polar <= 0.0) or np.any(polar >= math.pi):
            raise ChartError(f"geodesic_sphere: polar angles {polar.tolist()} outside (0, pi)")
        return arr

    def _frame(self, amb: WarpedAmbient, q):
        arr = self.validate_param(amb, q)
        zeta = arr[0]
        omega, d1, d2 = direction_jet(arr[1:])
        r = math.sqrt(1.0 - zeta * zeta)
        z = self.euclidean_center_height + self.euclidean_radius * zeta
        return arr, zeta, r, z, omega, d1, d2

    def immerse(self, amb: WarpedAmbient, q) -> tuple[np.ndarray, np.ndarray]:
        _, zeta, r, z, omega, d1, _ = self._frame(amb, q)
        R = self.euclidean_radius
        x = np.concatenate(([-math.log(z)], self._center_offset(amb) + R * r * omega))
        J = np.zeros((amb.dim, amb.n))
        J[0, 0] = -R / z
        J[1:, 0] = R * (-zeta / r) * omega
        J[1:, 1:] = R * r * d1
        return x, J

    def second_derivatives(self, amb: WarpedAmbient, q) -> np.ndarray:
        _, zeta, r, z, omega, d1, d2 = self._frame(amb, q)
        R = self.euclidean_radius
        dr = -zeta / r
        ddr = -1.0 / r ** 3
        D = np.zeros((amb.dim, amb.n, amb.n))
        D[0, 0, 0] = (R / z) ** 2
        D[1:, 0, 0] = R * ddr * omega
        D[1:, 0, 1:] = R * dr * d1
        D[1:, 1:, 0] = R * dr * d1
        D[1:, 1:, 1:] = R * r * d2
        return D

    def inward_reference(self, amb: WarpedAmbient, q) -> np.ndarray:
        _, zeta, r, z, omega, _, _ = self._frame(amb, q)
        R = self.euclidean_radius
        return np.concatenate(([R * zeta / z], -R * r * omega))

    def params(self) -> dict[str, Any]:
        return {"rho": float(self.rho), "z0": float(self.z0), "x0": list(self.x0)}
