"""
Slice Family

The level hypersurface {s} x P of a torus-fibered ambient.
"""

from dataclasses import dataclass
from typing import Any

import numpy as np

from warpcurv.ambient import WarpedAmbient
from warpcurv.families.base import SurfaceFamily


@dataclass(frozen=True)
class Slice(SurfaceFamily):
    """{s} x P, parametrized by the fiber coordinates."""

    s: float = 0.0

    kind = "slice"

    def height(self, amb: WarpedAmbient, p: np.ndarray) -> float:
        return float(self.s)

    def immerse(self, amb: WarpedAmbient, q) -> tuple[np.ndarray, np.ndarray]:
        p = self.validate_param(amb, q)
        x = np.concatenate(([float(self.s)], p))
        J = np.zeros((amb.dim, amb.n))
        J[1:, :] = np.eye(amb.n)
        return x, J

    def second_derivatives(self, amb: WarpedAmbient, q) -> np.ndarray:
        self.validate_param(amb, q)
        return np.zeros((amb.dim, amb.n, amb.n))

    def inward_reference(self, amb: WarpedAmbient, q) -> np.ndarray:
        ref = np.zeros(amb.dim)
        ref[0] = -1.0
        return ref

    def params(self) -> dict[str, Any]:
        return {"s": float(self.s)}
