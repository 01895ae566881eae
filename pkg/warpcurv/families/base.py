"""
Surface Family Base Module

Defines the abstract base class every analytic hypersurface family inherits
from to work with the curvature, quadrature and verification layers.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, ClassVar

import numpy as np

from warpcurv.ambient import WarpedAmbient
from warpcurv.errors import ChartError, UnsupportedFamilyError

GRID_TORUS = "torus"
GRID_SPHERE = "sphere"


@dataclass(frozen=True)
class ParamPoint:
    """Chart coordinates of a point on the parameter domain."""

    coords: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(float(x) for x in self.coords))

    def as_array(self) -> np.ndarray:
        return np.array(self.coords, dtype=float)

    def __len__(self) -> int:
        return len(self.coords)


def as_param(q) -> np.ndarray:
    """Accept a ParamPoint or any coordinate sequence."""
    if isinstance(q, ParamPoint):
        return q.as_array()
    return np.asarray(q, dtype=float)


class SurfaceFamily(ABC):
    """
    Abstract base class for closed immersed hypersurfaces of a WarpedAmbient.

    Required Methods:
        - immerse(): ambient point and analytic Jacobian columns
        - second_derivatives(): analytic second parameter derivatives
        - inward_reference(): ambient vector the inward normal must pair
          positively with
        - params(): JSON-ready parameter description

    Families are immutable and hashable so sampled grids can be cached.
    """

    kind: ClassVar[str] = "abstract"
    grid_kind: ClassVar[str] = GRID_TORUS
    requires_fiber: ClassVar[str] = "torus"

    @abstractmethod
    def immerse(self, amb: WarpedAmbient, q) -> tuple[np.ndarray, np.ndarray]:
        """
        Map a parameter point into M.

        Returns:
            (x, J) with x of shape (n+1,) in coordinates (t, p) and J of
            shape (n+1, n) holding d f / d q_i as columns.
        """

    @abstractmethod
    def second_derivatives(self, amb: WarpedAmbient, q) -> np.ndarray:
        """Array D of shape (n+1, n, n) with D[:, i, j] = d_i d_j f."""

    @abstractmethod
    def inward_reference(self, amb: WarpedAmbient, q) -> np.ndarray:
        """Ambient vector pointing into the enclosed region at f(q)."""

    @abstractmethod
    def params(self) -> dict[str, Any]:
        """Parameters for reports."""

    def validate_param(self, amb: WarpedAmbient, q) -> np.ndarray:
        """Return q as an array, raising ChartError outside the chart."""
        arr = as_param(q)
        if arr.shape != (amb.n,) or not np.all(np.isfinite(arr)):
            raise ChartError(f"{self.kind}: parameter point {arr.tolist()} outside the chart")
        return arr

    def check_ambient(self, amb: WarpedAmbient) -> None:
        """Raise UnsupportedFamilyError when the fiber does not fit the family."""
        if amb.fiber.kind != self.requires_fiber:
            raise UnsupportedFamilyError(
                f"{self.kind} requires a {self.requires_fiber} fiber, ambient has {amb.fiber.kind}"
            )

    @property
    def is_torus_family(self) -> bool:
        return self.grid_kind == GRID_TORUS

    def describe(self) -> dict[str, Any]:
        return {"kind": self.kind, **self.params()}


def check_family_inheritance(family_class: type) -> bool:
    """Verify that a family class inherits from SurfaceFamily."""
    return isinstance(family_class, type) and issubclass(family_class, SurfaceFamily)
