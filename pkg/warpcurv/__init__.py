"""
warpcurv

Numerical curvature of hypersurfaces in R x_exp P: shape operators, higher
mean curvatures, Newton tensors and L_k operators, with checks of the
Heintze-Karcher inequality, Minkowski identities, the Garding chain and the
constant scalar curvature classification.

Modules:
    - config: Environment-driven process settings
    - errors: Exception hierarchy
    - observability: Run correlation context for logs
    - linalg: Symmetric eigen solver and symmetric-function kernel
    - ambient: Warped product metric, curvature and potential
    - families: Slice, torus graph and geodesic sphere families
    - hypersurface: Fundamental forms, normals, curvature data, L_k
    - quadrature: Grids, pairwise sums, weighted volumes
    - verifier: Named checks and convergence studies
    - runconfig: Run file schema
    - reports: JSON / CSV reports and exit codes
    - host: Concurrent suite host
    - cli: Command line front end

Usage:
    from warpcurv import WarpedAmbient, FlatTorus, Slice, check_hk, grid_for
"""

__version__ = "0.1.0"

from warpcurv.ambient import EuclideanFiber, FlatTorus, WarpedAmbient
from warpcurv.families import FourierMode, GeodesicSphere, Slice, SurfaceFamily, TorusGraph
from warpcurv.hypersurface import curvature_data, inward_normal
from warpcurv.quadrature import grid_for, integrate_surface, sphere_grid, torus_grid, weighted_volume
from warpcurv.verifier import (
    Tolerances,
    alexandrov_scan,
    check_garding,
    check_hk,
    check_lemma52,
    check_minkowski,
    convergence_study,
)

__all__ = [
    "EuclideanFiber",
    "FlatTorus",
    "FourierMode",
    "GeodesicSphere",
    "Slice",
    "SurfaceFamily",
    "Tolerances",
    "TorusGraph",
    "WarpedAmbient",
    "alexandrov_scan",
    "check_garding",
    "check_hk",
    "check_lemma52",
    "check_minkowski",
    "convergence_study",
    "curvature_data",
    "grid_for",
    "integrate_surface",
    "inward_normal",
    "sphere_grid",
    "torus_grid",
    "weighted_volume",
]
