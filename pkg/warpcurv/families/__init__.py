"""
Families Module

Concrete closed hypersurface families and a registry keyed by `kind`.
"""

from typing import Optional

from warpcurv.families.base import (
    GRID_SPHERE,
    GRID_TORUS,
    ParamPoint,
    SurfaceFamily,
    check_family_inheritance,
)
from warpcurv.families.geodesic_sphere import GeodesicSphere
from warpcurv.families.slice import Slice
from warpcurv.families.torus_graph import FourierMode, TorusGraph

FAMILY_CLASSES: dict[str, type[SurfaceFamily]] = {}


def register_family(
    family_class: type, registry: Optional[dict[str, type[SurfaceFamily]]] = None
) -> type[SurfaceFamily]:
    """
    Add a family class to the registry under its `kind`.

    Raises:
        TypeError: if the class does not inherit from SurfaceFamily.
    """
    if not check_family_inheritance(family_class):
        name = getattr(family_class, "__name__", repr(family_class))
        raise TypeError(f"Family class {name} must inherit from SurfaceFamily")
    target = FAMILY_CLASSES if registry is None else registry
    target[family_class.kind] = family_class
    return family_class


for _family_class in (Slice, TorusGraph, GeodesicSphere):
    register_family(_family_class)

__all__ = [
    "FAMILY_CLASSES",
    "GRID_SPHERE",
    "GRID_TORUS",
    "FourierMode",
    "GeodesicSphere",
    "ParamPoint",
    "Slice",
    "SurfaceFamily",
    "TorusGraph",
    "check_family_inheritance",
    "register_family",
]
