"""
Torus Graph Family

Graphs t = u(p) over a flat torus fiber, with u a finite Fourier series.
Derivatives of u are exact term by term.
"""

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from warpcurv.ambient import FlatTorus, WarpedAmbient
from warpcurv.errors import ArgumentError, UnsupportedFamilyError
from warpcurv.families.base import SurfaceFamily


@dataclass(frozen=True)
class FourierMode:
    """a cos(phi) + b sin(phi) with phi = 2 pi sum_i wave_i p_i / L_i."""

    wave: tuple[int, ...]
    cos: float = 0.0
    sin: float = 0.0

    def __post_init__(self):
        wave = tuple(int(m) for m in self.wave)
        if not wave:
            raise ArgumentError("Fourier mode needs a non-empty wave vector")
        if not (math.isfinite(self.cos) and math.isfinite(self.sin)):
            raise ArgumentError(f"Fourier coefficients must be finite, got {self.cos}, {self.sin}")
        object.__setattr__(self, "wave", wave)
        object.__setattr__(self, "cos", float(self.cos))
        object.__setattr__(self, "sin", float(self.sin))


@dataclass(frozen=True)
class TorusGraph(SurfaceFamily):
    """t = base + sum of Fourier modes over the torus fiber."""

    base: float = 0.0
    modes: tuple[FourierMode, ...] = field(default_factory=tuple)

    kind = "torus_graph"

    def __post_init__(self):
        object.__setattr__(self, "modes", tuple(self.modes))

    @classmethod
    def single_mode(cls, amplitude: float, n: int = 2, axis: int = 0, base: float = 0.0,
                    frequency: int = 1, use_sine: bool = False) -> "TorusGraph":
        """base + amplitude * cos(2 pi frequency p_axis / L_axis) (or sine)."""
        wave = [0] * n
        wave[axis] = frequency
        mode = FourierMode(tuple(wave), 0.0 if use_sine else amplitude, amplitude if use_sine else 0.0)
        return cls(base=base, modes=(mode,))

    def _wavenumbers(self, amb: WarpedAmbient) -> np.ndarray:
        if not isinstance(amb.fiber, FlatTorus):
            raise UnsupportedFamilyError("torus_graph requires a torus fiber")
        if not self.modes:
            return np.zeros((0, amb.n))
        waves = np.array([m.wave for m in self.modes], dtype=float)
        if waves.shape[1] != amb.n:
            raise ArgumentError(f"Fourier wave vectors have length {waves.shape[1]}, ambient n={amb.n}")
        return 2.0 * math.pi * waves / np.array(amb.fiber.periods)

    def height_jet(self, amb: WarpedAmbient, p: np.ndarray) -> tuple[float, np.ndarray, np.ndarray]:
        """u, Du and D^2 u at p."""
        k = self._wavenumbers(amb)
        n = amb.n
        if k.shape[0] == 0:
            return float(self.base), np.zeros(n), np.zeros((n, n))
        a = np.array([m.cos for m in self.modes])
        b = np.array([m.sin for m in self.modes])
        phase = k @ p
        c, s = np.cos(phase), np.sin(phase)
        value = float(self.base + np.sum(a * c + b * s))
        slope = (b * c - a * s) @ k
        curv = -np.einsum("m,mi,mj->ij", a * c + b * s, k, k)
        return value, slope, curv

    def height(self, amb: WarpedAmbient, p: np.ndarray) -> float:
        return self.height_jet(amb, np.asarray(p, dtype=float))[0]

    def immerse(self, amb: WarpedAmbient, q) -> tuple[np.ndarray, np.ndarray]:
        p = self.validate_param(amb, q)
        u, du, _ = self.height_jet(amb, p)
        x = np.concatenate(([u], p))
        J = np.zeros((amb.dim, amb.n))
        J[0, :] = du
        J[1:, :] = np.eye(amb.n)
        return x, J

    def second_derivatives(self, amb: WarpedAmbient, q) -> np.ndarray:
        p = self.validate_param(amb, q)
        _, _, d2u = self.height_jet(amb, p)
        D = np.zeros((amb.dim, amb.n, amb.n))
        D[0] = d2u
        return D

    def inward_reference(self, amb: WarpedAmbient, q) -> np.ndarray:
        ref = np.zeros(amb.dim)
        ref[0] = -1.0
        return ref

    def params(self) -> dict[str, Any]:
        return {
            "base": float(self.base),
            "modes": [{"wave": list(m.wave), "cos": m.cos, "sin": m.sin} for m in self.modes],
        }
