"""
Quadrature Module

Deterministic integration over the parameter domains of the surface
families: trapezoid tensor grids on the torus, Gauss-Legendre grids on the
sphere chart, a frozen pairwise summation tree, and the weighted volume of
the region each family encloses.

Sampled surfaces are cached per (family, ambient, grid) so the checks of one
run share their curvature evaluations.
"""

import logging
import math
import threading
from collections import OrderedDict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from warpcurv.ambient import FlatTorus, WarpedAmbient
from warpcurv.errors import ArgumentError, NumericalFailure, UnsupportedFamilyError
from warpcurv.families.base import GRID_SPHERE, GRID_TORUS, ParamPoint, SurfaceFamily
from warpcurv.families.geodesic_sphere import GeodesicSphere
from warpcurv.families.slice import Slice
from warpcurv.families.torus_graph import TorusGraph
from warpcurv.hypersurface import CurvatureData, curvature_data

logger = logging.getLogger(__name__)

MIN_TORUS_RESOLUTION = 4
MIN_SPHERE_RESOLUTION = 8
PAIRWISE_BLOCK = 8
VOLUME_NODES = 256
DEFAULT_CACHE_ENTRIES = 64

Integrand = Callable[[CurvatureData], float]


# =============================================================================
# GRIDS
# =============================================================================

@dataclass(frozen=True, eq=False)
class SurfaceGrid:
    """
    Quadrature nodes and weights on a parameter domain.

    Weights are for the Lebesgue measure of the chart; the area element is
    applied separately at each node. Nodes are flattened in C order of
    `shape`.
    """

    kind: str
    nodes: np.ndarray
    weights: np.ndarray
    shape: tuple[int, ...]
    periods: tuple[float, ...] = ()

    def __post_init__(self):
        nodes = np.array(self.nodes, dtype=float)
        weights = np.array(self.weights, dtype=float)
        if nodes.shape[0] != weights.shape[0] or nodes.shape[0] != math.prod(self.shape):
            raise ArgumentError(f"grid has {nodes.shape[0]} nodes, {weights.shape[0]} weights, shape {self.shape}")
        nodes.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    @property
    def size(self) -> int:
        return self.nodes.shape[0]

    @property
    def resolution(self) -> int:
        return max(self.shape)

    @property
    def measure(self) -> float:
        return pairwise_sum(self.weights)

    @property
    def key(self) -> tuple:
        return (self.kind, self.shape, self.periods)

    def points(self) -> list[ParamPoint]:
        return [ParamPoint(tuple(row)) for row in self.nodes]


def _axis_resolutions(res, n: int, minimum: int) -> tuple[int, ...]:
    per_axis = (int(res),) * n if np.isscalar(res) else tuple(int(r) for r in res)
    if len(per_axis) != n:
        raise ArgumentError(f"expected {n} resolutions, got {len(per_axis)}")
    if any(r < minimum for r in per_axis):
        raise ArgumentError(f"resolution {per_axis} below the minimum of {minimum} per axis")
    return per_axis


def torus_grid(periods: Sequence[float], res) -> SurfaceGrid:
    """
    Uniform tensor grid with equal weights prod(L_i / N_i).

    The trapezoid rule is spectrally accurate for smooth periodic integrands.
    """
    periods = tuple(float(L) for L in periods)
    shape = _axis_resolutions(res, len(periods), MIN_TORUS_RESOLUTION)
    axes = [np.arange(N) * (L / N) for N, L in zip(shape, periods)]
    mesh = np.meshgrid(*axes, indexing="ij")
    nodes = np.stack([m.reshape(-1) for m in mesh], axis=-1)
    cell = math.prod(L / N for N, L in zip(shape, periods))
    return SurfaceGrid(GRID_TORUS, nodes, np.full(nodes.shape[0], cell), shape, periods)


def _legendre_on(lo: float, hi: float, count: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(count)
    half = 0.5 * (hi - lo)
    return lo + half * (x + 1.0), half * w


def _polar_cosine_rule(count: int) -> tuple[np.ndarray, np.ndarray]:
    """
    Nodes and d(zeta) weights for zeta = cos(theta), Gauss-Legendre in theta.

    The zeta area factor (1 - zeta^2)^{(n-2)/2} is not smooth at the poles for
    odd n; in theta it becomes sin^{n-1}(theta), analytic on [0, pi].
    """
    theta, w = _legendre_on(0.0, math.pi, count)
    return np.cos(theta)[::-1], (w * np.sin(theta))[::-1]


def sphere_grid(n: int, res: int) -> SurfaceGrid:
    """
    Chart grid (zeta, polar angles..., phi) for an n-sphere.

    zeta = cos(theta) with Gauss-Legendre nodes in theta on (0, pi), Gauss-Legendre
    in each polar angle on (0, pi), uniform in the azimuth. Weights are those of
    d(zeta) d(angles) d(phi). Gauss-Legendre nodes are interior, so no node sits
    on a pole.
    """
    if n < 2:
        raise ArgumentError(f"sphere grids need n >= 2, got {n}")
    (res,) = _axis_resolutions(res, 1, MIN_SPHERE_RESOLUTION)
    axes = [_polar_cosine_rule(res)]
    axes += [_legendre_on(0.0, math.pi, res) for _ in range(n - 2)]
    axes.append((np.arange(res) * (2.0 * math.pi / res), np.full(res, 2.0 * math.pi / res)))
    node_mesh = np.meshgrid(*[a[0] for a in axes], indexing="ij")
    weight_mesh = np.meshgrid(*[a[1] for a in axes], indexing="ij")
    nodes = np.stack([m.reshape(-1) for m in node_mesh], axis=-1)
    weights = np.prod(np.stack([m.reshape(-1) for m in weight_mesh], axis=-1), axis=-1)
    return SurfaceGrid(GRID_SPHERE, nodes, weights, (res,) * n)


def grid_for(fam: SurfaceFamily, amb: WarpedAmbient, res) -> SurfaceGrid:
    """The grid matching a family's chart."""
    fam.check_ambient(amb)
    if fam.grid_kind == GRID_SPHERE:
        return sphere_grid(amb.n, res)
    return torus_grid(amb.fiber.periods, res)


# =============================================================================
# SUMMATION
# =============================================================================

def _tree_sum(values: np.ndarray, lo: int, hi: int) -> float:
    if hi - lo <= PAIRWISE_BLOCK:
        total = 0.0
        for v in values[lo:hi]:
            total += float(v)
        return total
    mid = (lo + hi) // 2
    return _tree_sum(values, lo, mid) + _tree_sum(values, mid, hi)


def pairwise_sum(values: Sequence[float]) -> float:
    """
    Pairwise sum with a fixed split order.

    The tree depends only on the length, so results are bit-identical no
    matter how the values were produced.
    """
    arr = np.asarray(values, dtype=float).reshape(-1)
    if arr.size == 0:
        return 0.0
    return _tree_sum(arr, 0, arr.size)


# =============================================================================
# SAMPLING
# =============================================================================

class SampleCache:
    """
    Thread-safe cache of sampled surfaces.

    Entries are keyed by family, ambient and grid descriptor. At most
    `max_entries` sample sets are kept (None for no bound); the least
    recently used set is evicted first.
    """

    def __init__(self, max_entries: Optional[int] = DEFAULT_CACHE_ENTRIES):
        if max_entries is not None and max_entries < 1:
            raise ArgumentError(f"cache bound must be positive, got {max_entries}")
        self.max_entries = max_entries
        self._cache: OrderedDict[tuple, tuple[CurvatureData, ...]] = OrderedDict()
        self._lock = threading.Lock()

    def _make_key(self, fam: SurfaceFamily, amb: WarpedAmbient, grid: SurfaceGrid) -> tuple:
        return (fam, amb, grid.key)

    def get(self, fam: SurfaceFamily, amb: WarpedAmbient, grid: SurfaceGrid) -> Optional[tuple[CurvatureData, ...]]:
        key = self._make_key(fam, amb, grid)
        with self._lock:
            samples = self._cache.get(key)
            if samples is not None:
                self._cache.move_to_end(key)
        if samples is not None:
            logger.debug(f"Sample cache hit for {fam.kind} at {grid.shape}")
        return samples

    def set(self, fam: SurfaceFamily, amb: WarpedAmbient, grid: SurfaceGrid,
            samples: tuple[CurvatureData, ...]) -> tuple[CurvatureData, ...]:
        """Store samples unless another thread got there first; return the stored tuple."""
        key = self._make_key(fam, amb, grid)
        with self._lock:
            stored = self._cache.setdefault(key, samples)
            self._cache.move_to_end(key)
            while self.max_entries is not None and len(self._cache) > self.max_entries:
                evicted, _ = self._cache.popitem(last=False)
                logger.debug(f"Evicted {evicted[0].kind} at {evicted[2][1]} from the sample cache")
        return stored

    def clear(self) -> None:
        with self._lock:
            self._cache.clear()
        logger.debug("Cleared sample cache")

    def __len__(self) -> int:
        with self._lock:
            return len(self._cache)


# Global sample cache instance, the default for library calls without a cache.
# Long-lived processes release its memory with get_sample_cache().clear().
_sample_cache = SampleCache()


def get_sample_cache() -> SampleCache:
    """The process-wide cache used when no cache is passed."""
    return _sample_cache


def _check_grid(fam: SurfaceFamily, grid: SurfaceGrid) -> None:
    if grid.kind != fam.grid_kind:
        raise ArgumentError(f"{fam.kind} needs a {fam.grid_kind} grid, got {grid.kind}")


def sample_surface(fam: SurfaceFamily, amb: WarpedAmbient, grid: SurfaceGrid, threads: int = 1,
                   cache: Optional[SampleCache] = None) -> tuple[CurvatureData, ...]:
    """CurvatureData at every node, in node order."""
    _check_grid(fam, grid)
    fam.check_ambient(amb)
    cache = _sample_cache if cache is None else cache
    cached = cache.get(fam, amb, grid)
    if cached is not None:
        return cached

    def evaluate(row: np.ndarray) -> CurvatureData:
        return curvature_data(fam, amb, row)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            samples = tuple(pool.map(evaluate, grid.nodes))
    else:
        samples = tuple(evaluate(row) for row in grid.nodes)
    logger.debug(f"Sampled {fam.kind} on {grid.size} nodes")
    return cache.set(fam, amb, grid, samples)


def integrate_values(values: Sequence[float], samples: Sequence[CurvatureData], grid: SurfaceGrid) -> float:
    """sum_i w_i f_i dA_i for precomputed integrand values."""
    vals = np.asarray(values, dtype=float)
    bad = np.flatnonzero(~np.isfinite(vals))
    if bad.size:
        node = int(bad[0])
        raise NumericalFailure(
            f"integrand is not finite at node {node}",
            {"node": node, "param": list(samples[node].param)},
        )
    area = np.array([s.area_element for s in samples])
    return pairwise_sum(grid.weights * vals * area)


def integrate_surface(integrand: Integrand, fam: SurfaceFamily, amb: WarpedAmbient, grid: SurfaceGrid,
                      threads: int = 1, cache: Optional[SampleCache] = None) -> float:
    """
    Integral of integrand(data) dSigma over the family.

    Raises:
        NumericalFailure: if the integrand is NaN or infinite at a node.
    """
    samples = sample_surface(fam, amb, grid, threads=threads, cache=cache)
    return integrate_values([integrand(s) for s in samples], samples, grid)


# =============================================================================
# WEIGHTED VOLUME
# =============================================================================

def _unit_ball_volume(n: int) -> float:
    return math.pi ** (n / 2.0) / math.gamma(n / 2.0 + 1.0)


def weighted_volume(fam: SurfaceFamily, amb: WarpedAmbient, resolution: int = 64) -> float:
    """
    Integral of V over the region the inward normal points into.

    Torus families integrate e^{(n+1)t} exactly in t from -infinity to the
    surface; the sphere is swept in Euclidean slices of the half-space ball.

    Raises:
        UnsupportedFamilyError: for families without a volume reduction.
    """
    fam.check_ambient(amb)
    n = amb.n
    c = amb.potential_scale
    if isinstance(fam, Slice):
        assert isinstance(amb.fiber, FlatTorus)
        return c * math.exp((n + 1) * fam.s) / (n + 1) * amb.fiber.volume
    if isinstance(fam, TorusGraph):
        grid = torus_grid(amb.fiber.periods, resolution)
        heights = np.array([fam.height(amb, row) for row in grid.nodes])
        return pairwise_sum(grid.weights * c * np.exp((n + 1) * heights) / (n + 1))
    if isinstance(fam, GeodesicSphere):
        theta, w = _legendre_on(0.0, math.pi, VOLUME_NODES)
        zc = fam.euclidean_center_height
        R = fam.euclidean_radius
        integrand = np.sin(theta) ** (n + 1) * (zc + R * np.cos(theta)) ** (-(n + 2))
        return c * _unit_ball_volume(n) * R ** (n + 1) * pairwise_sum(w * integrand)
    raise UnsupportedFamilyError(f"no weighted-volume reduction for {fam.kind}")
