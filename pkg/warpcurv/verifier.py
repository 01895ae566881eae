"""
Verifier Module

Named checks over sampled surfaces: the Heintze-Karcher inequality and its
weighted-volume corollary, Minkowski integral identities, the Garding
chain, the constant-H_2 integral inequality, the constant scalar curvature
scan, the L_k(e^h) identities, the two-route second fundamental form check
and convergence studies.

Every check returns a report whose verdict reads "consistent at the stated
tolerances"; hypothesis failures raise HypothesisViolation instead.
"""

import logging
import math
from dataclasses import asdict, dataclass, field
from typing import Any, Optional, Sequence, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from warpcurv.ambient import WarpedAmbient, curvature_selftest, potential_selftest
from warpcurv.errors import (
    ArgumentError,
    HypothesisViolation,
    UnsupportedCheckError,
    UnsupportedFamilyError,
)
from warpcurv.families.base import SurfaceFamily
from warpcurv.hypersurface import (
    CurvatureData,
    curvature_data,
    exp_height_rhs,
    lk_field,
    scalar_curvature,
    second_form_by_normal,
)
from warpcurv.linalg import kernel_selftest
from warpcurv.quadrature import (
    SampleCache,
    SurfaceGrid,
    grid_for,
    integrate_values,
    sample_surface,
    weighted_volume,
)

logger = logging.getLogger(__name__)

TAG_SLICE = "slice"
TAG_SPHERE = "sphere"
TAG_NEITHER = "neither"

CONVERGENCE_CHECKS = ("hk", "minkowski:0", "minkowski:1", "lemma52", "l1-identity")
SIMPLE_CHECKS = ("hk", "garding", "lemma52", "alexandrov", "ambient-selftest", "l1-identity", "second-form")


class Tolerances(BaseModel):
    """
    Tolerance ladder shared by all checks.

    identity, lemma52 and linkage residuals are measured relative to the
    scale integral of V over the surface.
    """

    model_config = ConfigDict(extra="forbid", frozen=True, allow_inf_nan=False)

    identity: float = Field(default=1e-8, gt=0.0)
    umbilic: float = Field(default=1e-8, gt=0.0)
    garding: float = Field(default=1e-12, gt=0.0)
    constancy: float = Field(default=1e-8, gt=0.0)
    spread: float = Field(default=1e-8, gt=0.0)
    selftest: float = Field(default=1e-5, gt=0.0)
    lk: float = Field(default=1e-4, gt=0.0)
    floor: float = Field(default=1e-14, gt=0.0)


DEFAULT_TOLERANCES = Tolerances()


# =============================================================================
# REPORTS
# =============================================================================

def _plain(value: Any) -> Any:
    """Reduce numpy scalars and tuples to JSON-ready Python values."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    return value


@dataclass
class CheckReport:
    """Fields every check result carries."""

    check: str
    family: str
    kind: str
    params: dict[str, Any]
    resolution: int
    tolerances: dict[str, float]

    def to_dict(self) -> dict[str, Any]:
        return _plain(asdict(self))


@dataclass
class HKReport(CheckReport):
    I1: float
    I2: float
    residual: float
    normalized_residual: float
    scale: float
    umbilicity_defect: float
    min_mean_curvature: float
    corollary_lhs: float
    corollary_rhs: Optional[float]
    linkage_defect: Optional[float]
    passed: bool


@dataclass
class MinkowskiReport(CheckReport):
    k: int
    residual: float
    normalized_residual: float
    scale: float
    passed: bool


@dataclass
class Lemma52Report(CheckReport):
    value: float
    normalized_value: float
    scale: float
    h2: float
    h2_spread: float
    umbilicity_defect: float
    passed: bool


@dataclass
class GardingReport(CheckReport):
    value: float
    chain_gaps: list[float]
    umbilicity_defect: float
    passed: bool


@dataclass
class AlexandrovReport(CheckReport):
    scalar_curvature_spread: float
    scalar_curvature_mean: float
    umbilicity_defect: float
    height_range: float
    tag: str
    passed: bool


@dataclass
class LkIdentityReport(CheckReport):
    relative_error_l0: float
    relative_error_l1: float
    passed: bool


@dataclass
class SecondFormReport(CheckReport):
    points: int
    max_relative_deviation: float
    passed: bool


@dataclass
class ConvergenceRow:
    resolution: int
    nodes: int
    value: float
    error: float


@dataclass
class ConvergenceReport(CheckReport):
    target: str
    rows: list[ConvergenceRow]
    monotone: bool
    floor: float
    passed: bool


@dataclass
class SelftestReport:
    """Ambient and kernel invariants; not tied to a family."""

    check: str
    n: int
    samples: int
    seed: int
    curvature: dict[str, Any]
    potential: dict[str, Any]
    kernel: dict[str, Any]
    tolerances: dict[str, float]
    passed: bool
    family: str = "-"

    def to_dict(self) -> dict[str, Any]:
        return _plain(asdict(self))


Report = Union[CheckReport, SelftestReport]


# =============================================================================
# HELPERS
# =============================================================================

def _context(check: str, fam: SurfaceFamily, grid: SurfaceGrid, tol: Tolerances,
             name: Optional[str]) -> dict[str, Any]:
    return {
        "check": check,
        "family": name or fam.kind,
        "kind": fam.kind,
        "params": fam.params(),
        "resolution": grid.resolution,
        "tolerances": tol.model_dump(),
    }


def _scale(samples: Sequence[CurvatureData], grid: SurfaceGrid) -> float:
    return integrate_values([s.V for s in samples], samples, grid)


def _defect(samples: Sequence[CurvatureData]) -> float:
    return max(s.umbilicity_defect for s in samples)


def _require_positive_mean_curvature(fam: SurfaceFamily, samples: Sequence[CurvatureData]) -> float:
    H = np.array([s.mean_curvature for s in samples])
    node = int(np.argmin(H))
    if H[node] <= 0.0:
        raise HypothesisViolation(
            f"{fam.kind}: mean curvature {H[node]:.6g} <= 0 at node {node}",
            {"node": node, "param": list(samples[node].param), "H": float(H[node])},
        )
    return float(H[node])


# =============================================================================
# HEINTZE-KARCHER
# =============================================================================

def check_hk(fam: SurfaceFamily, amb: WarpedAmbient, grid: SurfaceGrid,
             tolerances: Tolerances = DEFAULT_TOLERANCES, name: Optional[str] = None,
             threads: int = 1, cache: Optional[SampleCache] = None) -> HKReport:
    """
    int V/H + int <grad V, N> >= 0, with equality exactly for umbilic surfaces,
    and the linkage (n+1) int_Omega V = -int <grad V, N>.

    Raises:
        HypothesisViolation: if H <= 0 at some node.
    """
    samples = sample_surface(fam, amb, grid, threads=threads, cache=cache)
    min_H = _require_positive_mean_curvature(fam, samples)
    I1 = integrate_values([s.V / s.mean_curvature for s in samples], samples, grid)
    I2 = integrate_values([s.VN for s in samples], samples, grid)
    scale = _scale(samples, grid)
    residual = I1 + I2
    defect = _defect(samples)

    try:
        volume = weighted_volume(fam, amb, resolution=grid.shape[0])
        corollary_rhs: Optional[float] = (amb.n + 1) * volume
        linkage: Optional[float] = abs(corollary_rhs + I2) / scale
    except UnsupportedFamilyError:
        corollary_rhs = linkage = None

    tol = tolerances.identity * scale
    equality = abs(residual) <= tol
    umbilic = defect <= tolerances.umbilic
    passed = residual >= -tol and equality == umbilic
    if linkage is not None:
        passed = passed and linkage <= tolerances.identity

    report = HKReport(
        **_context("hk", fam, grid, tolerances, name),
        I1=I1, I2=I2, residual=residual, normalized_residual=residual / scale, scale=scale,
        umbilicity_defect=defect, min_mean_curvature=min_H,
        corollary_lhs=I1, corollary_rhs=corollary_rhs, linkage_defect=linkage,
        passed=passed,
    )
    logger.debug(f"HK {report.family}: residual/scale={report.normalized_residual:.3e} defect={defect:.3e}")
    return report


# =============================================================================
# MINKOWSKI IDENTITIES
# =============================================================================

def check_minkowski(k: int, fam: SurfaceFamily, amb: WarpedAmbient, grid: SurfaceGrid,
                    tolerances: Tolerances = DEFAULT_TOLERANCES, name: Optional[str] = None,
                    allow_constant_curvature: bool = False, threads: int = 1,
                    cache: Optional[SampleCache] = None) -> MinkowskiReport:
    """
    int (V H_k + <grad V, N> H_{k+1}) = 0.

    k = 0 and k = 1 hold in every Einstein warped product; 2 <= k <= n-1 needs
    constant ambient curvature and is gated by allow_constant_curvature.
    """
    n = amb.n
    if not 0 <= k <= n - 1:
        raise ArgumentError(f"Minkowski order k={k} outside [0, {n - 1}]")
    if k >= 2 and not allow_constant_curvature:
        raise UnsupportedCheckError(
            f"Minkowski identity for k={k} needs allow_constant_curvature (divergence of T_k)"
        )
    samples = sample_surface(fam, amb, grid, threads=threads, cache=cache)
    residual = integrate_values(
        [s.V * s.profile.hk[k] + s.VN * s.profile.hk[k + 1] for s in samples], samples, grid
    )
    scale = _scale(samples, grid)
    normalized = residual / scale
    return MinkowskiReport(
        **_context(f"minkowski:{k}", fam, grid, tolerances, name),
        k=k, residual=residual, normalized_residual=normalized, scale=scale,
        passed=abs(normalized) <= tolerances.identity,
    )


# =============================================================================
# CONSTANT H_2 AND GARDING
# =============================================================================

def check_lemma52(fam: SurfaceFamily, amb: WarpedAmbient, grid: SurfaceGrid,
                  tolerances: Tolerances = DEFAULT_TOLERANCES, name: Optional[str] = None,
                  threads: int = 1, cache: Optional[SampleCache] = None) -> Lemma52Report:
    """
    For constant H_2 > 0: int (sqrt(H_2) - H) <grad V, N> <= 0, vanishing
    exactly for umbilic surfaces.

    Raises:
        HypothesisViolation: if H_2 is not constant on the grid or not positive.
    """
    samples = sample_surface(fam, amb, grid, threads=threads, cache=cache)
    h2 = np.array([s.profile.hk[2] for s in samples])
    spread = float(np.max(h2) - np.min(h2))
    if spread >= tolerances.constancy:
        raise HypothesisViolation(
            f"{fam.kind}: H_2 is not constant (spread {spread:.3e} >= {tolerances.constancy:g})",
            {"h2_spread": spread},
        )
    if np.min(h2) <= 0.0:
        raise HypothesisViolation(f"{fam.kind}: H_2 = {np.min(h2):.6g} is not positive",
                                  {"h2": float(np.min(h2))})
    value = integrate_values(
        [(math.sqrt(s.profile.hk[2]) - s.mean_curvature) * s.VN for s in samples], samples, grid
    )
    scale = _scale(samples, grid)
    defect = _defect(samples)
    tol = tolerances.identity * scale
    passed = value <= tol and (abs(value) <= tol) == (defect <= tolerances.umbilic)
    return Lemma52Report(
        **_context("lemma52", fam, grid, tolerances, name),
        value=value, normalized_value=value / scale, scale=scale,
        h2=float(np.mean(h2)), h2_spread=spread, umbilicity_defect=defect, passed=passed,
    )


def check_garding(fam: SurfaceFamily, amb: WarpedAmbient, grid: SurfaceGrid,
                  tolerances: Tolerances = DEFAULT_TOLERANCES, name: Optional[str] = None,
                  threads: int = 1, cache: Optional[SampleCache] = None) -> GardingReport:
    """
    H >= H_2^{1/2} >= ... >= H_r^{1/r} pointwise.

    value is min over nodes of H - sqrt(H_2); chain_gaps holds the minimum of
    every step H_r^{1/r} - H_{r+1}^{1/(r+1)} whose terms are positive on
    the whole grid.

    Raises:
        HypothesisViolation: unless some node is convex and H_2 > 0 everywhere.
    """
    samples = sample_surface(fam, amb, grid, threads=threads, cache=cache)
    hk = np.array([s.profile.hk for s in samples])
    if not any(min(s.principal) > 0.0 for s in samples):
        raise HypothesisViolation(f"{fam.kind}: no node has all principal curvatures positive")
    if np.min(hk[:, 2]) <= 0.0:
        node = int(np.argmin(hk[:, 2]))
        raise HypothesisViolation(
            f"{fam.kind}: H_2 = {hk[node, 2]:.6g} <= 0 at node {node}",
            {"node": node, "param": list(samples[node].param)},
        )

    n = amb.n
    gaps: list[float] = []
    for r in range(1, n):
        if np.min(hk[:, r]) <= 0.0 or np.min(hk[:, r + 1]) <= 0.0:
            break
        step = hk[:, r] ** (1.0 / r) - hk[:, r + 1] ** (1.0 / (r + 1))
        gaps.append(float(np.min(step)))
    return GardingReport(
        **_context("garding", fam, grid, tolerances, name),
        value=gaps[0], chain_gaps=gaps, umbilicity_defect=_defect(samples),
        passed=all(g >= -tolerances.garding for g in gaps),
    )


# =============================================================================
# CONSTANT SCALAR CURVATURE SCAN
# =============================================================================

def classify(spread: float, defect: float, height_range: float, tolerances: Tolerances) -> str:
    """slice | sphere | neither, read off the sampled data."""
    if spread < tolerances.spread and defect <= tolerances.umbilic:
        return TAG_SLICE if height_range <= tolerances.umbilic else TAG_SPHERE
    return TAG_NEITHER


def scan_family(fam: SurfaceFamily, amb: WarpedAmbient, grid: SurfaceGrid,
                tolerances: Tolerances = DEFAULT_TOLERANCES, name: Optional[str] = None,
                threads: int = 1, cache: Optional[SampleCache] = None) -> AlexandrovReport:
    """Scalar curvature spread, umbilicity and classification of one family."""
    samples = sample_surface(fam, amb, grid, threads=threads, cache=cache)
    S = np.array([scalar_curvature(s, amb.n) for s in samples])
    heights = np.array([s.height for s in samples])
    spread = float(np.max(S) - np.min(S))
    defect = _defect(samples)
    height_range = float(np.max(heights) - np.min(heights))
    tag = classify(spread, defect, height_range, tolerances)
    return AlexandrovReport(
        **_context("alexandrov", fam, grid, tolerances, name),
        scalar_curvature_spread=spread, scalar_curvature_mean=float(np.mean(S)),
        umbilicity_defect=defect, height_range=height_range, tag=tag,
        passed=not (spread < tolerances.spread and tag == TAG_NEITHER),
    )


def alexandrov_scan(families: Sequence[Union[SurfaceFamily, tuple[str, SurfaceFamily]]], amb: WarpedAmbient,
                    resolution: int = 64, tolerances: Tolerances = DEFAULT_TOLERANCES,
                    threads: int = 1, cache: Optional[SampleCache] = None) -> list[AlexandrovReport]:
    """
    Scan a family list: constant scalar curvature must come with a slice or a
    geodesic sphere.
    """
    reports = []
    for index, entry in enumerate(families):
        name, fam = entry if isinstance(entry, tuple) else (f"{entry.kind}-{index}", entry)
        grid = grid_for(fam, amb, resolution)
        reports.append(scan_family(fam, amb, grid, tolerances, name, threads, cache))
    return reports


# =============================================================================
# L_k(e^h) IDENTITIES
# =============================================================================

def check_l1_identity(fam: SurfaceFamily, amb: WarpedAmbient, grid: SurfaceGrid,
                      tolerances: Tolerances = DEFAULT_TOLERANCES, name: Optional[str] = None,
                      threads: int = 1, cache: Optional[SampleCache] = None) -> LkIdentityReport:
    """
    Grid-based L_0(e^h), L_1(e^h) against their closed forms.

    Errors are max |lhs - rhs| over max(|rhs|, e^h), so slices, where both
    sides vanish, are measured against e^h.
    """
    samples = sample_surface(fam, amb, grid, threads=threads, cache=cache)
    values = np.exp([s.height for s in samples])
    errors = []
    for k in (0, 1):
        lhs = lk_field(k, fam, amb, grid, values, samples)
        rhs = np.array([exp_height_rhs(k, s) for s in samples])
        denominator = max(float(np.max(np.abs(rhs))), float(np.max(values)))
        errors.append(float(np.max(np.abs(lhs - rhs))) / denominator)
    return LkIdentityReport(
        **_context("l1-identity", fam, grid, tolerances, name),
        relative_error_l0=errors[0], relative_error_l1=errors[1],
        passed=max(errors) <= tolerances.lk,
    )


# =============================================================================
# SELF-TESTS
# =============================================================================

def check_second_form(fam: SurfaceFamily, amb: WarpedAmbient, grid: SurfaceGrid,
                      tolerances: Tolerances = DEFAULT_TOLERANCES, name: Optional[str] = None,
                      points: int = 16, seed: int = 42, threads: int = 1,
                      cache: Optional[SampleCache] = None) -> SecondFormReport:
    """
    Compare h_ij = g(N, nabla_i d_j) with -g(nabla_i N, d_j) at randomly
    chosen grid nodes.
    """
    rng = np.random.default_rng(seed)
    picks = rng.choice(grid.size, size=min(points, grid.size), replace=False)
    worst = 0.0
    for node in sorted(int(i) for i in picks):
        q = grid.nodes[node]
        direct = curvature_data(fam, amb, q).g2.entries
        by_normal = second_form_by_normal(fam, amb, q).entries
        worst = max(worst, float(np.max(np.abs(direct - by_normal)) / max(np.max(np.abs(direct)), 1.0)))
    return SecondFormReport(
        **_context("second-form", fam, grid, tolerances, name),
        points=len(picks), max_relative_deviation=worst,
        passed=worst <= tolerances.identity,
    )


def ambient_selftest(amb: WarpedAmbient, samples: int = 1000, seed: int = 42,
                     tolerances: Tolerances = DEFAULT_TOLERANCES) -> SelftestReport:
    """Curvature -1, potential identities and the geometry-core kernel."""
    curvature = curvature_selftest(amb, sample_count=max(1, samples // 10), seed=seed,
                                   tolerance=tolerances.selftest)
    potential = potential_selftest(amb, sample_count=samples, seed=seed)
    kernel = kernel_selftest(samples=max(1, samples // 5), seed=seed)
    return SelftestReport(
        check="ambient-selftest", n=amb.n, samples=samples, seed=seed,
        curvature=asdict(curvature), potential=asdict(potential), kernel=asdict(kernel),
        tolerances=tolerances.model_dump(),
        passed=curvature.passed and potential.passed and kernel.passed,
    )


# =============================================================================
# CONVERGENCE
# =============================================================================

def _run_single(check_id: str, fam: SurfaceFamily, amb: WarpedAmbient, grid: SurfaceGrid,
                tolerances: Tolerances, threads: int, cache: Optional[SampleCache]) -> tuple[float, float, float]:
    """(value, scale, umbilicity defect) of one check at one resolution."""
    if check_id == "hk":
        r = check_hk(fam, amb, grid, tolerances, threads=threads, cache=cache)
        return r.residual, r.scale, r.umbilicity_defect
    if check_id.startswith("minkowski:"):
        m = check_minkowski(int(check_id.split(":", 1)[1]), fam, amb, grid, tolerances,
                            threads=threads, cache=cache)
        return m.residual, m.scale, 0.0
    if check_id == "lemma52":
        lem = check_lemma52(fam, amb, grid, tolerances, threads=threads, cache=cache)
        return lem.value, lem.scale, lem.umbilicity_defect
    if check_id == "l1-identity":
        li = check_l1_identity(fam, amb, grid, tolerances, threads=threads, cache=cache)
        return max(li.relative_error_l0, li.relative_error_l1), 1.0, 0.0
    raise UnsupportedCheckError(f"no convergence study for check '{check_id}'")


def is_monotone(errors: Sequence[float], floor: float) -> bool:
    """Each entry strictly below the previous one, or already at the floor."""
    return all(b < a or b <= floor for a, b in zip(errors, errors[1:]))


def convergence_study(check_id: str, fam: SurfaceFamily, amb: WarpedAmbient, resolutions: Sequence[int],
                      tolerances: Tolerances = DEFAULT_TOLERANCES, name: Optional[str] = None,
                      threads: int = 1, cache: Optional[SampleCache] = None) -> ConvergenceReport:
    """
    Run one check over increasing resolutions.

    Identities (Minkowski, L_k, and HK or lemma52 on umbilic families) must
    decrease toward zero; otherwise the differences to the next resolution
    must decrease.
    """
    resolutions = sorted(int(r) for r in resolutions)
    if len(resolutions) < 3:
        raise ArgumentError(f"convergence study needs at least 3 resolutions, got {resolutions}")
    if check_id not in CONVERGENCE_CHECKS and not check_id.startswith("minkowski:"):
        raise UnsupportedCheckError(f"no convergence study for check '{check_id}'")

    results = []
    for res in resolutions:
        grid = grid_for(fam, amb, res)
        results.append((grid, *_run_single(check_id, fam, amb, grid, tolerances, threads, cache)))

    finest_grid, finest_value, scale, defect = results[-1]
    identity = check_id not in ("hk", "lemma52") or defect <= tolerances.umbilic
    values = [r[1] for r in results]
    if identity:
        errors = [abs(v) for v in values]
    else:
        errors = [abs(a - b) for a, b in zip(values, values[1:])] + [0.0]
    floor = tolerances.floor * abs(scale)
    rows = [ConvergenceRow(g.resolution, g.size, v, e) for (g, v, _, _), e in zip(results, errors)]
    monotone = is_monotone(errors if identity else errors[:-1], floor)
    passed = monotone
    if identity:
        limit = tolerances.lk if check_id == "l1-identity" else tolerances.identity
        passed = passed and errors[-1] <= limit * abs(scale)

    return ConvergenceReport(
        **_context(f"convergence:{check_id}", fam, finest_grid, tolerances, name),
        target=check_id, rows=rows, monotone=monotone, floor=floor, passed=passed,
    )


# =============================================================================
# DISPATCH
# =============================================================================

@dataclass(frozen=True)
class CheckSpec:
    """A parsed check id: base name plus its argument, if any."""

    id: str
    name: str
    order: Optional[int] = None
    target: Optional[str] = None
    families: tuple[str, ...] = field(default_factory=tuple)

    @classmethod
    def parse(cls, check_id: str, families: Sequence[str] = ()) -> "CheckSpec":
        """
        Raises:
            ArgumentError: on an unknown check id.
        """
        base, _, arg = check_id.partition(":")
        if base in SIMPLE_CHECKS and not arg:
            return cls(check_id, base, families=tuple(families))
        if base == "minkowski" and arg.lstrip("-").isdigit():
            return cls(check_id, base, order=int(arg), families=tuple(families))
        if base == "convergence" and (arg in CONVERGENCE_CHECKS or arg.startswith("minkowski:")):
            return cls(check_id, base, target=arg, families=tuple(families))
        raise ArgumentError(f"unknown check id '{check_id}'")

    @property
    def per_family(self) -> bool:
        return self.name != "ambient-selftest"


def run_check(spec: CheckSpec, fam: SurfaceFamily, amb: WarpedAmbient, resolution: int,
              tolerances: Tolerances = DEFAULT_TOLERANCES, name: Optional[str] = None,
              allow_constant_curvature: bool = False, convergence_resolutions: Sequence[int] = (8, 16, 32, 64),
              threads: int = 1, cache: Optional[SampleCache] = None) -> CheckReport:
    """Run one per-family check by its parsed id."""
    if spec.name == "convergence":
        return convergence_study(spec.target, fam, amb, convergence_resolutions, tolerances, name, threads, cache)
    grid = grid_for(fam, amb, resolution)
    if spec.name == "hk":
        return check_hk(fam, amb, grid, tolerances, name, threads, cache)
    if spec.name == "minkowski":
        return check_minkowski(spec.order, fam, amb, grid, tolerances, name,
                               allow_constant_curvature, threads, cache)
    if spec.name == "lemma52":
        return check_lemma52(fam, amb, grid, tolerances, name, threads, cache)
    if spec.name == "garding":
        return check_garding(fam, amb, grid, tolerances, name, threads, cache)
    if spec.name == "l1-identity":
        return check_l1_identity(fam, amb, grid, tolerances, name, threads, cache)
    if spec.name == "second-form":
        return check_second_form(fam, amb, grid, tolerances, name, threads=threads, cache=cache)
    if spec.name == "alexandrov":
        return scan_family(fam, amb, grid, tolerances, name, threads, cache)
    raise UnsupportedCheckError(f"check '{spec.id}' is not a per-family check")
