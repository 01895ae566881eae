"""
Run Configuration Module

Schema of a verification run file (JSON or TOML): the ambient, the
surface families, the checks to run and the numeric knobs. Parsing fills
defaults and reports problems with the dotted path of the offending key.

Usage:
    cfg = parse_config(Path("configs/demo.toml").read_text())
    plan = cfg.plan()
"""

import json
import logging
import math
import tomllib
from pathlib import Path
from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from warpcurv.ambient import EuclideanFiber, FlatTorus, WarpedAmbient
from warpcurv.errors import ArgumentError, ConfigError, WarpcurvError
from warpcurv.families import FAMILY_CLASSES, FourierMode, GeodesicSphere, Slice, SurfaceFamily, TorusGraph
from warpcurv.verifier import CheckSpec, Tolerances

logger = logging.getLogger(__name__)

DEFAULT_PERIOD = 2.0 * math.pi


class _PlanError(ValueError):
    """Cross-field validation failure that knows which keys are involved."""

    def __init__(self, message: str, paths: list[str]):
        super().__init__(message)
        self.paths = paths


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", allow_inf_nan=False)


# =============================================================================
# AMBIENT
# =============================================================================

class AmbientSpec(_Strict):
    """R x_exp P over a flat torus or Euclidean fiber."""

    n: int = Field(default=2, ge=2, le=7)
    fiber: Literal["torus", "euclidean"] = "torus"
    periods: Optional[list[float]] = None
    potential_scale: float = Field(default=1.0, gt=0.0)

    @model_validator(mode="after")
    def _fill_periods(self) -> "AmbientSpec":
        if self.fiber == "euclidean":
            if self.periods is not None:
                raise _PlanError("ambient.periods: a euclidean fiber has no periods", ["ambient.periods"])
            return self
        if self.periods is None:
            self.periods = [DEFAULT_PERIOD] * self.n
        if len(self.periods) != self.n or any(L <= 0.0 for L in self.periods):
            raise _PlanError(
                f"ambient.periods: need {self.n} positive periods, got {self.periods}", ["ambient.periods"]
            )
        return self

    def build(self) -> WarpedAmbient:
        fiber = FlatTorus(tuple(self.periods)) if self.fiber == "torus" else EuclideanFiber()
        return WarpedAmbient(self.n, fiber, self.potential_scale)


# =============================================================================
# FAMILIES
# =============================================================================

class SliceSpec(_Strict):
    kind: Literal["slice"]
    name: Optional[str] = None
    s: float = 0.0

    def build(self, n: int) -> SurfaceFamily:
        return Slice(self.s)


class ModeSpec(_Strict):
    wave: list[int]
    cos: float = 0.0
    sin: float = 0.0


class TorusGraphSpec(_Strict):
    kind: Literal["torus_graph"]
    name: Optional[str] = None
    base: float = 0.0
    modes: list[ModeSpec] = Field(default_factory=list)

    def build(self, n: int) -> SurfaceFamily:
        return TorusGraph(self.base, tuple(FourierMode(tuple(m.wave), m.cos, m.sin) for m in self.modes))


class GeodesicSphereSpec(_Strict):
    kind: Literal["geodesic_sphere"]
    name: Optional[str] = None
    rho: float = Field(gt=0.0)
    z0: float = Field(default=1.0, gt=0.0)
    x0: Optional[list[float]] = None

    def build(self, n: int) -> SurfaceFamily:
        return GeodesicSphere(rho=self.rho, z0=self.z0, x0=tuple(self.x0 or ()))


FamilySpec = Annotated[Union[SliceSpec, TorusGraphSpec, GeodesicSphereSpec], Field(discriminator="kind")]


# =============================================================================
# CHECKS AND OUTPUT
# =============================================================================

class CheckEntry(_Strict):
    """A check id, optionally restricted to named families."""

    id: str
    families: Optional[list[str]] = None


class OutputSpec(_Strict):
    path: Optional[str] = None
    format: Literal["json", "csv"] = "json"


# =============================================================================
# RUN CONFIG
# =============================================================================

class RunConfig(_Strict):
    """A validated run file with every default filled in."""

    ambient: AmbientSpec = Field(default_factory=AmbientSpec)
    families: list[FamilySpec] = Field(default_factory=list)
    checks: list[CheckEntry] = Field(min_length=1)
    resolution: int = Field(default=64, ge=8)
    convergence_resolutions: list[int] = Field(default_factory=lambda: [8, 16, 32, 64], min_length=3)
    tolerances: Tolerances = Field(default_factory=Tolerances)
    output: OutputSpec = Field(default_factory=OutputSpec)
    seed: int = 42
    selftest_samples: int = Field(default=1000, ge=1)
    allow_constant_curvature: bool = False

    @field_validator("checks", mode="before")
    @classmethod
    def _normalize_checks(cls, value):
        if isinstance(value, list):
            return [{"id": entry} if isinstance(entry, str) else entry for entry in value]
        return value

    @field_validator("convergence_resolutions")
    @classmethod
    def _check_ladder(cls, value: list[int]) -> list[int]:
        if any(r < 8 for r in value):
            raise ValueError(f"every convergence resolution must be >= 8, got {value}")
        return sorted(value)

    @model_validator(mode="after")
    def _cross_check(self) -> "RunConfig":
        n = self.ambient.n
        try:
            self.ambient.build()
        except WarpcurvError as e:
            raise _PlanError(f"ambient: {e.message}", ["ambient"]) from e
        names: list[str] = []
        for i, fam in enumerate(self.families):
            if fam.name is None:
                fam.name = f"{fam.kind}-{i}"
            if fam.name in names:
                raise _PlanError(f"families.{i}.name: duplicate family name '{fam.name}'", [f"families.{i}.name"])
            names.append(fam.name)

            required = FAMILY_CLASSES[fam.kind].requires_fiber
            if required != self.ambient.fiber:
                raise _PlanError(
                    f"families.{i}.kind: {fam.kind} requires a {required} fiber, "
                    f"but ambient.fiber is {self.ambient.fiber}",
                    [f"families.{i}.kind", "ambient.fiber"],
                )
            if isinstance(fam, TorusGraphSpec):
                for j, mode in enumerate(fam.modes):
                    if len(mode.wave) != n:
                        raise _PlanError(
                            f"families.{i}.modes.{j}.wave: expected {n} entries, got {len(mode.wave)}",
                            [f"families.{i}.modes.{j}.wave"],
                        )
            if isinstance(fam, GeodesicSphereSpec) and fam.x0 is not None and len(fam.x0) != n:
                raise _PlanError(f"families.{i}.x0: expected {n} coordinates, got {len(fam.x0)}",
                                 [f"families.{i}.x0"])
            try:
                fam.build(n)
            except WarpcurvError as e:
                raise _PlanError(f"families.{i}: {e.message}", [f"families.{i}"]) from e

        for i, entry in enumerate(self.checks):
            try:
                spec = CheckSpec.parse(entry.id)
            except ArgumentError as e:
                raise _PlanError(f"checks.{i}.id: {e.message}", [f"checks.{i}.id"]) from e
            for name in entry.families or []:
                if name not in names:
                    raise _PlanError(f"checks.{i}.families: unknown family '{name}'", [f"checks.{i}.families"])
            if spec.per_family and not self.families:
                raise _PlanError(f"checks.{i}.id: '{entry.id}' needs at least one family",
                                 [f"checks.{i}.id", "families"])
        return self

    # -------------------------------------------------------------------------
    # Plan
    # -------------------------------------------------------------------------

    def build_ambient(self) -> WarpedAmbient:
        return self.ambient.build()

    def build_families(self) -> list[tuple[str, SurfaceFamily]]:
        return [(fam.name, fam.build(self.ambient.n)) for fam in self.families]

    def check_specs(self) -> list[CheckSpec]:
        return [CheckSpec.parse(entry.id, entry.families or ()) for entry in self.checks]

    def plan(self) -> list[tuple[CheckSpec, Optional[str]]]:
        """
        Jobs in declaration order: (check, family name) pairs, with None for
        checks that run once per config.
        """
        names = [fam.name for fam in self.families]
        jobs: list[tuple[CheckSpec, Optional[str]]] = []
        for spec in self.check_specs():
            if spec.name == "ambient-selftest":
                jobs.append((spec, None))
                continue
            for name in names:
                if not spec.families or name in spec.families:
                    jobs.append((spec, name))
        return jobs


# =============================================================================
# PARSING
# =============================================================================

def _error_paths(err: ValidationError) -> tuple[str, list[str]]:
    messages: list[str] = []
    paths: list[str] = []
    for item in err.errors():
        cause = (item.get("ctx") or {}).get("error")
        if isinstance(cause, _PlanError):
            paths.extend(cause.paths)
            messages.append(str(cause))
            continue
        path = ".".join(str(part) for part in item["loc"])
        paths.append(path)
        messages.append(f"{path}: {item['msg']}")
    return "; ".join(messages), paths


def parse_config(text: str) -> RunConfig:
    """
    Parse a run file. Text starting with '{' is JSON, anything else TOML.

    Raises:
        ConfigError: on malformed text, unknown keys, type mismatches or
            incompatible families, naming the offending key paths.
    """
    stripped = text.lstrip()
    try:
        data = json.loads(stripped) if stripped.startswith("{") else tomllib.loads(text)
    except (json.JSONDecodeError, tomllib.TOMLDecodeError) as e:
        raise ConfigError(f"malformed config text: {e}") from e
    try:
        return RunConfig.model_validate(data)
    except ValidationError as e:
        message, paths = _error_paths(e)
        raise ConfigError(message, paths) from e


def load_config(path: Union[str, Path]) -> RunConfig:
    """Read and parse a run file; I/O failures become ConfigError."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}", ["--config"]) from e
    cfg = parse_config(text)
    logger.info(f"📄 Loaded {path}: {len(cfg.families)} families, {len(cfg.checks)} checks")
    return cfg


def serialize_config(cfg: RunConfig) -> str:
    """Canonical JSON; parse_config(serialize_config(cfg)) == cfg."""
    return json.dumps(cfg.model_dump(mode="json"), indent=2, sort_keys=True)


def config_schema() -> dict:
    """JSON Schema of the run file."""
    return RunConfig.model_json_schema()
