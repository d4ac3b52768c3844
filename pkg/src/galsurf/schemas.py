"""Scene configuration schema and builders for the core objects.

A scene is the JSON unit of work accepted by the service and the CLI: a
curve, a marching-scale bundle, the anchor and parameter box, plus optional
grid, projection and tolerance sections.  Scalar fields accept either a
number or a constant expression string such as "2*pi".
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Annotated, Literal, Optional

from pydantic import (BaseModel, BeforeValidator, Field, ValidationError,
                      model_validator)

from . import exprcalc
from .curve import CurveSpec
from .hypersurface import (TOL_EXACT, TOL_PARALLEL, DEFAULT_SAMPLES,
                           HypersurfacePatch)
from .marching import FactoredScale, GenericScale, MarchingScale
from .projection import Projection


class ConfigError(ValueError):
    """A scene is malformed or internally inconsistent."""


def parse_expression(src: str) -> exprcalc.Expr:
    try:
        return exprcalc.parse(src)
    except exprcalc.ParseError as exc:
        raise ConfigError(f"bad expression {src!r}: {exc}") from None


def _scalar(value):
    """Accept a number or a constant expression string."""
    if isinstance(value, str):
        try:
            return exprcalc.evaluate_constant(value)
        except (exprcalc.ExprError, ValueError) as exc:
            raise ValueError(f"bad scalar {value!r}: {exc}") from None
    return value


Scalar = Annotated[float, BeforeValidator(_scalar)]


class AxisExprs(BaseModel):
    """One expression string per frame axis."""

    t: str = "0"
    n: str = "0"
    b: str = "0"
    e: str = "0"

    def as_tuple(self) -> tuple[str, str, str, str]:
        return (self.t, self.n, self.b, self.e)

    def exprs(self) -> tuple[exprcalc.Expr, ...]:
        return tuple(parse_expression(src) for src in self.as_tuple())


class CurveSection(BaseModel):
    y: str
    z: str
    w: str
    s_range: tuple[Scalar, Scalar]


class MarchingSection(BaseModel):
    variant: Literal["generic", "typeA", "typeB", "typeC"]
    coeffs: Optional[AxisExprs] = None
    arc: Optional[AxisExprs] = None
    profile: Optional[AxisExprs] = None

    @model_validator(mode="after")
    def _sections_match_variant(self):
        if self.variant == "generic":
            if self.coeffs is None:
                raise ValueError("generic marching needs a coeffs section")
        elif self.arc is None or self.profile is None:
            raise ValueError(f"{self.variant} marching needs arc and profile sections")
        return self


class AnchorSection(BaseModel):
    u0: Scalar
    v0: Scalar


class DomainSection(BaseModel):
    u_range: tuple[Scalar, Scalar]
    v_range: tuple[Scalar, Scalar]


class GridSection(BaseModel):
    n_s: int = Field(default=DEFAULT_SAMPLES, ge=2)
    n_u: int = Field(default=16, ge=2)
    n_v: int = Field(default=16, ge=2)


class ProjectionSection(BaseModel):
    drop_axis: Literal["x", "y", "z", "w"]
    fixed_param: Literal["u", "v"]
    fixed_value: Scalar


class ToleranceSection(BaseModel):
    exact: float = TOL_EXACT
    parallel: float = TOL_PARALLEL


class SceneConfig(BaseModel):
    curve: CurveSection
    marching: MarchingSection
    anchor: AnchorSection
    domain: DomainSection
    grid: GridSection = GridSection()
    projection: Optional[ProjectionSection] = None
    tolerances: ToleranceSection = ToleranceSection()


def build_curve(scene: SceneConfig) -> CurveSpec:
    c = scene.curve
    try:
        return CurveSpec(parse_expression(c.y), parse_expression(c.z),
                         parse_expression(c.w), c.s_range[0], c.s_range[1])
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def build_scale(scene: SceneConfig) -> MarchingScale:
    m = scene.marching
    try:
        if m.variant == "generic":
            return GenericScale(coeffs=m.coeffs.exprs())
        return FactoredScale(variant=m.variant, arc=m.arc.exprs(),
                             profile=m.profile.exprs())
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def build_patch(scene: SceneConfig) -> HypersurfacePatch:
    curve = build_curve(scene)
    scale = build_scale(scene)
    d, a = scene.domain, scene.anchor
    try:
        return HypersurfacePatch(curve=curve, scale=scale,
                                 u_min=d.u_range[0], u_max=d.u_range[1],
                                 v_min=d.v_range[0], v_max=d.v_range[1],
                                 u0=a.u0, v0=a.v0)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def build_projection(scene: SceneConfig) -> Projection:
    if scene.projection is None:
        raise ConfigError("scene has no projection section")
    p = scene.projection
    try:
        return Projection(drop_axis=p.drop_axis, fixed_param=p.fixed_param,
                          fixed_value=p.fixed_value)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def s_grid(scene: SceneConfig) -> list[float]:
    lo, hi = scene.curve.s_range
    n = scene.grid.n_s
    step = (hi - lo) / (n - 1)
    return [lo + step * i for i in range(n)]


def load_scene(path: str | Path) -> SceneConfig:
    """Read and validate a scene file; all failures become ConfigError."""
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read scene file {path}: {exc}") from None
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"scene file {path} is not valid JSON: {exc}") from None
    return scene_from_dict(data)


def scene_from_dict(data: dict) -> SceneConfig:
    try:
        return SceneConfig.model_validate(data)
    except (ValidationError, ValueError) as exc:
        raise ConfigError(f"invalid scene: {exc}") from None
