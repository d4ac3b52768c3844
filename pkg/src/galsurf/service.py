"""HTTP service exposing the geometry pipeline.

Stateless compute endpoints: a scene travels in the request body, frames
and validation reports come back as JSON, meshes as text bodies with the
lattice counts in response headers.  Domain failures map to HTTP 400 with
a machine-readable kind so thin clients can translate them into exit
codes: "config" for malformed or inconsistent scenes, "degenerate-frame"
when the curve's moving frame does not exist somewhere.
"""

from __future__ import annotations

import io
import math
from typing import Literal, Optional

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel

from . import __version__
from .curve import DegenerateCurveError, frenet_frame
from .exprcalc import EvalDomainError
from .gvec import det4
from .hypersurface import (ValidationReport, surface_point,
                           validate_isogeodesic)
from .marching import ConditionReport, GenericScale, check_conditions
from .projection import export_csv, export_obj, sample
from .schemas import (ConfigError, SceneConfig, build_curve, build_patch,
                      build_projection, s_grid)

app = FastAPI(title="galsurf", version=__version__)


def _finite(x: float) -> float:
    """Clamp non-finite floats so responses stay strict JSON."""
    if math.isfinite(x):
        return x
    return math.copysign(1e308, x)


class FrenetRequest(BaseModel):
    scene: SceneConfig
    s_values: Optional[list[float]] = None


class FrameOut(BaseModel):
    s: float
    t: list[float]
    n: list[float]
    b: list[float]
    e: list[float]
    kappa: float
    tau: float
    sigma: float
    mu: int
    det: float


class FrenetResponse(BaseModel):
    frames: list[FrameOut]


class ValidateRequest(BaseModel):
    scene: SceneConfig


class ClauseOut(BaseModel):
    name: str
    passed: bool
    residual: float
    detail: str = ""


class CheckerOut(BaseModel):
    variant: str
    passed: bool
    witness: float
    clauses: list[ClauseOut]


class RowOut(BaseModel):
    s: float
    anchor_max: float
    normal: list[float]
    parallel_residual: float


class ReportOut(BaseModel):
    passed: bool
    anchor_max: float
    normal_t_max: float
    normal_n_min: float
    normal_b_max: float
    normal_e_max: float
    parallel_max: float
    tol_exact: float
    tol_parallel: float
    clauses: list[ClauseOut]
    rows: list[RowOut]


class ValidateResponse(BaseModel):
    passed: bool
    report: ReportOut
    checker: Optional[CheckerOut] = None


class ProjectRequest(BaseModel):
    scene: SceneConfig
    format: Literal["obj", "csv"] = "obj"


class SampleRequest(BaseModel):
    scene: SceneConfig


@app.exception_handler(ConfigError)
async def _config_error(request: Request, exc: ConfigError):
    return JSONResponse(status_code=400,
                        content={"detail": {"kind": "config", "message": str(exc)}})


@app.exception_handler(EvalDomainError)
async def _domain_error(request: Request, exc: EvalDomainError):
    return JSONResponse(status_code=400,
                        content={"detail": {"kind": "config", "message": str(exc)}})


@app.exception_handler(DegenerateCurveError)
async def _degenerate_error(request: Request, exc: DegenerateCurveError):
    return JSONResponse(status_code=400,
                        content={"detail": {"kind": "degenerate-frame",
                                            "message": str(exc)}})


@app.get("/")
def info():
    return {"name": "galsurf", "version": __version__,
            "endpoints": ["/frenet", "/validate", "/project", "/sample"]}


@app.post("/frenet", response_model=FrenetResponse)
def frenet_endpoint(req: FrenetRequest) -> FrenetResponse:
    curve = build_curve(req.scene)
    if req.s_values is None:
        step = (curve.s_max - curve.s_min) / 4
        s_values = [curve.s_min + step * i for i in range(5)]
    else:
        s_values = req.s_values
        for s in s_values:
            if not curve.s_min <= s <= curve.s_max:
                raise ConfigError(
                    f"s={s!r} outside the curve interval "
                    f"[{curve.s_min!r}, {curve.s_max!r}]")
    frames = []
    for s in s_values:
        f = frenet_frame(curve, s)
        frames.append(FrameOut(
            s=s,
            t=list(f.t.components()), n=list(f.n.components()),
            b=list(f.b.components()), e=list(f.e.components()),
            kappa=f.kappa, tau=f.tau, sigma=f.sigma, mu=f.mu,
            det=det4(f.t, f.n, f.b, f.e)))
    return FrenetResponse(frames=frames)


def _clause_out(clause) -> ClauseOut:
    return ClauseOut(name=clause.name, passed=clause.passed,
                     residual=_finite(clause.residual), detail=clause.detail)


def _report_out(report: ValidationReport) -> ReportOut:
    return ReportOut(
        passed=report.passed,
        anchor_max=_finite(report.anchor_max),
        normal_t_max=_finite(report.normal_t_max),
        normal_n_min=_finite(report.normal_n_min),
        normal_b_max=_finite(report.normal_b_max),
        normal_e_max=_finite(report.normal_e_max),
        parallel_max=_finite(report.parallel_max),
        tol_exact=report.tol_exact,
        tol_parallel=report.tol_parallel,
        clauses=[_clause_out(c) for c in report.clauses],
        rows=[RowOut(s=r.s, anchor_max=_finite(r.anchor_max),
                     normal=[_finite(x) for x in r.normal],
                     parallel_residual=_finite(r.parallel_residual))
              for r in report.rows])


def _checker_out(checker: ConditionReport) -> CheckerOut:
    return CheckerOut(variant=checker.variant, passed=checker.passed,
                      witness=_finite(checker.witness),
                      clauses=[_clause_out(c) for c in checker.clauses])


@app.post("/validate", response_model=ValidateResponse)
def validate_endpoint(req: ValidateRequest) -> ValidateResponse:
    scene = req.scene
    patch = build_patch(scene)
    report = validate_isogeodesic(patch, s_samples=scene.grid.n_s,
                                  tol_exact=scene.tolerances.exact,
                                  tol_parallel=scene.tolerances.parallel)
    checker = None
    if not isinstance(patch.scale, GenericScale):
        checker = check_conditions(patch.scale, patch.u0, patch.v0,
                                   s_grid(scene), scene.tolerances.exact)
    passed = report.passed and (checker is None or checker.passed)
    return ValidateResponse(passed=passed, report=_report_out(report),
                            checker=None if checker is None else _checker_out(checker))


@app.post("/project", response_class=PlainTextResponse)
def project_endpoint(req: ProjectRequest) -> PlainTextResponse:
    scene = req.scene
    patch = build_patch(scene)
    proj = build_projection(scene)
    n_free = scene.grid.n_v if proj.fixed_param == "u" else scene.grid.n_u
    try:
        grid = sample(patch, proj, scene.grid.n_s, n_free)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    buf = io.StringIO()
    if req.format == "obj":
        export_obj(grid, buf)
    else:
        export_csv(grid, buf)
    return PlainTextResponse(buf.getvalue(), headers={
        "x-vertex-count": str(grid.vertex_count),
        "x-face-count": str(grid.face_count),
    })


@app.post("/sample", response_class=PlainTextResponse)
def sample_endpoint(req: SampleRequest) -> PlainTextResponse:
    scene = req.scene
    patch = build_patch(scene)
    g = scene.grid

    def axis(lo: float, hi: float, n: int) -> list[float]:
        step = (hi - lo) / (n - 1)
        return [lo + step * i for i in range(n)]

    s_values = axis(patch.curve.s_min, patch.curve.s_max, g.n_s)
    u_values = axis(patch.u_min, patch.u_max, g.n_u)
    v_values = axis(patch.v_min, patch.v_max, g.n_v)
    buf = io.StringIO()
    buf.write("s,u,v,x,y,z,w\n")
    for s in s_values:
        frame = patch.frame(s)
        for u in u_values:
            for v in v_values:
                p = surface_point(patch, s, u, v, frame)
                buf.write(f"{s!r},{u!r},{v!r},{p.c1!r},{p.c2!r},{p.c3!r},{p.c4!r}\n")
    return PlainTextResponse(buf.getvalue(), headers={
        "x-vertex-count": str(len(s_values) * len(u_values) * len(v_values)),
    })
