"""Hypersurface patches swept from a curve by a marching-scale bundle.

A patch evaluates R(s, u, v) = r(s) + a*t + b*n + c*b + d*e with the
coefficient quadruple coming from the bundle, computes the surface partials
in frame coordinates, the isotropic normal field, and validates end to end
that the embedded parameter curve is an isogeodesic: the coefficients
vanish along the anchor, the normal's frame components degenerate to the
n-axis, and the normalized normal is geometrically parallel to the
principal normal.

The frame components of the normal along the anchor are computed twice on
purpose: once symbolically from the cross partials of the coefficient
fields, once geometrically from the actual cross product.  The redundancy
validates the derivation itself, not just a particular bundle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .curve import CurveSpec, FrenetFrame, frenet_frame
from .exprcalc import Expr, diff, evaluate
from .gvec import GalileanVec4, gcross, gnorm
from .marching import (Clause, MarchingScale, eval_coeffs, has_sign_change,
                       to_generic)

TOL_EXACT = 1e-9
TOL_PARALLEL = 1e-8
DEFAULT_SAMPLES = 64


@dataclass
class HypersurfacePatch:
    """Curve + bundle + parameter box [u_min,u_max] x [v_min,v_max] with the
    anchor (u0, v0) at which the surface interpolates the curve."""

    curve: CurveSpec
    scale: MarchingScale
    u_min: float
    u_max: float
    v_min: float
    v_max: float
    u0: float
    v0: float

    _coeffs: tuple[Expr, ...] = field(init=False, repr=False)
    _partials: dict = field(init=False, repr=False)

    def __post_init__(self):
        if not (self.u_min < self.u_max and self.v_min < self.v_max):
            raise ValueError("degenerate parameter box")
        if not (self.u_min <= self.u0 <= self.u_max
                and self.v_min <= self.v0 <= self.v_max):
            raise ValueError("anchor outside the parameter box")
        self._coeffs = to_generic(self.scale)
        self._partials = {
            name: tuple(diff(c, name) for c in self._coeffs)
            for name in ("s", "u", "v")
        }

    def frame(self, s: float) -> FrenetFrame:
        return frenet_frame(self.curve, s)


def surface_point(patch: HypersurfacePatch, s: float, u: float, v: float,
                  frame: FrenetFrame | None = None) -> GalileanVec4:
    """R(s, u, v) as an ambient point."""
    frame = frame if frame is not None else patch.frame(s)
    a, b, c, d = eval_coeffs(patch.scale, s, u, v)
    return (patch.curve.point(s)
            + a * frame.t + b * frame.n + c * frame.b + d * frame.e)


def partials_frame(patch: HypersurfacePatch, s: float, u: float, v: float,
                   frame: FrenetFrame | None = None
                   ) -> tuple[tuple[float, ...], tuple[float, ...], tuple[float, ...]]:
    """Frame-basis coefficients of the partials with respect to s, u, v.

    The s-partial folds in the frame derivative identities, so the
    coefficient values themselves enter weighted by the curvatures; the u-
    and v-partials are plain coefficient partials.  All differentiation is
    symbolic.
    """
    frame = frame if frame is not None else patch.frame(s)
    a, b, c, d = eval_coeffs(patch.scale, s, u, v)
    a_s, b_s, c_s, d_s = (evaluate(p, s, u, v) for p in patch._partials["s"])
    along_s = (1.0 + a_s,
               a * frame.kappa + b_s - c * frame.tau,
               b * frame.tau + c_s - d * frame.sigma,
               c * frame.sigma + d_s)
    along_u = tuple(evaluate(p, s, u, v) for p in patch._partials["u"])
    along_v = tuple(evaluate(p, s, u, v) for p in patch._partials["v"])
    return along_s, along_u, along_v


def _ambient(frame: FrenetFrame, coeffs: tuple[float, ...]) -> GalileanVec4:
    a, b, c, d = coeffs
    return a * frame.t + b * frame.n + c * frame.b + d * frame.e


def isotropic_normal(patch: HypersurfacePatch, s: float, u: float, v: float,
                     frame: FrenetFrame | None = None) -> GalileanVec4:
    """Cross product of the three surface partials; always isotropic."""
    frame = frame if frame is not None else patch.frame(s)
    along_s, along_u, along_v = partials_frame(patch, s, u, v, frame)
    return gcross(_ambient(frame, along_s),
                  _ambient(frame, along_u),
                  _ambient(frame, along_v))


def anchor_normal_frame(patch: HypersurfacePatch, s: float
                        ) -> tuple[float, float, float, float]:
    """Frame components of the normal along the anchor line, symbolically.

    For bundles vanishing along the anchor the normal reduces to cross
    partials of the coefficient fields: with the 2x2 minors m_xy of the
    (u, v)-Jacobian of the coefficient pair (x, y), the normal decomposes
    as 0*t - m_be*n + m_ne*b - m_nb*e.
    """
    _, b_u, c_u, d_u = (evaluate(p, s, patch.u0, patch.v0)
                        for p in patch._partials["u"])
    _, b_v, c_v, d_v = (evaluate(p, s, patch.u0, patch.v0)
                        for p in patch._partials["v"])
    m_be = c_u * d_v - c_v * d_u
    m_ne = b_u * d_v - b_v * d_u
    m_nb = b_u * c_v - b_v * c_u
    return (0.0, -m_be, m_ne, -m_nb)


@dataclass(frozen=True)
class ValidationRow:
    """Measurements at one grid sample.

    normal holds the frame components of the geometrically computed
    normal; parallel_residual is the distance between the normalized
    normal and the nearer of +-n.
    """

    s: float
    anchor_max: float
    normal: tuple[float, float, float, float]
    parallel_residual: float


@dataclass(frozen=True)
class ValidationReport:
    """Aggregated isogeodesic validation over an s grid."""

    passed: bool
    anchor_max: float
    normal_t_max: float
    normal_n_min: float
    normal_b_max: float
    normal_e_max: float
    parallel_max: float
    tol_exact: float
    tol_parallel: float
    clauses: tuple[Clause, ...]
    rows: tuple[ValidationRow, ...]

    def clause(self, name: str) -> Clause:
        for c in self.clauses:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def failures(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.clauses if not c.passed)


def validate_isogeodesic(patch: HypersurfacePatch,
                         s_samples: int = DEFAULT_SAMPLES,
                         tol_exact: float = TOL_EXACT,
                         tol_parallel: float = TOL_PARALLEL) -> ValidationReport:
    """Validate the isogeodesic conditions on an even s grid.

    Checks, per sample: the coefficients vanish at the anchor; the frame
    components of the normal vanish along t, b, e and stay away from zero
    (without sign changes) along n; and the normalized normal is parallel
    to the principal normal.  Frame degeneracy anywhere on the grid
    propagates as the underlying error, which names the failing s.
    """
    if s_samples < 2:
        raise ValueError("need at least two samples")
    curve = patch.curve
    step = (curve.s_max - curve.s_min) / (s_samples - 1)
    rows = []
    for i in range(s_samples):
        s = curve.s_min + step * i
        frame = patch.frame(s)
        coeffs = eval_coeffs(patch.scale, s, patch.u0, patch.v0)
        normal = isotropic_normal(patch, s, patch.u0, patch.v0, frame)
        parts = frame.components_of(normal)
        length = gnorm(normal)
        if length == 0.0:
            residual = math.inf
        else:
            unit = normal * (1.0 / length)
            residual = min(gnorm(unit - frame.n), gnorm(unit + frame.n))
        rows.append(ValidationRow(
            s=s,
            anchor_max=max(abs(x) for x in coeffs),
            normal=parts,
            parallel_residual=residual,
        ))

    anchor_max = max(r.anchor_max for r in rows)
    normal_t_max = max(abs(r.normal[0]) for r in rows)
    normal_n = [r.normal[1] for r in rows]
    normal_n_min = min(abs(x) for x in normal_n)
    normal_b_max = max(abs(r.normal[2]) for r in rows)
    normal_e_max = max(abs(r.normal[3]) for r in rows)
    parallel_max = max(r.parallel_residual for r in rows)
    sign_stable = not has_sign_change(normal_n)

    clauses = (
        Clause("anchor_vanishing", anchor_max <= tol_exact, anchor_max),
        Clause("normal_t_zero", normal_t_max <= tol_exact, normal_t_max),
        Clause("normal_b_zero", normal_b_max <= tol_exact, normal_b_max),
        Clause("normal_e_zero", normal_e_max <= tol_exact, normal_e_max),
        Clause("normal_n_nonzero", normal_n_min > tol_exact, normal_n_min),
        Clause("normal_n_sign_stable", sign_stable, 0.0 if sign_stable else 1.0),
        Clause("normal_parallel", parallel_max <= tol_parallel, parallel_max),
    )
    return ValidationReport(
        passed=all(c.passed for c in clauses),
        anchor_max=anchor_max,
        normal_t_max=normal_t_max,
        normal_n_min=normal_n_min,
        normal_b_max=normal_b_max,
        normal_e_max=normal_e_max,
        parallel_max=parallel_max,
        tol_exact=tol_exact,
        tol_parallel=tol_parallel,
        clauses=clauses,
        rows=tuple(rows),
    )
