"""Marching-scale coefficient bundles and their admissibility checks.

A bundle supplies the four scalar fields that sweep a hypersurface away
from a curve along the frame legs t, n, b, e.  Besides the generic form
(four functions of s, u, v) three separable factorizations are supported,
each splitting every coefficient into an arc-side factor times a
profile-side factor:

    typeA: arc(s)     * profile(u, v)
    typeB: arc(s, u)  * profile(v)
    typeC: arc(s, v)  * profile(u)

For each factorization there is a checker that decides, per clause, whether
the embedded parameter curve is a geodesic of the swept hypersurface.  The
clauses are evaluated with symbolic partials at the anchor; quantities that
depend on s are sampled on a shared grid, since proving nonvanishing over
an interval symbolically is out of scope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .exprcalc import (EvalDomainError, Expr, diff, evaluate, mul, variables)

AXES = ("t", "n", "b", "e")

DEFAULT_GRID_SIZE = 64
DEFAULT_TOL = 1e-9

_ARC_VARS = {"typeA": {"s"}, "typeB": {"s", "u"}, "typeC": {"s", "v"}}
_PROFILE_VARS = {"typeA": {"u", "v"}, "typeB": {"v"}, "typeC": {"u"}}


@dataclass(frozen=True)
class GenericScale:
    """Four coefficient fields in (s, u, v), axis order t, n, b, e."""

    coeffs: tuple[Expr, Expr, Expr, Expr]

    variant = "generic"

    def __post_init__(self):
        if len(self.coeffs) != 4:
            raise ValueError("expected one coefficient per frame axis")


@dataclass(frozen=True)
class FactoredScale:
    """Separable bundle: coefficient i is arc[i] * profile[i]."""

    variant: str
    arc: tuple[Expr, Expr, Expr, Expr]
    profile: tuple[Expr, Expr, Expr, Expr]

    def __post_init__(self):
        if self.variant not in _ARC_VARS:
            raise ValueError(f"unknown variant {self.variant!r}")
        if len(self.arc) != 4 or len(self.profile) != 4:
            raise ValueError("expected one factor pair per frame axis")
        for axis, factor in zip(AXES, self.arc):
            extra = variables(factor) - _ARC_VARS[self.variant]
            if extra:
                raise ValueError(
                    f"{self.variant} arc factor for axis {axis} references {sorted(extra)}")
        for axis, factor in zip(AXES, self.profile):
            extra = variables(factor) - _PROFILE_VARS[self.variant]
            if extra:
                raise ValueError(
                    f"{self.variant} profile factor for axis {axis} references {sorted(extra)}")


MarchingScale = Union[GenericScale, FactoredScale]


def to_generic(scale: MarchingScale) -> tuple[Expr, Expr, Expr, Expr]:
    """Coefficient fields as plain (s, u, v) expressions."""
    if isinstance(scale, GenericScale):
        return scale.coeffs
    return tuple(mul(a, p) for a, p in zip(scale.arc, scale.profile))


def eval_coeffs(scale: MarchingScale, s: float, u: float, v: float
                ) -> tuple[float, float, float, float]:
    """The four frame coefficients at a parameter point."""
    if isinstance(scale, GenericScale):
        return tuple(evaluate(c, s, u, v) for c in scale.coeffs)
    return tuple(evaluate(a, s, u, v) * evaluate(p, s, u, v)
                 for a, p in zip(scale.arc, scale.profile))


@dataclass(frozen=True)
class Clause:
    """One admissibility condition: residual is the magnitude the decision
    was made on (a maximum for should-vanish clauses, a minimum for
    should-not-vanish clauses)."""

    name: str
    passed: bool
    residual: float
    detail: str = ""


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of a per-type admissibility check.

    witness is the signed value, at the weakest grid sample, of the
    quantity whose nonvanishing certifies a nondegenerate normal.
    """

    variant: str
    passed: bool
    witness: float
    clauses: tuple[Clause, ...]

    def clause(self, name: str) -> Clause:
        for c in self.clauses:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def failures(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.clauses if not c.passed)


def has_sign_change(values) -> bool:
    """True when two consecutive samples have strictly opposite signs."""
    return any(a * b < 0.0 for a, b in zip(values, values[1:]))


def _finish(variant: str, witness: float, clauses: list[Clause]) -> ConditionReport:
    return ConditionReport(variant=variant,
                           passed=all(c.passed for c in clauses),
                           witness=witness,
                           clauses=tuple(clauses))


def _grid_eval(expr: Expr, s_grid, u: float, v: float, errors: list[str]) -> list[float]:
    values = []
    for s in s_grid:
        try:
            values.append(evaluate(expr, s, u, v))
        except EvalDomainError as exc:
            errors.append(f"s={s!r}: {exc}")
    return values


def _evaluation_clause(errors: list[str]) -> Clause:
    return Clause(name="evaluation_ok", passed=not errors,
                  residual=float(len(errors)),
                  detail=errors[0] if errors else "")


def _min_abs(values) -> float:
    return min((abs(x) for x in values), default=math.inf)


def _max_abs(values) -> float:
    return max((abs(x) for x in values), default=math.inf)


def check_type_a(scale: FactoredScale, u0: float, v0: float,
                 s_grid, tol: float = DEFAULT_TOL) -> ConditionReport:
    """Admissibility of an arc(s) * profile(u, v) bundle at the anchor.

    Requires: all four profiles vanish at the anchor; the b- and e-axis arc
    factors never vanish on the grid; the Jacobian of the (b, e) profiles
    with respect to (u, v) is nonzero at the anchor; and the n-axis is
    decoupled (arc factor identically zero on the grid, or the n profile
    has a critical point at the anchor).
    """
    if scale.variant != "typeA":
        raise ValueError(f"expected a typeA bundle, got {scale.variant!r}")
    errors: list[str] = []
    try:
        profile0 = [evaluate(p, 0.0, u0, v0) for p in scale.profile]
        d_u = [evaluate(diff(p, "u"), 0.0, u0, v0) for p in scale.profile]
        d_v = [evaluate(diff(p, "v"), 0.0, u0, v0) for p in scale.profile]
    except EvalDomainError as exc:
        errors.append(f"anchor: {exc}")
        profile0 = d_u = d_v = [math.inf] * 4

    jacobian = d_u[2] * d_v[3] - d_v[2] * d_u[3]

    n_arc = _grid_eval(scale.arc[1], s_grid, u0, v0, errors)
    b_arc = _grid_eval(scale.arc[2], s_grid, u0, v0, errors)
    e_arc = _grid_eval(scale.arc[3], s_grid, u0, v0, errors)
    signed = [nu * xi * jacobian for nu, xi in zip(b_arc, e_arc)]

    n_arc_max = _max_abs(n_arc)
    n_grad_max = max(abs(d_u[1]), abs(d_v[1]))
    clauses = [
        Clause("profile_vanishing", _max_abs(profile0) <= tol, _max_abs(profile0)),
        Clause("b_arc_nonzero", _min_abs(b_arc) > tol, _min_abs(b_arc)),
        Clause("e_arc_nonzero", _min_abs(e_arc) > tol, _min_abs(e_arc)),
        Clause("be_jacobian_nonzero", abs(jacobian) > tol, abs(jacobian)),
        Clause("n_axis_decoupled",
               n_arc_max <= tol or n_grad_max <= tol,
               min(n_arc_max, n_grad_max)),
        Clause("witness_sign_stable", not has_sign_change(signed),
               0.0 if not has_sign_change(signed) else 1.0),
        _evaluation_clause(errors),
    ]
    return _finish("typeA", jacobian, clauses)


def check_type_b(scale: FactoredScale, u0: float, v0: float,
                 s_grid, tol: float = DEFAULT_TOL) -> ConditionReport:
    """Admissibility of an arc(s, u) * profile(v) bundle at the anchor."""
    if scale.variant != "typeB":
        raise ValueError(f"expected a typeB bundle, got {scale.variant!r}")
    return _check_separable(scale, s_grid, tol,
                            arc_slice=("u", u0), profile_at=("v", v0))


def check_type_c(scale: FactoredScale, u0: float, v0: float,
                 s_grid, tol: float = DEFAULT_TOL) -> ConditionReport:
    """Admissibility of an arc(s, v) * profile(u) bundle at the anchor;
    mirror of the typeB check with the roles of u and v exchanged."""
    if scale.variant != "typeC":
        raise ValueError(f"expected a typeC bundle, got {scale.variant!r}")
    return _check_separable(scale, s_grid, tol,
                            arc_slice=("v", v0), profile_at=("u", u0))


def check_conditions(scale: FactoredScale, u0: float, v0: float,
                     s_grid, tol: float = DEFAULT_TOL) -> ConditionReport:
    checker = {"typeA": check_type_a, "typeB": check_type_b,
               "typeC": check_type_c}[scale.variant]
    return checker(scale, u0, v0, s_grid, tol)


def _check_separable(scale: FactoredScale, s_grid, tol: float,
                     arc_slice: tuple[str, float],
                     profile_at: tuple[str, float]) -> ConditionReport:
    arc_var, arc_value = arc_slice
    profile_var, profile_value = profile_at
    point = {"u": 0.0, "v": 0.0, arc_var: arc_value, profile_var: profile_value}
    u_at, v_at = point["u"], point["v"]

    errors: list[str] = []
    try:
        profile0 = [evaluate(p, 0.0, u_at, v_at) for p in scale.profile]
        profile1 = [evaluate(diff(p, profile_var), 0.0, u_at, v_at)
                    for p in scale.profile]
    except EvalDomainError as exc:
        errors.append(f"anchor: {exc}")
        profile0 = profile1 = [math.inf] * 4

    arc_vals = [_grid_eval(a, s_grid, u_at, v_at, errors) for a in scale.arc]
    arc_partials = [_grid_eval(diff(a, arc_var), s_grid, u_at, v_at, errors)
                    for a in scale.arc]

    clauses = []
    for i, axis in enumerate(AXES):
        worst = _max_abs([a * profile0[i] for a in arc_vals[i]])
        clauses.append(Clause(f"{axis}_product_vanishing", worst <= tol, worst))

    # Signed n-component of the anchor normal per grid sample: the cross
    # partial of the (b, e) coefficient pair with respect to (u, v).
    signed = []
    for j in range(min(len(arc_vals[2]), len(arc_vals[3]))):
        if profile_var == "v":
            g_u, g_v = arc_partials[2][j] * profile0[2], arc_vals[2][j] * profile1[2]
            d_u, d_v = arc_partials[3][j] * profile0[3], arc_vals[3][j] * profile1[3]
        else:
            g_u, g_v = arc_vals[2][j] * profile1[2], arc_partials[2][j] * profile0[2]
            d_u, d_v = arc_vals[3][j] * profile1[3], arc_partials[3][j] * profile0[3]
        signed.append(g_u * d_v - g_v * d_u)

    witness = 0.0
    if signed:
        witness = min(signed, key=abs)
    clauses.append(Clause("witness_nonzero", _min_abs(signed) > tol, _min_abs(signed)))
    clauses.append(Clause("witness_sign_stable", not has_sign_change(signed),
                          0.0 if not has_sign_change(signed) else 1.0))

    # The n-axis coefficient must have vanishing (u, v) gradient at the
    # anchor; any of three factor-level alternatives achieves it.
    y0, y1 = abs(profile0[1]), abs(profile1[1])
    mu_max = _max_abs(arc_vals[1])
    mu_partial_max = _max_abs(arc_partials[1])
    alternatives = (max(y0, mu_max), max(y0, y1), max(y1, mu_partial_max))
    best = min(alternatives)
    clauses.append(Clause("n_axis_decoupled", best <= tol, best))
    clauses.append(_evaluation_clause(errors))
    return _finish(scale.variant, witness, clauses)
