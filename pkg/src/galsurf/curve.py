"""Admissible arc-length curves in Galilean 4-space and their moving frame.

A curve enters in the admissible form (s, y(s), z(s), w(s)) with the first
coordinate equal to the arc-length parameter itself, so no
reparameterization pass exists.  The frame pipeline is fully symbolic: the
third curvature needs the derivative of the first binormal, which in turn
needs fourth derivatives of the component functions, and finite differences
would be too noisy exactly where the admissibility checks evaluate products
of vanishing factors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import exprcalc
from .exprcalc import Expr, diff, evaluate, variables
from .gvec import GalileanVec4, det4, gcross, gdot

KAPPA_TOL = 1e-9
TAU_TOL = 1e-9

_MAX_ORDER = 4


class DegenerateCurveError(Exception):
    """Frame construction failed at a parameter value."""

    def __init__(self, message: str, s: float):
        super().__init__(f"{message} at s={s!r}")
        self.s = s


class DegenerateCurvatureError(DegenerateCurveError):
    """First curvature fell below KAPPA_TOL; the normal direction is
    numerically meaningless."""


class DegenerateTorsionError(DegenerateCurveError):
    """Second curvature fell below TAU_TOL; the binormal direction is
    numerically meaningless."""


@dataclass(frozen=True)
class CurveSpec:
    """Component functions of the three isotropic axes plus the s interval.

    y, z, w may reference the variable s only.
    """

    y: Expr
    z: Expr
    w: Expr
    s_min: float
    s_max: float

    def __post_init__(self):
        for name in ("y", "z", "w"):
            extra = variables(getattr(self, name)) - {"s"}
            if extra:
                raise ValueError(f"curve component {name} references {sorted(extra)}")
        if not (math.isfinite(self.s_min) and math.isfinite(self.s_max)):
            raise ValueError("curve interval must be finite")
        if not self.s_min < self.s_max:
            raise ValueError("curve interval is empty")
        object.__setattr__(self, "_chains", self._derivative_chains())
        object.__setattr__(self, "_frame_exprs", self._build_frame_exprs())

    def _derivative_chains(self) -> tuple[tuple[Expr, ...], ...]:
        chains = []
        for component in (self.y, self.z, self.w):
            chain = [component]
            for _ in range(_MAX_ORDER):
                chain.append(diff(chain[-1], "s"))
            chains.append(tuple(chain))
        return tuple(chains)

    def _build_frame_exprs(self) -> dict:
        chains = self._chains
        second = [chains[i][2] for i in range(3)]
        squares = exprcalc.add(
            exprcalc.add(exprcalc.mul(second[0], second[0]),
                         exprcalc.mul(second[1], second[1])),
            exprcalc.mul(second[2], second[2]))
        kappa = exprcalc.func("sqrt", squares)
        normal = [exprcalc.div(c, kappa) for c in second]
        normal_d = [diff(c, "s") for c in normal]
        tau_sq = exprcalc.add(
            exprcalc.add(exprcalc.mul(normal_d[0], normal_d[0]),
                         exprcalc.mul(normal_d[1], normal_d[1])),
            exprcalc.mul(normal_d[2], normal_d[2]))
        tau = exprcalc.func("sqrt", tau_sq)
        binormal = [exprcalc.div(c, tau) for c in normal_d]
        binormal_d = [diff(c, "s") for c in binormal]
        return {
            "kappa": kappa,
            "tau": tau,
            "normal": tuple(normal),
            "binormal": tuple(binormal),
            "binormal_d": tuple(binormal_d),
        }

    def point(self, s: float) -> GalileanVec4:
        return self.derivative_stack(s, 0)[0]

    def derivative_stack(self, s: float, order: int = _MAX_ORDER) -> list[GalileanVec4]:
        """r and its derivatives up to the requested order (at most 4).

        The first components are s, 1, 0, 0, 0 by the admissible form.
        """
        if not 0 <= order <= _MAX_ORDER:
            raise ValueError(f"order must be in 0..{_MAX_ORDER}")
        stack = []
        for k in range(order + 1):
            first = s if k == 0 else (1.0 if k == 1 else 0.0)
            stack.append(GalileanVec4(first,
                                      evaluate(self._chains[0][k], s),
                                      evaluate(self._chains[1][k], s),
                                      evaluate(self._chains[2][k], s)))
        return stack


@dataclass(frozen=True)
class FrenetFrame:
    """Moving frame (t, n, b, e) with curvatures at one parameter value.

    t has first component 1; n, b, e are isotropic, unit, and mutually
    orthogonal; the sign mu is chosen so that det(t, n, b, e) = +1.
    """

    s: float
    t: GalileanVec4
    n: GalileanVec4
    b: GalileanVec4
    e: GalileanVec4
    kappa: float
    tau: float
    sigma: float
    mu: int

    def components_of(self, vec: GalileanVec4) -> tuple[float, float, float, float]:
        """Coefficients of an ambient vector in this frame.

        The t-coefficient equals the first ambient component (only t leaves
        the isotropic hyperplane); the rest are Euclidean projections onto
        the isotropic frame legs.
        """
        along_t = vec.c1
        iso = vec - along_t * self.t
        return (along_t, gdot(iso, self.n), gdot(iso, self.b), gdot(iso, self.e))


def frenet_frame(curve: CurveSpec, s: float) -> FrenetFrame:
    """Evaluate the moving frame, raising on degenerate curvature/torsion."""
    exprs = curve._frame_exprs
    d1 = [evaluate(curve._chains[i][1], s) for i in range(3)]
    t = GalileanVec4(1.0, d1[0], d1[1], d1[2])

    kappa = evaluate(exprs["kappa"], s)
    if kappa <= KAPPA_TOL:
        raise DegenerateCurvatureError(f"curvature {kappa!r} below tolerance", s)
    n = GalileanVec4(0.0, *(evaluate(c, s) for c in exprs["normal"]))

    tau = evaluate(exprs["tau"], s)
    if tau <= TAU_TOL:
        raise DegenerateTorsionError(f"torsion {tau!r} below tolerance", s)
    b = GalileanVec4(0.0, *(evaluate(c, s) for c in exprs["binormal"]))

    cross = gcross(t, n, b)
    mu = 1 if det4(t, n, b, cross) > 0.0 else -1
    e = cross * float(mu)

    b_d = GalileanVec4(0.0, *(evaluate(c, s) for c in exprs["binormal_d"]))
    sigma = gdot(b_d, e)
    return FrenetFrame(s=s, t=t, n=n, b=b, e=e, kappa=kappa, tau=tau,
                       sigma=sigma, mu=mu)


@dataclass(frozen=True)
class FrameOdeResiduals:
    """Max-norm residuals of the four frame derivative identities."""

    tangent: float
    normal: float
    binormal: float
    second_binormal: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.tangent, self.normal, self.binormal, self.second_binormal)

    @property
    def worst(self) -> float:
        return max(self.as_tuple())


def _max_abs(vec: GalileanVec4) -> float:
    return max(abs(c) for c in vec.components())


def verify_frenet_odes(curve: CurveSpec, s: float, h: float) -> FrameOdeResiduals:
    """Check t' = kn, n' = tb, b' = -tn + se, e' = -sb by central differences.

    Frame fields are differentiated numerically with step h, so residuals
    carry the O(h^2) truncation error of the scheme.
    """
    lo = frenet_frame(curve, s - h)
    mid = frenet_frame(curve, s)
    hi = frenet_frame(curve, s + h)
    scale = 1.0 / (2.0 * h)

    def ddt(field: str) -> GalileanVec4:
        return (getattr(hi, field) - getattr(lo, field)) * scale

    return FrameOdeResiduals(
        tangent=_max_abs(ddt("t") - mid.kappa * mid.n),
        normal=_max_abs(ddt("n") - mid.tau * mid.b),
        binormal=_max_abs(ddt("b") + mid.tau * mid.n - mid.sigma * mid.e),
        second_binormal=_max_abs(ddt("e") + mid.sigma * mid.b),
    )
