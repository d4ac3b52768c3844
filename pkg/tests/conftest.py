"""Shared fixtures: the worked example curve, its closed-form frame, scene
loading, and a generator of randomized factored bundles with clear-cut
verdicts (used for the checker-vs-generic cross-validation)."""

from __future__ import annotations

import json
import math
import random

import pytest

from galsurf import exprcalc
from galsurf.curve import CurveSpec
from galsurf.exprcalc import Expr, const, mul, sub, var
from galsurf.gvec import GalileanVec4
from galsurf.hypersurface import HypersurfacePatch
from galsurf.marching import FactoredScale
from galsurf.scenes import scene_path
from galsurf.schemas import build_patch, scene_from_dict

SQRT2 = math.sqrt(2.0)


# Closed-form frame of the circle-like example curve (s, cos s, sqrt2 sin s,
# cos s); used as the independent oracle throughout.

def example_point(s: float) -> tuple[float, float, float, float]:
    return (s, math.cos(s), SQRT2 * math.sin(s), math.cos(s))


def example_t(s: float) -> tuple[float, float, float, float]:
    return (1.0, -math.sin(s), SQRT2 * math.cos(s), -math.sin(s))


def example_n(s: float) -> tuple[float, float, float, float]:
    r = 1.0 / SQRT2
    return (0.0, -r * math.cos(s), -math.sin(s), -r * math.cos(s))


def example_b(s: float) -> tuple[float, float, float, float]:
    r = 1.0 / SQRT2
    return (0.0, r * math.sin(s), -math.cos(s), r * math.sin(s))


def example_e(s: float) -> tuple[float, float, float, float]:
    r = 1.0 / SQRT2
    return (0.0, -r, 0.0, r)


def assert_vec_close(got, want, tol: float = 1e-9):
    components = got.components() if isinstance(got, GalileanVec4) else tuple(got)
    err = max(abs(g - w) for g, w in zip(components, want))
    assert err <= tol, f"{components} != {want} (err {err:.3e})"


@pytest.fixture(scope="session")
def example_curve() -> CurveSpec:
    return CurveSpec(exprcalc.parse("cos(s)"), exprcalc.parse("sqrt(2)*sin(s)"),
                     exprcalc.parse("cos(s)"), 0.0, 2.0 * math.pi)


def load_scene_dict(name: str) -> dict:
    return json.loads(scene_path(name).read_text(encoding="utf-8"))


def load_patch(name: str) -> HypersurfacePatch:
    return build_patch(scene_from_dict(load_scene_dict(name)))


@pytest.fixture(scope="session")
def patch_a() -> HypersurfacePatch:
    return load_patch("typeA")


@pytest.fixture(scope="session")
def patch_b() -> HypersurfacePatch:
    return load_patch("typeB")


@pytest.fixture(scope="session")
def patch_c() -> HypersurfacePatch:
    return load_patch("typeC")


def random_vec(rng: random.Random, isotropic: bool = False) -> GalileanVec4:
    first = 0.0 if isotropic else rng.uniform(-2.0, 2.0)
    return GalileanVec4(first, rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0),
                        rng.uniform(-2.0, 2.0))


# --- randomized factored bundles -------------------------------------------
#
# The bundles keep every decisive quantity either structurally zero or
# bounded away from zero, so the per-type checker and the generic validation
# must agree exactly; tolerance-boundary coincidences are not the point of
# the cross-validation.

def _bounded_arc(rng: random.Random, s_lo: float, s_hi: float) -> Expr:
    # c0 + c1*q + c2*q^2 with q = (s - lo)/(hi - lo), |c1| + |c2| < c0
    q = mul(sub(var("s"), const(s_lo)), const(1.0 / (s_hi - s_lo)))
    c0 = rng.uniform(0.7, 1.5) * rng.choice((1.0, -1.0))
    c1 = rng.uniform(-0.25, 0.25)
    c2 = rng.uniform(-0.25, 0.25)
    return exprcalc.add(const(c0),
                        exprcalc.add(mul(const(c1), q), mul(const(c2), mul(q, q))))


def _crossing_arc(rng: random.Random, s_lo: float, s_hi: float) -> Expr:
    crossing = rng.uniform(s_lo + 0.3, s_hi - 0.3)
    return sub(var("s"), const(crossing))


def _small_poly(rng: random.Random, names: tuple[str, ...]) -> Expr:
    e: Expr = const(rng.uniform(-0.3, 0.3))
    for name in names:
        e = exprcalc.add(e, mul(const(rng.uniform(-0.3, 0.3)), var(name)))
    return e


def _anchored(rng: random.Random, name: str, value: float,
              extra: tuple[str, ...] = ()) -> Expr:
    # (x - x0) * (c + small poly): vanishes structurally at the anchor
    factor = exprcalc.add(const(rng.uniform(0.5, 1.2) * rng.choice((1.0, -1.0))),
                          _small_poly(rng, (name,) + extra))
    return mul(sub(var(name), const(value)), factor)


def random_bundle(rng: random.Random, variant: str, mode: str,
                  s_range: tuple[float, float], u0: float, v0: float
                  ) -> FactoredScale:
    """A factored bundle whose checker verdict is clear-cut.

    mode: "pass", "fail-witness" (degenerate normal), "fail-anchor"
    (a coefficient survives at the anchor), "fail-naxis" (n-coefficient
    with nonvanishing gradient), "fail-signchange" (normal flips sign
    between grid samples).
    """
    s_lo, s_hi = s_range
    if variant == "typeA":
        arc = [_bounded_arc(rng, s_lo, s_hi) for _ in range(4)]
        du, dv = sub(var("u"), const(u0)), sub(var("v"), const(v0))
        n_field = exprcalc.ZERO if rng.random() < 0.5 else mul(du, dv)
        profile = [
            _anchored(rng, "u", u0, ("v",)),                      # t
            n_field,                                              # n: flat at anchor
            exprcalc.add(du, mul(const(rng.uniform(-0.3, 0.3)), dv)),  # b
            exprcalc.add(dv, mul(const(rng.uniform(-0.3, 0.3)), du)),  # e
        ]
        if mode == "fail-witness":
            # collinear (b, e) profiles: the (u, v) Jacobian degenerates
            profile[3] = mul(const(rng.uniform(0.5, 2.0)), profile[2])
        elif mode == "fail-anchor":
            profile[0] = exprcalc.add(profile[0], const(rng.uniform(0.4, 1.0)))
        elif mode == "fail-naxis":
            profile[1] = sub(var("u"), const(u0))   # gradient (1, 0) at anchor
        elif mode == "fail-signchange":
            arc[2] = _crossing_arc(rng, s_lo, s_hi)
        return FactoredScale(variant="typeA", arc=tuple(arc), profile=tuple(profile))

    arc_var, profile_var = ("u", "v") if variant == "typeB" else ("v", "u")
    arc_anchor = u0 if variant == "typeB" else v0
    profile_anchor = v0 if variant == "typeB" else u0

    def bounded_profile() -> Expr:
        return exprcalc.add(const(rng.uniform(0.6, 1.4) * rng.choice((1.0, -1.0))),
                            mul(const(rng.uniform(-0.3, 0.3)), var(profile_var)))

    # b-axis profile anchored, e-axis arc anchored: the witness reduces to a
    # product of bounded factors
    arc = [
        _bounded_arc(rng, s_lo, s_hi),
        exprcalc.ZERO,
        _bounded_arc(rng, s_lo, s_hi),
        _anchored(rng, arc_var, arc_anchor),
    ]
    profile = [
        sub(var(profile_var), const(profile_anchor)),
        exprcalc.ZERO,
        sub(var(profile_var), const(profile_anchor)),
        bounded_profile(),
    ]
    if mode == "fail-witness":
        # anchor the e profile as well: every witness term now vanishes
        arc[3] = _bounded_arc(rng, s_lo, s_hi)
        profile[3] = sub(var(profile_var), const(profile_anchor))
    elif mode == "fail-anchor":
        arc[3] = _bounded_arc(rng, s_lo, s_hi)  # e coefficient never vanishes
    elif mode == "fail-naxis":
        arc[1] = _bounded_arc(rng, s_lo, s_hi)
        profile[1] = sub(var(profile_var), const(profile_anchor))
    elif mode == "fail-signchange":
        arc[2] = _crossing_arc(rng, s_lo, s_hi)
    return FactoredScale(variant=variant, arc=tuple(arc), profile=tuple(profile))
