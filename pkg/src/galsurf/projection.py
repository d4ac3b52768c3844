"""Orthographic 3-space projections of a patch and mesh export.

Projection means deleting one ambient coordinate (parallel projection onto
the complementary coordinate subspace) after pinning one of the two free
surface parameters, leaving a two-parameter surface in 3-space.  Sampled
grids export as Wavefront OBJ (v/f subset) or CSV.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TextIO

from .curve import FrenetFrame
from .hypersurface import HypersurfacePatch, surface_point

AXIS_NAMES = ("x", "y", "z", "w")


@dataclass(frozen=True)
class Projection:
    """Drop one ambient axis and pin one surface parameter."""

    drop_axis: str     # "x" | "y" | "z" | "w"
    fixed_param: str   # "u" | "v"
    fixed_value: float

    def __post_init__(self):
        if self.drop_axis not in AXIS_NAMES:
            raise ValueError(f"unknown axis {self.drop_axis!r}")
        if self.fixed_param not in ("u", "v"):
            raise ValueError(f"unknown parameter {self.fixed_param!r}")
        if not math.isfinite(self.fixed_value):
            raise ValueError("fixed value must be finite")


@dataclass(frozen=True)
class SampleGrid:
    """Row-major lattice of projected points.

    Row i holds the cols samples at s_values[i]; vertex (i, j) sits at
    index i*cols + j.
    """

    rows: int
    cols: int
    s_values: tuple[float, ...]
    free_values: tuple[float, ...]
    vertices: tuple[tuple[float, float, float], ...]

    def __post_init__(self):
        if self.rows < 2 or self.cols < 2:
            raise ValueError("need at least a 2x2 lattice")
        if self.rows * self.cols != len(self.vertices):
            raise ValueError("vertex count does not match lattice shape")

    @property
    def vertex_count(self) -> int:
        return self.rows * self.cols

    @property
    def face_count(self) -> int:
        return 2 * (self.rows - 1) * (self.cols - 1)


def check_projection(patch: HypersurfacePatch, proj: Projection) -> None:
    """Reject a pinned value outside the patch's parameter interval."""
    if proj.fixed_param == "u":
        lo, hi = patch.u_min, patch.u_max
    else:
        lo, hi = patch.v_min, patch.v_max
    if not lo <= proj.fixed_value <= hi:
        raise ValueError(
            f"fixed {proj.fixed_param}={proj.fixed_value!r} outside [{lo!r}, {hi!r}]")


def project_point(patch: HypersurfacePatch, proj: Projection,
                  s: float, free: float,
                  frame: FrenetFrame | None = None) -> tuple[float, float, float]:
    """Projected surface point; remaining coordinates keep ambient order."""
    if proj.fixed_param == "u":
        u, v = proj.fixed_value, free
    else:
        u, v = free, proj.fixed_value
    point = surface_point(patch, s, u, v, frame)
    kept = [c for axis, c in zip(AXIS_NAMES, point.components())
            if axis != proj.drop_axis]
    return (kept[0], kept[1], kept[2])


def _linspace(lo: float, hi: float, count: int) -> list[float]:
    step = (hi - lo) / (count - 1)
    return [lo + step * i for i in range(count)]


def sample(patch: HypersurfacePatch, proj: Projection,
           n_s: int, n_free: int) -> SampleGrid:
    """Even lattice over the s interval and the free parameter interval,
    both endpoints included."""
    if n_s < 2 or n_free < 2:
        raise ValueError("need at least two samples per direction")
    check_projection(patch, proj)
    if proj.fixed_param == "u":
        free_lo, free_hi = patch.v_min, patch.v_max
    else:
        free_lo, free_hi = patch.u_min, patch.u_max
    s_values = _linspace(patch.curve.s_min, patch.curve.s_max, n_s)
    free_values = _linspace(free_lo, free_hi, n_free)
    vertices = []
    for s in s_values:
        frame = patch.frame(s)
        for free in free_values:
            vertices.append(project_point(patch, proj, s, free, frame))
    return SampleGrid(rows=n_s, cols=n_free,
                      s_values=tuple(s_values),
                      free_values=tuple(free_values),
                      vertices=tuple(vertices))


def export_obj(grid: SampleGrid, out: TextIO) -> None:
    """Wavefront OBJ: one v-line per vertex (9 significant digits), quads
    split into two triangles along the (i, j) -> (i+1, j+1) diagonal,
    1-based indices."""
    for x, y, z in grid.vertices:
        out.write(f"v {x:.9g} {y:.9g} {z:.9g}\n")
    cols = grid.cols
    for i in range(grid.rows - 1):
        for j in range(cols - 1):
            a = i * cols + j + 1
            b = a + 1
            c = a + cols + 1
            d = a + cols
            out.write(f"f {a} {b} {c}\n")
            out.write(f"f {a} {c} {d}\n")


def export_csv(grid: SampleGrid, out: TextIO) -> None:
    """CSV rows in lattice order at full double precision (shortest
    round-tripping decimal form)."""
    out.write("s,param,x,y,z\n")
    for i, s in enumerate(grid.s_values):
        for j, free in enumerate(grid.free_values):
            x, y, z = grid.vertices[i * grid.cols + j]
            out.write(f"{s!r},{free!r},{x!r},{y!r},{z!r}\n")
