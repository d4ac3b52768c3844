"""Vector algebra of the 4-dimensional Galilean space.

The first coordinate axis is the absolute (non-isotropic) direction.  The
scalar product degenerates: whenever either argument has a nonzero first
component only the first components multiply, otherwise the product is
Euclidean on the remaining three components.  The cross product is ternary
and always lands in the isotropic hyperplane.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class GalileanVec4:
    """4-vector whose first component lies along the absolute direction.

    Components must be finite; a vector is isotropic exactly when c1 == 0.
    """

    c1: float
    c2: float
    c3: float
    c4: float

    def __post_init__(self):
        for name in ("c1", "c2", "c3", "c4"):
            value = getattr(self, name)
            if not isinstance(value, float):
                value = float(value)
                object.__setattr__(self, name, value)
            if not math.isfinite(value):
                raise ValueError(f"non-finite component {name}={value!r}")

    @property
    def is_isotropic(self) -> bool:
        return self.c1 == 0.0

    def components(self) -> tuple[float, float, float, float]:
        return (self.c1, self.c2, self.c3, self.c4)

    def __add__(self, other: "GalileanVec4") -> "GalileanVec4":
        return GalileanVec4(self.c1 + other.c1, self.c2 + other.c2,
                            self.c3 + other.c3, self.c4 + other.c4)

    def __sub__(self, other: "GalileanVec4") -> "GalileanVec4":
        return GalileanVec4(self.c1 - other.c1, self.c2 - other.c2,
                            self.c3 - other.c3, self.c4 - other.c4)

    def __mul__(self, scalar: float) -> "GalileanVec4":
        return GalileanVec4(self.c1 * scalar, self.c2 * scalar,
                            self.c3 * scalar, self.c4 * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> "GalileanVec4":
        return GalileanVec4(-self.c1, -self.c2, -self.c3, -self.c4)


ZERO_VEC = GalileanVec4(0.0, 0.0, 0.0, 0.0)


def gdot(a: GalileanVec4, b: GalileanVec4) -> float:
    """Degenerate scalar product.

    The branch test compares c1 to zero exactly: isotropic vectors produced
    by this library carry a structural 0.0 in the first slot, and a
    tolerance would silently misclassify nearly-isotropic user input.
    """
    if a.c1 != 0.0 or b.c1 != 0.0:
        return a.c1 * b.c1
    return a.c2 * b.c2 + a.c3 * b.c3 + a.c4 * b.c4


def gnorm(a: GalileanVec4) -> float:
    """Galilean length: |c1| when non-isotropic, else the Euclidean length
    of the isotropic part."""
    if a.c1 != 0.0:
        return abs(a.c1)
    return math.sqrt(a.c2 * a.c2 + a.c3 * a.c3 + a.c4 * a.c4)


def _minor3(a, b, c, cols: tuple[int, int, int]) -> float:
    i, j, k = cols
    return (a[i] * (b[j] * c[k] - b[k] * c[j])
            - a[j] * (b[i] * c[k] - b[k] * c[i])
            + a[k] * (b[i] * c[j] - b[j] * c[i]))


def gcross(a: GalileanVec4, b: GalileanVec4, c: GalileanVec4) -> GalileanVec4:
    """Ternary cross product: the formal determinant with first row
    (0, e2, e3, e4) above the three argument rows, expanded along that row.

    The result is always isotropic and is alternating and trilinear in the
    arguments.  Note the expansion parity: gcross(e1, e2, e3) = -e4.
    """
    ra = a.components()
    rb = b.components()
    rc = c.components()
    return GalileanVec4(
        0.0,
        -_minor3(ra, rb, rc, (0, 2, 3)),
        +_minor3(ra, rb, rc, (0, 1, 3)),
        -_minor3(ra, rb, rc, (0, 1, 2)),
    )


def det4(a: GalileanVec4, b: GalileanVec4, c: GalileanVec4, d: GalileanVec4) -> float:
    """Determinant of the four row-stacked vectors."""
    rows = np.array([a.components(), b.components(), c.components(), d.components()])
    return float(np.linalg.det(rows))
