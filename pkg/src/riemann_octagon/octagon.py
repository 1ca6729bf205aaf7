"""Two-parameter octagon with an order-four rotation symmetry.

Vertices sit at ``a i^k`` and ``b e^{i(alpha + k pi/2)}``.  The pair
``(a, alpha)`` fixes everything else; ``alpha_tilde = alpha - pi/4`` is the
shifted angle used by all downstream formulas and its sign labels the sheet.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, RegionError
from .hypgeom import GeodesicArc, arc_tangent_at, hyp_distance
from .specfun import arccosh_stable

__all__ = [
    "OctagonParams",
    "OctagonGeometry",
    "REGION_MARGIN",
    "A_REG",
    "ALPHA_REG",
    "P_REG",
    "in_region",
    "region_violation",
    "derived_b_beta",
    "arc_radii_angles",
    "build_geometry",
    "perimeter",
    "perimeter_ab",
    "side_lengths",
    "inner_angles",
    "angle_sum",
]

REGION_MARGIN = 1e-12
A_REG = 2.0 ** -0.25
ALPHA_REG = math.pi / 4
P_REG = 8.0 * arccosh_stable(5.0 + 4.0 * math.sqrt(2.0))

_VERTEX_TOL = 1e-10


def region_violation(a: float, alpha: float, margin: float = REGION_MARGIN) -> str | None:
    """Describe which region inequality fails, or return None if (a, alpha) is admissible."""
    at = alpha - math.pi / 4
    if not abs(at) < math.pi / 4 - margin:
        return f"|alpha - pi/4| < pi/4 violated (alpha_tilde = {at!r})"
    lower = 1.0 / (math.sqrt(2.0) * math.cos(at))
    if not a > lower + margin:
        return f"a > 1/(sqrt(2) cos(alpha_tilde)) = {lower!r} violated (a = {a!r})"
    if not a < 1.0 - margin:
        return f"a < 1 violated (a = {a!r})"
    return None


def in_region(a: float, alpha: float, margin: float = REGION_MARGIN) -> bool:
    """True iff (a, alpha) lies strictly inside the admissible region."""
    return region_violation(a, alpha, margin) is None


@dataclass(frozen=True)
class OctagonParams:
    """A point of the parameter region; ``alpha`` is stored, ``alpha_tilde`` derived."""

    a: float
    alpha: float

    @classmethod
    def from_tilde(cls, a: float, alpha_tilde: float) -> "OctagonParams":
        return cls(a, alpha_tilde + math.pi / 4)

    @classmethod
    def regular(cls) -> "OctagonParams":
        return cls(A_REG, ALPHA_REG)

    @property
    def alpha_tilde(self) -> float:
        return self.alpha - math.pi / 4

    @property
    def eps(self) -> int:
        """Sheet label: sign of alpha_tilde, +1 on the symmetry line."""
        return -1 if self.alpha_tilde < 0 else 1

    def in_region(self) -> bool:
        return in_region(self.a, self.alpha)

    def validate(self) -> "OctagonParams":
        msg = region_violation(self.a, self.alpha)
        if msg is not None:
            raise RegionError(msg)
        return self

    @property
    def b(self) -> float:
        return 1.0 / (math.sqrt(2.0) * self.a * math.cos(self.alpha_tilde))

    def swapped(self) -> "OctagonParams":
        """The point (b, -alpha_tilde) seen by the alternative pants decomposition."""
        return OctagonParams.from_tilde(self.b, -self.alpha_tilde)


@dataclass(frozen=True)
class OctagonGeometry:
    params: OctagonParams
    b: float
    beta: float
    R_plus: float
    R_minus: float
    phi_plus: float
    phi_minus: float
    vertices: tuple[complex, ...]
    sides: tuple[GeodesicArc, ...]


def derived_b_beta(p: OctagonParams) -> tuple[float, float]:
    """Return ``(b, beta)``: the second vertex radius and the inner angle at the a-vertices."""
    p.validate()
    b = p.b
    beta = math.atan2(1.0 - p.a**2, 1.0 - b * b)
    return b, beta


def arc_radii_angles(p: OctagonParams) -> tuple[float, float, float, float]:
    """Radii and centre angles ``(R+, R-, phi+, phi-)`` of the two kinds of boundary arcs."""
    p.validate()
    a = p.a
    t = math.tan(p.alpha_tilde)
    t_plus = a * a + t
    t_minus = a * a - t
    one_m = 1.0 - a * a
    r_plus = math.hypot(t_plus, one_m) / (2.0 * a)
    r_minus = math.hypot(t_minus, one_m) / (2.0 * a)
    phi_plus = math.atan2(t_plus, 1.0 + a * a)
    phi_minus = math.atan2(1.0 + a * a, t_minus)
    return r_plus, r_minus, phi_plus, phi_minus


def build_geometry(p: OctagonParams) -> OctagonGeometry:
    """Vertices and the eight boundary arcs ``s_0 .. s_7`` (counter-clockwise).

    Side ``s_k`` runs from vertex ``V_k`` to ``V_{k+1}``; even sides are the
    "+" arcs, odd sides the "-" arcs.

    Raises:
        ConsistencyError: if a vertex misses one of its arcs by more than 1e-9.
    """
    b, beta = derived_b_beta(p)
    r_plus, r_minus, phi_plus, phi_minus = arc_radii_angles(p)
    verts = []
    for j in range(4):
        rot = 1j**j
        verts.append(p.a * rot)
        verts.append(b * cmath.exp(1j * p.alpha) * rot)
    sides = []
    for k in range(8):
        j = k // 2
        if k % 2 == 0:
            radius, ang = r_plus, phi_plus + j * math.pi / 2
        else:
            radius, ang = r_minus, phi_minus + j * math.pi / 2
        arc = GeodesicArc(radius, ang, verts[k], verts[(k + 1) % 8])
        worst = max(arc.endpoint_residuals())
        if worst > 1e-9:
            raise ConsistencyError(f"vertex misses side s_{k} by {worst:.3g}")
        sides.append(arc)
    return OctagonGeometry(
        params=p,
        b=b,
        beta=beta,
        R_plus=r_plus,
        R_minus=r_minus,
        phi_plus=phi_plus,
        phi_minus=phi_minus,
        vertices=tuple(verts),
        sides=tuple(sides),
    )


def perimeter_ab(a: float, b: float) -> float:
    """Closed-form perimeter in terms of the two vertex radii."""
    a2, b2 = a * a, b * b
    num = 1.0 - a2 * b2 + math.hypot(1.0 - a2, 1.0 - b2)
    return 8.0 * arccosh_stable(num / ((1.0 - a2) * (1.0 - b2)))


def perimeter(p: OctagonParams) -> float:
    """Hyperbolic perimeter of the octagon; minimal (P_REG) for the regular one."""
    p.validate()
    return perimeter_ab(p.a, p.b)


def side_lengths(geom: OctagonGeometry) -> list[float]:
    return [hyp_distance(s.start, s.end) for s in geom.sides]


def inner_angles(geom: OctagonGeometry) -> list[float]:
    """Interior angle at each vertex ``V_k``, measured between arc tangents."""
    angles = []
    for k in range(8):
        incoming = geom.sides[(k - 1) % 8]
        outgoing = geom.sides[k]
        v = geom.vertices[k]
        t_in = arc_tangent_at(incoming, v)
        t_out = arc_tangent_at(outgoing, v)
        back = -t_in
        cross = back[0] * t_out[1] - back[1] * t_out[0]
        dot = float(np.dot(back, t_out))
        if math.hypot(cross, dot) < 1e-14:
            raise ConsistencyError(f"degenerate tangent pair at vertex {k}")
        angles.append(abs(math.atan2(cross, dot)))
    return angles


def angle_sum(p: OctagonParams) -> float:
    """Sum of the eight interior angles; equals 2 pi for a genus-two domain."""
    return math.fsum(inner_angles(build_geometry(p)))
