"""Poincare-disk primitives: SU(1,1) matrices, Mobius action, distances, arcs."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, DomainError

__all__ = [
    "MobiusMatrix",
    "GeodesicArc",
    "IDENTITY",
    "mobius_apply",
    "compose",
    "inverse",
    "rotation",
    "hyp_distance",
    "arc_tangent_at",
    "projective_distance",
]

DET_TOL = 1e-12


@dataclass(frozen=True)
class MobiusMatrix:
    """SU(1,1) element ``[[u, v], [conj(v), conj(u)]]`` with ``|u|^2 - |v|^2 = 1``."""

    u: complex
    v: complex

    @property
    def det(self) -> float:
        return abs(self.u) ** 2 - abs(self.v) ** 2

    @property
    def trace(self) -> float:
        return 2.0 * self.u.real

    def as_array(self) -> np.ndarray:
        u, v = self.u, self.v
        # keeps numpy.clongdouble entries in extended precision
        return np.array([[u, v], [v.conjugate(), u.conjugate()]])

    @classmethod
    def from_array(cls, m, check: bool = True) -> "MobiusMatrix":
        """Build from a 2x2 array; only the first row is kept."""
        m = np.asarray(m, dtype=complex)
        out = cls(complex(m[0, 0]), complex(m[0, 1]))
        if check:
            out.check()
        return out

    def check(self, tol: float = DET_TOL) -> "MobiusMatrix":
        if abs(self.det - 1.0) > tol:
            raise ConsistencyError(f"|u|^2 - |v|^2 = {self.det!r}, expected 1")
        return self

    def __matmul__(self, other: "MobiusMatrix") -> "MobiusMatrix":
        return compose(self, other)

    def __call__(self, z: complex) -> complex:
        return mobius_apply(self, z)


IDENTITY = MobiusMatrix(1 + 0j, 0j)


def mobius_apply(m: MobiusMatrix, z: complex) -> complex:
    """Act on a disk point by ``(u z + v) / (conj(v) z + conj(u))``."""
    z = complex(z)
    if not abs(z) < 1.0:
        raise DomainError(f"point {z!r} is not inside the unit disk")
    return (m.u * z + m.v) / (m.v.conjugate() * z + m.u.conjugate())


def compose(m1: MobiusMatrix, m2: MobiusMatrix) -> MobiusMatrix:
    """Matrix product ``m1 @ m2`` (apply m2 first)."""
    u = m1.u * m2.u + m1.v * m2.v.conjugate()
    v = m1.u * m2.v + m1.v * m2.u.conjugate()
    return MobiusMatrix(u, v)


def inverse(m: MobiusMatrix) -> MobiusMatrix:
    # det = 1, so the inverse is the adjugate
    return MobiusMatrix(m.u.conjugate(), -m.v)


def rotation(phi: float) -> MobiusMatrix:
    """Rotation by ``phi`` about the origin, ``diag(e^{i phi/2}, e^{-i phi/2})``.

    ``rotation(2*pi)`` is ``-identity``: the same isometry, opposite lift.
    """
    return MobiusMatrix(cmath.exp(0.5j * phi), 0j)


def projective_distance(m1: MobiusMatrix, m2: MobiusMatrix) -> float:
    """Frobenius distance between two matrices, minimised over the sign of m2."""
    a, b = m1.as_array(), m2.as_array()
    return float(min(_frobenius(a - b), _frobenius(a + b)))


def _frobenius(m) -> float:
    return float(np.sqrt(np.sum(np.abs(m) ** 2)))


def hyp_distance(z1: complex, z2: complex) -> float:
    """Hyperbolic distance for the metric ``4|dz|^2 / (1 - |z|^2)^2``."""
    z1, z2 = complex(z1), complex(z2)
    if not (abs(z1) < 1.0 and abs(z2) < 1.0):
        raise DomainError("hyp_distance requires points strictly inside the unit disk")
    r = abs((z1 - z2) / (1.0 - z1.conjugate() * z2))
    return 2.0 * math.atanh(r)


@dataclass(frozen=True)
class GeodesicArc:
    """Geodesic segment on the circle of radius R centred at sqrt(1+R^2) e^{i phi_c}.

    ``start`` and ``end`` are the segment endpoints, in boundary-traversal order.
    """

    radius: float
    center_angle: float
    start: complex
    end: complex

    @property
    def center(self) -> complex:
        return math.sqrt(1.0 + self.radius**2) * cmath.exp(1j * self.center_angle)

    def endpoint_residuals(self) -> tuple[float, float]:
        c = self.center
        return (abs(abs(self.start - c) - self.radius), abs(abs(self.end - c) - self.radius))

    def boundary_orthogonality(self) -> float:
        """Cosine of the angle between this circle and the unit circle at an intersection.

        Zero means the arc meets the disk boundary at right angles.
        """
        c = self.center
        d = abs(c)
        # intersection point of |z| = 1 with |z - c| = R
        x = (1.0 + d * d - self.radius**2) / (2.0 * d)
        y = math.sqrt(max(1.0 - x * x, 0.0))
        p = (x + 1j * y) * (c / d)
        n_unit = p
        n_arc = (p - c) / self.radius
        return n_unit.real * n_arc.real + n_unit.imag * n_arc.imag

    def length(self) -> float:
        return hyp_distance(self.start, self.end)


def arc_tangent_at(arc: GeodesicArc, endpoint: complex) -> np.ndarray:
    """Euclidean unit tangent of the arc at one endpoint, pointing start -> end.

    Raises:
        ConsistencyError: if ``endpoint`` is off the arc circle by more than 1e-9.
    """
    endpoint = complex(endpoint)
    c = arc.center
    off = abs(abs(endpoint - c) - arc.radius)
    if off > 1e-9:
        raise ConsistencyError(f"point {endpoint!r} is {off:.3g} off the arc circle")
    r = endpoint - c
    t = 1j * r / abs(r)
    # geodesic segments are shorter than a half circle, so the traversal
    # direction has positive projection on the chord at both endpoints
    chord = arc.end - arc.start
    if t.real * chord.real + t.imag * chord.imag < 0:
        t = -t
    return np.array([t.real, t.imag])
