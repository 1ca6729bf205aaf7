import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from riemann_octagon.errors import ConsistencyError, DomainError
from riemann_octagon.hypgeom import (
    IDENTITY,
    GeodesicArc,
    MobiusMatrix,
    arc_tangent_at,
    compose,
    hyp_distance,
    inverse,
    mobius_apply,
    projective_distance,
    rotation,
)

disk = st.builds(cmath.rect, st.floats(0, 0.95), st.floats(-math.pi, math.pi))


@st.composite
def su11(draw):
    # u = cosh(r) e^{i a}, v = sinh(r) e^{i b} has |u|^2 - |v|^2 = 1
    r = draw(st.floats(0, 2))
    a = draw(st.floats(-math.pi, math.pi))
    b = draw(st.floats(-math.pi, math.pi))
    return MobiusMatrix(math.cosh(r) * cmath.exp(1j * a), math.sinh(r) * cmath.exp(1j * b))


@given(su11(), disk)
def test_mobius_preserves_the_disk(m, z):
    assert abs(mobius_apply(m, z)) < 1.0 + 1e-12


@given(su11(), disk, disk)
def test_distance_is_invariant(m, z1, z2):
    d = hyp_distance(z1, z2)
    w1, w2 = mobius_apply(m, z1), mobius_apply(m, z2)
    if max(abs(w1), abs(w2)) < 0.999:
        assert hyp_distance(w1, w2) == pytest.approx(d, rel=1e-8, abs=1e-10)


@given(su11(), su11(), disk)
def test_compose_is_action_composition(m1, m2, z):
    lhs = mobius_apply(compose(m1, m2), z)
    rhs = mobius_apply(m1, mobius_apply(m2, z))
    assert abs(lhs - rhs) < 1e-9


@given(su11())
def test_inverse_and_determinant(m):
    assert m.det == pytest.approx(1.0, abs=1e-9)
    assert projective_distance(compose(m, inverse(m)), IDENTITY) < 1e-9
    assert (m @ inverse(m)).check(1e-9)


def test_distance_from_origin():
    r = 0.6
    assert hyp_distance(0, r) == pytest.approx(2 * math.atanh(r))
    assert hyp_distance(0, r) == pytest.approx(math.log((1 + r) / (1 - r)))


def test_rotation_full_turn_is_minus_identity():
    m = rotation(2 * math.pi)
    assert np.allclose(m.as_array(), -np.eye(2))
    assert projective_distance(m, IDENTITY) < 1e-15
    assert abs(rotation(math.pi / 2)(0.5) - 0.5j) < 1e-15


def test_errors():
    with pytest.raises(DomainError):
        mobius_apply(IDENTITY, 1.0)
    with pytest.raises(DomainError):
        hyp_distance(0, 1.2)
    with pytest.raises(ConsistencyError):
        MobiusMatrix(2.0 + 0j, 0j).check()
    with pytest.raises(ConsistencyError):
        MobiusMatrix.from_array([[2, 0], [0, 0.5]])


def test_from_array_roundtrip():
    m = MobiusMatrix(math.cosh(0.3) + 0j, math.sinh(0.3) * 1j)
    assert MobiusMatrix.from_array(m.as_array()) == m


@given(st.floats(0.05, 3), st.floats(-math.pi, math.pi))
def test_arc_circle_is_orthogonal_to_boundary(R, ang):
    arc = GeodesicArc(R, ang, 0j, 0j)
    assert abs(arc.boundary_orthogonality()) < 1e-12


def test_arc_tangent_orientation():
    R = 1.0
    c = math.sqrt(2.0)
    # two points on the circle |z - c| = 1 inside the disk
    p1 = c + cmath.exp(1j * (math.pi - 0.5))
    p2 = c + cmath.exp(1j * (math.pi + 0.5))
    arc = GeodesicArc(R, 0.0, p1, p2)
    t1 = arc_tangent_at(arc, p1)
    chord = p2 - p1
    assert t1[0] * chord.real + t1[1] * chord.imag > 0
    assert np.hypot(*t1) == pytest.approx(1.0)
    with pytest.raises(ConsistencyError):
        arc_tangent_at(arc, 0.1)
