import math

import mpmath as mp
import pytest
from hypothesis import given

from conftest import chart_point, region_points
from riemann_octagon.errors import RegionError
from riemann_octagon.hypgeom import hyp_distance
from riemann_octagon.octagon import (
    A_REG,
    P_REG,
    OctagonParams,
    angle_sum,
    arc_radii_angles,
    build_geometry,
    derived_b_beta,
    in_region,
    inner_angles,
    perimeter,
    perimeter_ab,
    region_violation,
    side_lengths,
)


def test_regular_octagon():
    p = OctagonParams.regular()
    b, beta = derived_b_beta(p)
    assert b == pytest.approx(A_REG, rel=1e-15)
    assert beta == pytest.approx(math.pi / 4, rel=1e-14)
    assert perimeter(p) == pytest.approx(float(8 * mp.acosh(5 + 4 * mp.sqrt(2))), rel=1e-14)
    assert P_REG == pytest.approx(24.457134711695968, rel=1e-15)
    assert all(x == pytest.approx(math.pi / 4, rel=1e-12) for x in inner_angles(build_geometry(p)))
    r_plus, r_minus, _, _ = arc_radii_angles(p)
    assert r_plus == pytest.approx(r_minus, rel=1e-15)


@pytest.mark.parametrize(
    "a, alpha, fragment",
    [
        (0.5, math.pi / 4, "1/(sqrt(2) cos"),
        (1.0, math.pi / 4, "a < 1"),
        (0.9, math.pi / 2 + 0.01, "|alpha - pi/4|"),
        (0.9, -0.01, "|alpha - pi/4|"),
    ],
)
def test_region_violations_name_the_inequality(a, alpha, fragment):
    msg = region_violation(a, alpha)
    assert msg is not None and fragment in msg
    assert not in_region(a, alpha)
    with pytest.raises(RegionError, match="violated"):
        perimeter(OctagonParams(a, alpha))


def test_sheet_label():
    assert OctagonParams(0.9, math.pi / 3).eps == 1
    assert OctagonParams(0.9, math.pi / 6).eps == -1
    assert OctagonParams.regular().eps == 1


@given(region_points())
def test_vertices_lie_on_their_arcs_and_arcs_meet_boundary_orthogonally(p):
    geom = build_geometry(p)
    for arc in geom.sides:
        assert max(arc.endpoint_residuals()) < 1e-10
        assert abs(arc.boundary_orthogonality()) < 1e-10


@given(region_points())
def test_perimeter_is_sum_of_side_lengths(p):
    total = math.fsum(side_lengths(build_geometry(p)))
    assert perimeter(p) == pytest.approx(total, rel=1e-10)


@given(region_points())
def test_perimeter_symmetric_in_the_two_radii(p):
    assert perimeter_ab(p.a, p.b) == pytest.approx(perimeter_ab(p.b, p.a), rel=1e-14)


@given(region_points())
def test_perimeter_is_at_least_regular(p):
    assert perimeter(p) >= P_REG - 1e-9


@given(region_points())
def test_angles_at_a_vertices_equal_beta(p):
    geom = build_geometry(p)
    ang = inner_angles(geom)
    for k in range(0, 8, 2):
        assert ang[k] == pytest.approx(geom.beta, rel=1e-9)
    assert math.fsum(ang) == pytest.approx(2 * math.pi, abs=1e-10)


def test_angle_sum_on_grid():
    worst = max(abs(angle_sum(chart_point((i + 1) / 21, (j + 1) / 21)) - 2 * math.pi)
                for i in range(20) for j in range(20))
    assert worst < 1e-8


def test_swapped_point():
    p = OctagonParams(0.85, math.pi / 4 + 0.1)
    q = p.swapped()
    assert q.a == pytest.approx(p.b)
    assert q.alpha_tilde == pytest.approx(-p.alpha_tilde)
    # b(b, -alpha_tilde) == a: the swap is an involution
    assert q.b == pytest.approx(p.a, rel=1e-14)
