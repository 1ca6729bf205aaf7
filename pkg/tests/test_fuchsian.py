import math

import numpy as np
import pytest
from hypothesis import given

from conftest import chart_point, region_points
from riemann_octagon.fuchsian import (
    GeneratorSet,
    conjugate,
    generators,
    normalization,
    relation_defect,
    relation_word,
    side_pairing_defect,
)
from riemann_octagon.hypgeom import MobiusMatrix, mobius_apply, rotation
from riemann_octagon.octagon import OctagonParams, build_geometry

GRID = [chart_point((i + 1) / 21, (j + 1) / 21) for i in range(20) for j in range(20)]


def test_relation_and_pairing_on_grid():
    rel = pair = 0.0
    for p in GRID:
        gs = generators(p)
        rel = max(rel, relation_defect(gs))
        pair = max(pair, side_pairing_defect(p, gs))
    assert rel < 1e-10
    assert pair < 1e-9


@given(region_points())
def test_generators_are_su11_and_map_sides(p):
    gs = generators(p)
    geom = build_geometry(p)
    for k, g in enumerate(gs.g):
        assert abs(g.det - 1) < 1e-12
        src, dst = geom.sides[k + 4], geom.sides[k]
        ends = sorted((mobius_apply(g, src.start), mobius_apply(g, src.end)), key=lambda z: z.real)
        want = sorted((dst.start, dst.end), key=lambda z: z.real)
        assert abs(ends[0] - want[0]) < 1e-9 and abs(ends[1] - want[1]) < 1e-9


def test_inverse_generators():
    gs = generators(OctagonParams(0.8, math.pi / 3))
    for g, gi in zip(gs.g, gs.g_inv):
        prod = (g @ gi).as_array().astype(complex)
        assert np.allclose(prod, np.eye(2), atol=1e-13)


def test_relation_is_conjugation_invariant():
    gs = generators(OctagonParams(0.85, math.pi / 4 + 0.2))
    for gamma in (rotation(0.7), MobiusMatrix(math.cosh(0.4) + 0j, math.sinh(0.4) * (0.6 + 0.8j))):
        assert relation_defect(conjugate(gs, gamma)) < 1e-10


def test_normalization_is_negative():
    assert normalization(OctagonParams(0.8, math.pi / 3)) < 0
    assert normalization(OctagonParams.regular()) < 0


def test_relation_word_is_plus_minus_identity():
    w = relation_word(generators(OctagonParams(0.9, math.pi / 4 - 0.3))).as_array().astype(complex)
    assert min(np.abs(w - np.eye(2)).max(), np.abs(w + np.eye(2)).max()) < 1e-12


def test_tampered_generator_is_detected():
    # negative control: perturb g0 and both defects must grow
    p = OctagonParams(0.8, math.pi / 3)
    gs = generators(p)
    bad = rotation(1e-3) @ gs.g[0]
    tampered = GeneratorSet((bad,) + gs.g[1:], gs.g_inv, gs.N)
    assert side_pairing_defect(p, tampered) > 1e-5
    assert relation_defect(tampered) > 1e-5


def _trace_length(*mats):
    m = np.eye(2, dtype=complex)
    for x in mats:
        m = m @ x.as_array().astype(complex)
    return 2 * math.acosh(abs(np.trace(m)) / 2)


@given(region_points(margin=0.02))
def test_pants_curves_as_group_words(p):
    # exploratory: the three pants lengths are translation lengths of short words
    from riemann_octagon.teichmuller import fn_coordinates

    g, gi = generators(p).g, generators(p).g_inv
    lengths = fn_coordinates(p).lengths
    assert _trace_length(g[0], gi[1]) == pytest.approx(lengths[0], rel=1e-9)
    assert _trace_length(g[2], gi[3]) == pytest.approx(lengths[1], rel=1e-9)
    assert _trace_length(gi[0], g[1], gi[2], g[3]) == pytest.approx(lengths[2], rel=1e-9)
