"""Side-pairing generators of the genus-two Fuchsian group and their relation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .hypgeom import IDENTITY, _frobenius, MobiusMatrix, compose, inverse, mobius_apply
from .octagon import OctagonParams, build_geometry

__all__ = [
    "GeneratorSet",
    "normalization",
    "generators",
    "relation_word",
    "relation_defect",
    "side_pairing_defect",
    "conjugate",
]


@dataclass(frozen=True)
class GeneratorSet:
    g: tuple[MobiusMatrix, MobiusMatrix, MobiusMatrix, MobiusMatrix]
    g_inv: tuple[MobiusMatrix, MobiusMatrix, MobiusMatrix, MobiusMatrix]
    N: float


def _normalization(a, at):
    c = np.cos(at)
    radicand = (1 - a * a) * (2 * a * a * c * c - 1)
    if radicand <= 0:
        raise DomainError(f"normalization radicand {float(radicand)!r} <= 0")
    return -c / np.sqrt(radicand)


def normalization(p: OctagonParams) -> float:
    """The (negative) scalar prefactor shared by g0 and g1."""
    p.validate()
    return float(_normalization(p.a, p.alpha_tilde))


def generators(p: OctagonParams) -> GeneratorSet:
    """Generators ``g_k`` mapping side ``s_{k+4}`` onto ``s_k``, with inverses.

    ``g0, g1`` are explicit; ``g2, g3`` are their conjugates by a quarter turn
    and each inverse is the conjugate by a half turn.  Entries are held as
    ``numpy.clongdouble``: near the corners of the region the eight-fold
    relation word amplifies double-precision rounding of the entries past 1e-10.
    """
    p.validate()
    a = np.longdouble(p.a)
    at = np.longdouble(p.alpha_tilde)
    n = _normalization(a, at)
    t = np.tan(at)
    i = np.clongdouble(1j)
    g0 = MobiusMatrix(n * a * (1 - t) + 0 * i, n * ((a * a - t) + i * (1 - a * a)))
    g1 = MobiusMatrix(n * a * (1 + t) + 0 * i, n * ((1 - a * a) + i * (a * a + t)))
    h = np.sqrt(np.longdouble(0.5))
    quarter = MobiusMatrix(h + i * h, 0 * i)
    half = MobiusMatrix(i, 0 * i)
    g2 = compose(compose(quarter, g0), inverse(quarter))
    g3 = compose(compose(quarter, g1), inverse(quarter))
    gs = (g0, g1, g2, g3)
    g_inv = tuple(compose(compose(half, g), inverse(half)) for g in gs)
    for g in gs + g_inv:
        g.check()
    return GeneratorSet(g=gs, g_inv=g_inv, N=float(n))


def relation_word(gs: GeneratorSet) -> MobiusMatrix:
    """The product ``g0 g1^-1 g2 g3^-1 g0^-1 g1 g2^-1 g3``."""
    g, gi = gs.g, gs.g_inv
    word = (g[0], gi[1], g[2], gi[3], gi[0], g[1], gi[2], g[3])
    out = IDENTITY
    for m in word:
        out = compose(out, m)
    return out


def relation_defect(gs: GeneratorSet) -> float:
    """Frobenius distance of the relation word from ``+-identity``."""
    w = relation_word(gs).as_array()
    eye = np.eye(2)
    return float(min(_frobenius(w - eye), _frobenius(w + eye)))


def side_pairing_defect(p: OctagonParams, gens: GeneratorSet | None = None) -> float:
    """Largest endpoint mismatch between ``g_k[s_{k+4}]`` and ``s_k``, k = 0..3.

    Endpoints are compared as unordered pairs. ``gens`` may be supplied to test
    a modified generator set.
    """
    geom = build_geometry(p)
    gs = gens if gens is not None else generators(p)
    worst = 0.0
    for k in range(4):
        src = geom.sides[k + 4]
        dst = geom.sides[k]
        z0 = mobius_apply(gs.g[k], src.start)
        z1 = mobius_apply(gs.g[k], src.end)
        d = min(
            max(abs(z0 - dst.start), abs(z1 - dst.end)),
            max(abs(z0 - dst.end), abs(z1 - dst.start)),
        )
        worst = max(worst, float(d))
    return worst


def conjugate(gs: GeneratorSet, gamma: MobiusMatrix) -> GeneratorSet:
    """Marking-equivalent generator set ``gamma g_k gamma^-1``."""
    gi = inverse(gamma)
    return GeneratorSet(
        g=tuple(compose(compose(gamma, g), gi) for g in gs.g),
        g_inv=tuple(compose(compose(gamma, g), gi) for g in gs.g_inv),
        N=gs.N,
    )
