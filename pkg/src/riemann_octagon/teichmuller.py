"""Fenchel-Nielsen coordinates and the Weil-Petersson density on the region.

Lengths and twists of one pants decomposition are closed-form functions of
``(a, alpha_tilde)``.  The WP form ``1/2 sum dl_k ^ dtau_k`` pulled back to
the chart becomes ``W(a, alpha_tilde) da ^ dalpha_tilde``; the finite-difference
assemblies below are the internal check on that closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, RegionError
from .octagon import OctagonParams, in_region
from .specfun import arccosh_stable

__all__ = [
    "FNCoords",
    "fn_coordinates",
    "fn_coordinates_swapped",
    "wp_density",
    "wolpert_density_fd",
    "swapped_decomposition_density",
    "FD_STEP",
]

FD_STEP = 1e-6


@dataclass(frozen=True)
class FNCoords:
    lengths: tuple[float, float, float]
    twists: tuple[float, float, float]

    @property
    def twist_angles(self) -> tuple[float, float, float]:
        """``theta_k = 2 pi tau_k / l_k`` (not reduced modulo 2 pi)."""
        return tuple(2.0 * math.pi * t / l for t, l in zip(self.twists, self.lengths))

    def reduced_twist_angles(self) -> tuple[float, float, float]:
        """Twist angles reduced to ``[0, 2 pi)``; a full Dehn twist gives the same surface."""
        return tuple(th % (2.0 * math.pi) for th in self.twist_angles)


def _fn(a: float, at: float, signed: bool = True) -> FNCoords:
    a2 = a * a
    if a2 / (1.0 - a2) < 1.0:
        raise DomainError(f"a = {a!r} gives arccosh argument a^2/(1-a^2) < 1")
    b2 = 1.0 / (2.0 * a2 * math.cos(at) ** 2)
    l12 = 2.0 * arccosh_stable(a2 / (1.0 - a2))
    l3 = 4.0 * math.atanh(a)
    # arccosh[(2a^2-1)/(a^2(1-b^2)) - 1] == 2 asinh(|tan at| / (a sqrt(2(1-b^2))))
    tw = 2.0 * math.asinh(math.tan(at) / (a * math.sqrt(2.0 * (1.0 - b2))))
    if not signed:
        tw = abs(tw)
    return FNCoords((l12, l12, l3), (tw, tw, 0.5 * l3))


def fn_coordinates(p: OctagonParams, signed: bool = True) -> FNCoords:
    """Lengths and twists of the three pants curves.

    The twist of curves 1 and 2 carries the sheet sign ``eps`` by default;
    ``signed=False`` returns the bare arccosh value, which is even in
    ``alpha_tilde`` and therefore not a smooth coordinate across the
    symmetry line.
    """
    p.validate()
    return _fn(p.a, p.alpha_tilde, signed)


def fn_coordinates_swapped(p: OctagonParams) -> FNCoords:
    """Lengths and twists of the alternative decomposition: ``a -> b``, ``alpha_tilde -> -alpha_tilde``."""
    p.validate()
    q = p.swapped()
    if not q.in_region():
        raise RegionError(f"swapped point (b={q.a!r}, alpha_tilde={q.alpha_tilde!r}) leaves the region")
    return _fn(q.a, q.alpha_tilde)


def wp_density(p: OctagonParams) -> float:
    """Coefficient ``W`` of ``da ^ dalpha_tilde`` in the Weil-Petersson form."""
    p.validate()
    a, c = p.a, math.cos(p.alpha_tilde)
    return 8.0 * a / ((1.0 - a * a) * (2.0 * a * a * c * c - 1.0))


def _wedge_density(coords: Callable[[float, float], FNCoords], a: float, at: float, h: float) -> float:
    ha = h * max(abs(a), 1.0)
    ht = h * max(abs(at), 1.0)
    for da, dt in ((ha, 0.0), (-ha, 0.0), (0.0, ht), (0.0, -ht)):
        if not in_region(a + da, at + dt + math.pi / 4):
            raise RegionError("finite-difference stencil leaves the region")
    ap, am = coords(a + ha, at), coords(a - ha, at)
    tp, tm = coords(a, at + ht), coords(a, at - ht)
    dl_da = (np.array(ap.lengths) - np.array(am.lengths)) / (2 * ha)
    dl_dt = (np.array(tp.lengths) - np.array(tm.lengths)) / (2 * ht)
    dtw_da = (np.array(ap.twists) - np.array(am.twists)) / (2 * ha)
    dtw_dt = (np.array(tp.twists) - np.array(tm.twists)) / (2 * ht)
    return 0.5 * float(np.sum(dl_da * dtw_dt - dl_dt * dtw_da))


def wolpert_density_fd(p: OctagonParams, h: float = FD_STEP) -> float:
    """``1/2 sum dl_k ^ dtau_k`` assembled from central differences of :func:`fn_coordinates`."""
    p.validate()
    return _wedge_density(lambda a, at: _fn(a, at), p.a, p.alpha_tilde, h)


def swapped_decomposition_density(p: OctagonParams, h: float = FD_STEP) -> float:
    """WP density from the alternative decomposition, pulled back to ``(a, alpha_tilde)``.

    The swapped lengths/twists are composed with ``(a, at) -> (b(a, at), -at)``
    and differentiated numerically, so the chain rule is applied implicitly.
    """
    fn_coordinates_swapped(p)  # region check of the swapped point

    def swapped(a: float, at: float) -> FNCoords:
        b = 1.0 / (math.sqrt(2.0) * a * math.cos(at))
        return _fn(b, -at)

    return _wedge_density(swapped, p.a, p.alpha_tilde, h)
