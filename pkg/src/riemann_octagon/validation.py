"""Acceptance checks shared by the test-suite and ``riemann-octagon validate``.

Each check returns a :class:`CheckResult` holding the measured quantities and
the limits they were held to.  Limits come from :data:`TOLERANCES` and can be
overridden per run (tightening one to an impossible value is the negative
control for the validator itself).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np
from scipy import optimize

from . import dynamics as dyn
from . import orbits
from .fuchsian import generators, relation_defect, side_pairing_defect
from .octagon import P_REG, OctagonParams, angle_sum, perimeter
from .teichmuller import swapped_decomposition_density, wolpert_density_fd, wp_density

__all__ = [
    "CheckResult",
    "TOLERANCES",
    "LEVELS",
    "GOLDEN_A0_ERROR_P40",
    "CHECKS",
    "grid_points",
    "random_points",
    "run_check",
    "run_suite",
    "summary",
]

# |A0(40) - A_WP(40)| from a 40-digit tanh-sinh quadrature of both integrands.
GOLDEN_A0_ERROR_P40 = 1.3892997274899446

TOLERANCES: dict[str, float] = {
    "ac1.perimeter": 1e-3,
    "ac1.closed_form": 1e-12,
    "ac1.t_reg": 1e-12,
    "ac2.relation": 1e-10,
    "ac2.pairing": 1e-9,
    "ac3.angle_sum": 1e-8,
    "ac4.wolpert": 1e-6,
    "ac4.swapped": 1e-5,
    "ac5.spread": 1e-9,
    "ac6.dadp": 1e-6,
    "ac7.winding": 1e-8,
    "ac8.residual": 1e-9,
    "ac8.golden": 1e-6,
    "ac9.casimir": 1e-12,
    "ac9.h_closed": 1e-10,
    "ac9.h_rk4": 1e-8,
    "ac9.agree": 1e-6,
    "ac9.bounce": 1e-8,
    "ac10.alpha": 0.02,
    "ac10.a_threshold": 0.99,
    "ac12.bracket": 1e-4,
}

# sample sizes per validation level
LEVELS: dict[str, dict[str, int]] = {
    "fast": {"grid": 6, "random": 12, "sweep": 25, "pb_points": 2, "traj": 61, "ladder_m": 8},
    "full": {"grid": 20, "random": 50, "sweep": 100, "pb_points": 5, "traj": 181, "ladder_m": 20},
}

_PB_POINTS = [
    (0.8, math.pi / 3),
    (0.9, math.pi / 4 + 0.3),
    (0.78, math.pi / 4 - 0.2),
    (0.95, math.pi / 4 + 0.5),
    (0.85, math.pi / 4 - 0.45),
]


@dataclass
class CheckResult:
    key: str
    title: str
    passed: bool
    measured: dict[str, float] = field(default_factory=dict)
    limits: dict[str, float] = field(default_factory=dict)
    seconds: float = 0.0
    detail: str = ""

    def line(self) -> str:
        parts = []
        for name, value in self.measured.items():
            lim = self.limits.get(name)
            parts.append(f"{name}={value:.3g}" + (f" (limit {lim:.3g})" if lim is not None else ""))
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.key} {self.title}: " + ", ".join(parts) + f" [{self.seconds:.2f}s]"
        if self.detail:
            text += f" -- {self.detail}"
        return text

    def as_dict(self) -> dict:
        return {
            "key": self.key,
            "title": self.title,
            "passed": self.passed,
            "measured": {k: repr(float(v)) for k, v in self.measured.items()},
            "limits": {k: repr(float(v)) for k, v in self.limits.items()},
            "seconds": round(self.seconds, 3),
            "detail": self.detail,
        }


def grid_points(n: int) -> list[OctagonParams]:
    """``n x n`` interior grid of the region.

    ``alpha_tilde = (2t - 1) pi/4`` and ``a`` runs from the lower boundary
    ``1 / (sqrt(2) cos alpha_tilde)`` to 1 with ``t, s = (i + 1) / (n + 1)``.
    """
    pts = []
    for i in range(n):
        t = (i + 1) / (n + 1)
        at = (2 * t - 1) * math.pi / 4
        lo = 1.0 / (math.sqrt(2.0) * math.cos(at))
        for j in range(n):
            s = (j + 1) / (n + 1)
            pts.append(OctagonParams.from_tilde(lo + s * (1.0 - lo), at))
    return pts


def random_points(n: int, seed: int = 0, margin: float = 0.05) -> list[OctagonParams]:
    """Random interior points, kept ``margin`` away from the boundary in chart units."""
    rng = np.random.default_rng(seed)
    pts = []
    for t, s in rng.uniform(margin, 1.0 - margin, size=(n, 2)):
        at = (2 * t - 1) * math.pi / 4
        lo = 1.0 / (math.sqrt(2.0) * math.cos(at))
        pts.append(OctagonParams.from_tilde(lo + s * (1.0 - lo), at))
    return pts


def _verdict(key, title, measured, limits, detail=""):
    passed = all(measured[k] < limits[k] for k in limits if k in measured)
    return CheckResult(key, title, passed, measured, limits, detail=detail)


def check_ac1(tol, level):
    P = perimeter(OctagonParams.regular())
    closed = 8.0 * math.acosh(5.0 + 4.0 * math.sqrt(2.0))
    t_reg = math.sqrt(2.0 * math.sqrt(2.0) - 2.0)
    measured = {
        "perimeter_vs_24.4566": abs(P - 24.4566),
        "closed_form_rel": abs(P - closed) / closed,
        "t_of_p_vs_t_reg": abs(orbits.t_of_p(P) - t_reg),
    }
    limits = {
        "perimeter_vs_24.4566": tol["ac1.perimeter"],
        "closed_form_rel": tol["ac1.closed_form"],
        "t_of_p_vs_t_reg": tol["ac1.t_reg"],
    }
    return _verdict("AC-1", "regular-octagon constants", measured, limits, f"P_reg = {P!r}")


def check_ac2(tol, level):
    rel = pair = 0.0
    for p in grid_points(LEVELS[level]["grid"]):
        gs = generators(p)
        rel = max(rel, relation_defect(gs))
        pair = max(pair, side_pairing_defect(p, gs))
    return _verdict(
        "AC-2", "Fuchsian relation and side pairings",
        {"relation_defect": rel, "side_pairing_defect": pair},
        {"relation_defect": tol["ac2.relation"], "side_pairing_defect": tol["ac2.pairing"]},
    )


def check_ac3(tol, level):
    worst = max(abs(angle_sum(p) - 2.0 * math.pi) for p in grid_points(LEVELS[level]["grid"]))
    return _verdict("AC-3", "angle sum 2 pi", {"angle_sum_err": worst}, {"angle_sum_err": tol["ac3.angle_sum"]})


def check_ac4(tol, level):
    want = LEVELS[level]["random"]
    wol = swp = 0.0
    used = 0
    for p in random_points(4 * want, seed=4):
        if used == want:
            break
        q = p.swapped()
        if not (q.in_region() and OctagonParams(q.a + 1e-5, q.alpha).in_region()):
            continue
        W = wp_density(p)
        wol = max(wol, abs(wolpert_density_fd(p) - W) / abs(W))
        swp = max(swp, abs(swapped_decomposition_density(p) - W) / abs(W))
        used += 1
    detail = "" if used == want else f"only {used} admissible points"
    return _verdict(
        "AC-4", "Wolpert assembly of the WP density",
        {"fd_rel": wol, "swapped_rel": swp},
        {"fd_rel": tol["ac4.wolpert"], "swapped_rel": tol["ac4.swapped"]},
        detail,
    )


def check_ac5(tol, level):
    worst = 0.0
    for P in range(25, 42, 2):
        T = orbits.t_of_p(P)
        vals = [perimeter(OctagonParams.from_tilde(*orbits.orbit_point(T, 2 * math.pi * k / 64))) for k in range(64)]
        worst = max(worst, (max(vals) - min(vals)) / P)
    return _verdict("AC-5", "isoperimetric orbits", {"rel_spread": worst}, {"rel_spread": tol["ac5.spread"]})


def check_ac6(tol, level):
    worst = 0.0
    h = 1e-3
    for P in (25.5, 28.0, 30.0, 35.0, 40.0):
        fd = (orbits.wp_area_numeric(P + h) - orbits.wp_area_numeric(P - h)) / (2 * h)
        worst = max(worst, abs(orbits.dA_dP(P) / fd - 1.0))
    return _verdict("AC-6", "elliptic dA/dP vs quadrature", {"rel_err": worst}, {"rel_err": tol["ac6.dadp"]})


def check_ac7(tol, level):
    wind = max(abs(orbits.phase_winding(P) - 2 * math.pi) for P in range(25, 42, 2))
    a_reg = orbits.wp_area_numeric(P_REG)
    sweep = np.linspace(P_REG, 60.0, LEVELS[level]["sweep"])
    areas = [orbits.wp_area_numeric(P) for P in sweep]
    increasing = bool(np.all(np.diff(areas) > 0))
    res = _verdict("AC-7", "action-angle normalisation", {"winding_err": wind, "area_at_P_reg": abs(a_reg)},
                   {"winding_err": tol["ac7.winding"], "area_at_P_reg": 1e-300})
    res.passed = res.passed and increasing
    if not increasing:
        res.detail = "area is not strictly increasing on the sweep"
    return res


def check_ac8(tol, level):
    Ps = (30, 32, 34, 36, 38, 40)
    rel, resid = [], 0.0
    for P in Ps:
        a0, im = orbits.wp_area_dilog(P, return_residual=True)
        A = orbits.wp_area_numeric(P)
        rel.append(abs(a0 - A) / A)
        resid = max(resid, im)
    decreasing = all(x > y for x, y in zip(rel, rel[1:]))
    abs40 = abs(orbits.wp_area_dilog(40) - orbits.wp_area_numeric(40))
    res = _verdict(
        "AC-8", "log-order dilog approximation",
        {"imag_residual": resid, "golden_rel": abs(abs40 / GOLDEN_A0_ERROR_P40 - 1.0)},
        {"imag_residual": tol["ac8.residual"], "golden_rel": tol["ac8.golden"]},
        "relative errors " + ", ".join(f"{x:.4f}" for x in rel),
    )
    res.passed = res.passed and decreasing
    if not decreasing:
        res.detail += "; not strictly decreasing"
    return res


def check_ac9(tol, level):
    rng = np.random.default_rng(9)
    cas = 0.0
    for _ in range(20):
        J = rng.uniform(0.2, 5.0)
        C = rng.uniform(0.0, J * J)
        M = dyn.observables(J, rng.uniform(-math.pi, math.pi), C).matrix
        for tau in rng.uniform(-5.0, 5.0, size=3):
            Mt = dyn.boost_conjugate(M, tau)
            cas = max(cas, float(abs(Mt[0, 0] * Mt[1, 1] - Mt[0, 1] * Mt[1, 0] - C)))
    taus = np.linspace(-3.0, 3.0, 2001)
    h_cf = h_rk = agree = bnc = 0.0
    for _ in range(10):
        J0 = rng.uniform(0.2, 3.0)
        Phi0 = rng.uniform(0.05, math.pi - 0.05) * rng.choice((-1, 1))
        for C in (0.0, 0.5 * J0 * J0):
            E = dyn.hamiltonian(J0, Phi0, C)
            J, Phi = dyn.evolve_closed_form(J0, Phi0, None, C, taus)
            H = np.sqrt(J * J - C) * np.sin(Phi)
            h_cf = max(h_cf, float(np.max(np.abs(H - E))))
            states = dyn.evolve_rk4(J0, Phi0, None, C, (-3.0, 3.0), 2000)
            Jr = np.array([s.J for s in states])
            Pr = np.array([s.Phi for s in states])
            h_rk = max(h_rk, max(abs(s.H - E) for s in states))
            agree = max(agree, float(np.max(np.abs(Jr - J))), float(np.max(np.abs(Pr - Phi))))
            # extremum located independently as the root of dJ/dtau
            r = math.sqrt(J0 * J0 - C)
            dJ = lambda t: J0 * math.sinh(t) + r * math.cosh(t) * math.cos(Phi0)
            t_root = optimize.brentq(dJ, -30.0, 30.0, xtol=1e-15, rtol=1e-15)
            b = dyn.bounce(J0, Phi0, None, C)
            J_root = dyn.evolve_closed_form(J0, Phi0, None, C, t_root)[0]
            bnc = max(bnc, abs(b.tau - t_root), abs(b.J - J_root))
    return _verdict(
        "AC-9", "boost dynamics",
        {"casimir": cas, "H_closed": h_cf, "H_rk4": h_rk, "closed_vs_rk4": agree, "bounce": bnc},
        {"casimir": tol["ac9.casimir"], "H_closed": tol["ac9.h_closed"], "H_rk4": tol["ac9.h_rk4"],
         "closed_vs_rk4": tol["ac9.agree"], "bounce": tol["ac9.bounce"]},
    )


def check_ac10(tol, level):
    taus = np.linspace(-5.5, 3.5, LEVELS[level]["traj"])
    traj = dyn.trajectory_in_A(0.8, math.pi / 3, 0.0, taus)
    st = traj.states
    J = np.array([s.J for s in st])
    interior_min = [i for i in range(1, len(J) - 1) if J[i] < J[i - 1] and J[i] < J[i + 1]]
    notes = []
    ok = len(interior_min) == 1 and not traj.truncated
    if len(interior_min) != 1:
        notes.append(f"{len(interior_min)} interior minima of J")
    if traj.truncated:
        notes.append(f"truncated: {traj.diagnostic}")
    half_pi = traj.eps * 0.5 * math.pi
    phi_cross = 0.0
    if interior_min:
        i = interior_min[0]
        crossed = (st[i - 1].Phi - half_pi) * (st[i + 1].Phi - half_pi) <= 0
        aa = orbits.action_angle(OctagonParams(0.8, math.pi / 3))
        b = dyn.bounce(aa.J, aa.Phi, aa.eps)
        phi_cross = abs(dyn.evolve_closed_form(aa.J, aa.Phi, aa.eps, 0.0, b.tau)[1] - half_pi)
        if not crossed:
            ok = False
            notes.append("Phi does not cross eps pi/2 at the minimum of J")
    sheets = {1 if s.alpha > math.pi / 4 else -1 for s in st if s.alpha != math.pi / 4}
    if sheets != {traj.eps}:
        ok = False
        notes.append("trajectory changes sheet")
    end_dev = 0.0
    for s in (st[0], st[-1]):
        if s.a > tol["ac10.a_threshold"]:
            end_dev = max(end_dev, abs(s.alpha - math.pi / 4))
    notes.append(f"endpoints a = {st[0].a:.5f}, {st[-1].a:.5f}")
    res = _verdict(
        "AC-10", "bounce trajectory in the region",
        {"endpoint_alpha_dev": end_dev, "phi_at_bounce": phi_cross, "H_residual": traj.max_residual},
        {"endpoint_alpha_dev": tol["ac10.alpha"], "phi_at_bounce": 1e-12, "H_residual": 1e-6},
        "; ".join(notes),
    )
    res.passed = res.passed and ok
    return res


def check_ac11(tol, level):
    import sympy

    n_max = 20
    rows_exact = all(dyn.area_spectrum(n) == 4 * math.pi * (n + 0.5) for n in range(n_max + 1))
    spacing = max(abs(dyn.area_spectrum(n + 1) - dyn.area_spectrum(n) - 4 * math.pi) for n in range(n_max))
    L = dyn.rep_ladder(sympy.Rational(1, 2), LEVELS[level]["ladder_m"], exact=True)
    k = len(L.m) - 1  # interior: drop the truncated top state
    comm = (L.Jplus * L.Jminus - L.Jminus * L.Jplus + 2 * L.J0)[:k, :k]
    cas = (L.C - sympy.Rational(-1, 4) * sympy.eye(len(L.m)))[:k, :k]
    exact = comm.is_zero_matrix and cas.is_zero_matrix
    res = _verdict("AC-11", "spectrum and ladder algebra", {"spacing_err": spacing}, {"spacing_err": 1e-12})
    res.passed = res.passed and rows_exact and bool(exact)
    if not (rows_exact and exact):
        res.detail = "exact identities violated"
    return res


def check_ac12(tol, level):
    jphi = jpm = 0.0
    for a, alpha in _PB_POINTS[: LEVELS[level]["pb_points"]]:
        p = OctagonParams(a, alpha)
        jphi = max(jphi, abs(dyn.poisson_bracket_fd(dyn.field_J, dyn.field_Phi, p) - 1.0))
        target = 2j * dyn.field_J(p.a, p.alpha_tilde)
        jpm = max(jpm, abs(dyn.poisson_bracket_fd(dyn.field_Jplus, dyn.field_Jminus, p) - target))
    return _verdict(
        "AC-12", "Poisson algebra",
        {"J_Phi": jphi, "Jp_Jm": jpm},
        {"J_Phi": tol["ac12.bracket"], "Jp_Jm": tol["ac12.bracket"]},
    )


CHECKS: dict[str, Callable] = {
    "AC-1": check_ac1,
    "AC-2": check_ac2,
    "AC-3": check_ac3,
    "AC-4": check_ac4,
    "AC-5": check_ac5,
    "AC-6": check_ac6,
    "AC-7": check_ac7,
    "AC-8": check_ac8,
    "AC-9": check_ac9,
    "AC-10": check_ac10,
    "AC-11": check_ac11,
    "AC-12": check_ac12,
}


def run_check(key: str, level: str = "full", overrides: Mapping[str, float] | None = None) -> CheckResult:
    """Run one acceptance check; exceptions count as failures."""
    if level not in LEVELS:
        raise ValueError(f"unknown level {level!r}")
    tol = dict(TOLERANCES)
    for name, value in (overrides or {}).items():
        if name not in tol:
            raise KeyError(f"unknown tolerance {name!r}")
        tol[name] = float(value)
    start = time.perf_counter()
    try:
        res = CHECKS[key](tol, level)
    except Exception as exc:  # a crash is a failed check, not a crashed suite
        res = CheckResult(key, "error", False, detail=f"{type(exc).__name__}: {exc}")
    res.seconds = time.perf_counter() - start
    return res


def run_suite(level: str = "fast", overrides: Mapping[str, float] | None = None) -> list[CheckResult]:
    return [run_check(key, level, overrides) for key in CHECKS]


def summary(results: list[CheckResult], level: str) -> dict:
    return {
        "level": level,
        "passed": all(r.passed for r in results),
        "n_passed": sum(r.passed for r in results),
        "n_checks": len(results),
        "checks": [r.as_dict() for r in results],
    }
