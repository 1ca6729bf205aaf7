"""su(1,1) observables on the action-angle chart and the boost-generated evolution.

``J0 = J`` and ``J+- = sqrt(J^2 - C) exp(-+ i Phi)`` close an su(1,1) Poisson
algebra.  A boost ``U_tau`` acts on ``M = [[J0, J+], [J-, J0]]`` by
conjugation, which gives closed-form trajectories ``J(tau), Phi(tau)``; the
same motion follows from Hamilton's equations for ``H = sqrt(J^2 - C) sin Phi``.
Trajectories are mapped back to octagon parameters through the orbit
inversions in :mod:`riemann_octagon.orbits`.

Poisson brackets on the ``(a, alpha_tilde)`` chart use
``{f, g} = 2 (d_at f d_a g - d_a f d_at g) / W`` with ``W`` the WP density;
this normalisation gives ``{J, Phi} = 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .errors import (
    DomainError,
    NumericError,
    OctagonError,
    SingularStateError,
    UnphysicalStateError,
)
from .hypgeom import MobiusMatrix
from .octagon import P_REG, OctagonParams, perimeter
from .orbits import action_angle, action_J, angle_Phi, invert_action, invert_angle
from .teichmuller import wp_density

__all__ = [
    "SuObservables",
    "EvolutionState",
    "Bounce",
    "ActionTable",
    "Trajectory",
    "LadderMatrices",
    "observables",
    "boost_matrix",
    "boost_conjugate",
    "hamiltonian",
    "evolve_closed_form",
    "evolve_rk4",
    "evolve_rk4_at",
    "bounce",
    "action_table",
    "trajectory_in_A",
    "area_spectrum",
    "rep_ladder",
    "poisson_bracket_fd",
    "field_J",
    "field_Phi",
    "field_Jplus",
    "field_Jminus",
    "PB_STEP",
    "P_MAX_DEFAULT",
]

PB_STEP = 1e-5
P_MAX_DEFAULT = 80.0
_SINGULAR_TOL = 1e-12
_H_RESIDUAL_MAX = 1e-6


def _radial(J: float, C: float) -> float:
    """``sqrt(J^2 - C)`` after checking ``J^2 >= C >= 0``."""
    if C < 0:
        raise UnphysicalStateError(f"Casimir must be non-negative, got C = {C!r}")
    r2 = J * J - C
    if r2 < 0:
        raise UnphysicalStateError(f"J^2 < C: J = {J!r}, C = {C!r}")
    return math.sqrt(r2)


@dataclass(frozen=True)
class SuObservables:
    J0: float
    Jplus: complex
    Jminus: complex
    C: float

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.J0, self.Jplus], [self.Jminus, self.J0]], dtype=complex)

    @property
    def casimir(self) -> float:
        """``J0^2 - J+ J-`` recomputed from the components."""
        return float((self.J0 * self.J0 - self.Jplus * self.Jminus).real)


def observables(J: float, Phi: float, C: float = 0.0) -> SuObservables:
    """Observables ``(J0, J+, J-)`` of the state ``(J, Phi)`` with Casimir ``C``.

    Raises:
        UnphysicalStateError: if ``J^2 < C`` or ``C < 0``.
    """
    r = _radial(J, C)
    jp = r * complex(math.cos(Phi), -math.sin(Phi))
    return SuObservables(J0=float(J), Jplus=jp, Jminus=jp.conjugate(), C=float(C))


def boost_matrix(tau: float) -> MobiusMatrix:
    """``U_tau = [[cosh(tau/2), sinh(tau/2)], [sinh(tau/2), cosh(tau/2)]]``."""
    return MobiusMatrix(complex(math.cosh(0.5 * tau)), complex(math.sinh(0.5 * tau)))


def boost_conjugate(M: np.ndarray, tau: float) -> np.ndarray:
    """``U_tau M U_tau^dagger``, evaluated in extended precision.

    Entries grow like ``e^|tau|``, so the determinant of a double-precision
    result would lose several digits to cancellation.
    """
    c = np.cosh(np.longdouble(tau) / 2)
    s = np.sinh(np.longdouble(tau) / 2)
    U = np.array([[c, s], [s, c]], dtype=np.clongdouble)
    M = np.asarray(M).astype(np.clongdouble)
    return U @ M @ U.conj().T


def hamiltonian(J: float, Phi: float, C: float = 0.0) -> float:
    """``H = sqrt(J^2 - C) sin(Phi)``."""
    return _radial(J, C) * math.sin(Phi)


def _sheet(Phi: float, eps: int | None) -> int:
    if eps is None:
        return -1 if Phi < 0 else 1
    if eps not in (1, -1):
        raise DomainError(f"sheet label must be +1 or -1, got {eps!r}")
    return eps


def evolve_closed_form(J0: float, Phi0: float, eps: int | None, C: float, tau):
    """Boost trajectory ``(J(tau), Phi(tau))`` from ``(J0, Phi0)`` at ``tau = 0``.

    ``Phi(tau) = eps * atan2(|H|, X)`` with
    ``X = J0 sinh(tau) + sqrt(J0^2 - C) cosh(tau) cos(Phi0)``.  Because
    ``X^2 + H^2 = J(tau)^2 - C`` this is the arccos form, without its loss of
    accuracy near ``Phi = 0, pi``.  ``tau`` may be a scalar or an array.

    Raises:
        UnphysicalStateError: if ``J0^2 < C``.
        NumericError: if ``J(tau)^2 < C`` is reached through rounding.
    """
    eps = _sheet(Phi0, eps)
    r = _radial(J0, C)
    tau_arr = np.asarray(tau, dtype=float)
    ch, sh = np.cosh(tau_arr), np.sinh(tau_arr)
    J = J0 * ch + r * sh * math.cos(Phi0)
    X = J0 * sh + r * ch * math.cos(Phi0)
    h = abs(r * math.sin(Phi0))
    if np.any(J * J - C < -1e-12 * np.maximum(J * J, 1.0)):
        raise NumericError("closed-form trajectory reached J^2 < C")
    Phi = eps * np.arctan2(h, X)
    if tau_arr.ndim == 0:
        return float(J), float(Phi)
    return J, Phi


@dataclass(frozen=True)
class EvolutionState:
    tau: float
    J: float
    Phi: float
    H: float
    E: float
    a: float | None = None
    alpha: float | None = None


def _rhs(J: float, Phi: float, C: float) -> tuple[float, float]:
    r2 = J * J - C
    if r2 < _SINGULAR_TOL:
        raise ValueError
    r = math.sqrt(r2)
    return r * math.cos(Phi), -J * math.sin(Phi) / r


def _rk4_step(J: float, Phi: float, C: float, h: float) -> tuple[float, float]:
    k1 = _rhs(J, Phi, C)
    k2 = _rhs(J + 0.5 * h * k1[0], Phi + 0.5 * h * k1[1], C)
    k3 = _rhs(J + 0.5 * h * k2[0], Phi + 0.5 * h * k2[1], C)
    k4 = _rhs(J + h * k3[0], Phi + h * k3[1], C)
    J += h / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
    Phi += h / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
    return J, Phi


def _rk4_leg(J, Phi, C, E, h, n, out):
    for k in range(1, n + 1):
        J, Phi = _rk4_step(J, Phi, C, h)
        out.append(EvolutionState(k * h, J, Phi, hamiltonian(J, Phi, C), E))
    return out


def evolve_rk4(
    J0: float,
    Phi0: float,
    eps: int | None,
    C: float,
    tau_span: tuple[float, float],
    steps: int,
) -> list[EvolutionState]:
    """Fixed-step classical Runge-Kutta integration of Hamilton's equations.

    Integration starts at ``tau = 0`` and runs outward to both ends of
    ``tau_span``; the ``steps`` intervals are split between the two legs in
    proportion to their length (so ``0`` must lie in the span).  States are
    returned in increasing ``tau``.

    Raises:
        UnphysicalStateError: unless ``J0^2 > C``.
        SingularStateError: if ``J^2 - C`` falls below 1e-12; ``partial``
            holds the states computed so far.
    """
    eps = _sheet(Phi0, eps)
    t_lo, t_hi = map(float, tau_span)
    if not t_lo <= 0.0 <= t_hi or t_lo == t_hi:
        raise DomainError(f"tau_span must contain 0 and be non-degenerate, got {tau_span!r}")
    if steps < 2:
        raise DomainError("steps must be >= 2")
    if not J0 * J0 - C > 0:
        raise UnphysicalStateError(f"integration needs J^2 > C strictly (J = {J0!r}, C = {C!r})")
    E = hamiltonian(J0, Phi0, C)
    n_hi = round(steps * t_hi / (t_hi - t_lo))
    n_lo = steps - n_hi
    start = EvolutionState(0.0, float(J0), float(Phi0), E, E)
    back: list[EvolutionState] = []
    fwd: list[EvolutionState] = []
    try:
        if n_lo:
            _rk4_leg(J0, Phi0, C, E, t_lo / n_lo, n_lo, back)
        if n_hi:
            _rk4_leg(J0, Phi0, C, E, t_hi / n_hi, n_hi, fwd)
    except ValueError:
        partial = back[::-1] + [start] + fwd
        raise SingularStateError("J^2 - C vanished during integration", partial) from None
    return back[::-1] + [start] + fwd


def evolve_rk4_at(
    J0: float,
    Phi0: float,
    eps: int | None,
    C: float,
    taus,
    max_step: float = 3e-3,
) -> tuple[np.ndarray, np.ndarray]:
    """RK4 solution sampled at arbitrary times ``taus``.

    Integrates outward from ``tau = 0`` in both directions, with steps no
    longer than ``max_step`` and landing exactly on every requested time.

    Raises:
        UnphysicalStateError: unless ``J0^2 > C``.
        SingularStateError: if ``J^2 - C`` falls below 1e-12.
    """
    _sheet(Phi0, eps)
    if not J0 * J0 - C > 0:
        raise UnphysicalStateError(f"integration needs J^2 > C strictly (J = {J0!r}, C = {C!r})")
    taus = np.asarray(taus, dtype=float)
    J_out = np.empty_like(taus)
    Phi_out = np.empty_like(taus)
    for sign in (1.0, -1.0):
        idx = [i for i in np.argsort(sign * taus) if sign * taus[i] >= 0]
        J, Phi, t = float(J0), float(Phi0), 0.0
        for i in idx:
            span = taus[i] - t
            n = max(1, math.ceil(abs(span) / max_step)) if span != 0 else 0
            try:
                for _ in range(n):
                    J, Phi = _rk4_step(J, Phi, C, span / n)
            except ValueError:
                raise SingularStateError(f"J^2 - C vanished before tau = {taus[i]!r}") from None
            t = taus[i]
            J_out[i], Phi_out[i] = J, Phi
    return J_out, Phi_out


@dataclass(frozen=True)
class Bounce:
    tau: float
    J: float
    Phi: float


def bounce(J0: float, Phi0: float, eps: int | None, C: float = 0.0) -> Bounce:
    """Time, action and angle at the minimum of ``J(tau)``.

    Raises:
        DomainError: if the state never bounces (``C = 0`` and ``Phi0`` in
            ``{0, pi}``, where the arctanh argument reaches 1).
    """
    eps = _sheet(Phi0, eps)
    r = _radial(J0, C)
    if J0 == 0.0:
        raise DomainError("the state J = 0 has no bounce")
    arg = r / J0 * math.cos(Phi0)
    if abs(arg) >= 1.0:
        raise DomainError(f"degenerate state: bounce argument {arg!r} has modulus >= 1")
    tau_b = -math.atanh(arg)
    J_b = math.sqrt(J0**2 * math.sin(Phi0) ** 2 + C * math.cos(Phi0) ** 2)
    return Bounce(tau=tau_b, J=J_b, Phi=eps * 0.5 * math.pi)


@dataclass(frozen=True)
class ActionTable:
    """Monotone table of ``(P, J(P))`` used to bracket action inversions.

    Arrays are read-only after construction; lookups never extrapolate.
    """

    P: np.ndarray
    J: np.ndarray

    @classmethod
    def build(cls, p_max: float = P_MAX_DEFAULT, n: int = 48) -> "ActionTable":
        if not p_max > P_REG:
            raise DomainError(f"p_max must exceed P_reg = {P_REG:.12g}")
        offsets = np.geomspace(1e-4, p_max - P_REG, n)
        P = np.concatenate([[P_REG], P_REG + offsets])
        P[-1] = p_max
        J = np.array([0.0] + [action_J(p) for p in P[1:]])
        if not np.all(np.diff(J) > 0):
            raise NumericError("action is not strictly increasing on the table grid")
        P.setflags(write=False)
        J.setflags(write=False)
        return cls(P, J)

    @property
    def J_max(self) -> float:
        return float(self.J[-1])

    def bracket(self, J: float) -> tuple[float, float]:
        if not 0.0 <= J <= self.J_max:
            raise DomainError(f"action {J!r} is outside the table range [0, {self.J_max!r}]")
        k = int(np.searchsorted(self.J, J))
        k = min(max(k, 1), len(self.J) - 1)
        return float(self.P[k - 1]), float(self.P[k])

    def perimeter_of(self, J: float) -> float:
        if J == 0.0:
            return P_REG
        lo, hi = self.bracket(J)
        return invert_action(J, bracket=(lo, hi))


@lru_cache(maxsize=8)
def action_table(p_max: float = P_MAX_DEFAULT, n: int = 48) -> ActionTable:
    """Shared, cached :class:`ActionTable`."""
    return ActionTable.build(p_max, n)


@dataclass(frozen=True)
class Trajectory:
    """Reconstructed path in the parameter region.

    ``states`` stop at the first sample that could not be inverted;
    ``truncated`` and ``diagnostic`` say why.  ``residuals`` are ``H - E``
    recomputed from each reconstructed ``(a, alpha)``.
    """

    states: tuple[EvolutionState, ...]
    eps: int
    C: float
    E: float
    truncated: bool = False
    diagnostic: str = ""
    residuals: tuple[float, ...] = field(default_factory=tuple)

    @property
    def max_residual(self) -> float:
        return max((abs(r) for r in self.residuals), default=0.0)


def trajectory_in_A(
    a0: float,
    alpha0: float,
    C: float = 0.0,
    tau_grid: Sequence[float] | np.ndarray | None = None,
    p_max: float = P_MAX_DEFAULT,
    method: str = "closed",
) -> Trajectory:
    """Evolve the surface ``(a0, alpha0)`` by the boost and map each sample back to ``(a, alpha)``.

    ``tau_grid`` must be increasing.  Samples whose action exceeds the
    inversion table (perimeter above ``p_max``), or whose reconstructed point
    misses ``H = E`` by 1e-6 or more, end the trajectory on that side: the
    returned states are the contiguous run around ``tau = 0`` and
    ``truncated`` is set.  ``method`` selects the closed-form evolution or
    the RK4 integration (:func:`evolve_rk4_at`) as the source of ``(J, Phi)``.

    Raises:
        RegionError: if ``(a0, alpha0)`` is outside the region.
        UnphysicalStateError: if ``C`` exceeds ``J0^2``.
    """
    p0 = OctagonParams(a0, alpha0).validate()
    aa = action_angle(p0)
    _radial(aa.J, C)
    E = hamiltonian(aa.J, aa.Phi, C)
    if tau_grid is None:
        tau_grid = np.linspace(-5.5, 3.5, 181)
    taus = np.asarray(tau_grid, dtype=float)
    if taus.ndim != 1 or len(taus) < 2 or np.any(np.diff(taus) <= 0):
        raise DomainError("tau_grid must be an increasing sequence of at least two values")
    if method == "closed":
        J, Phi = evolve_closed_form(aa.J, aa.Phi, aa.eps, C, taus)
    elif method == "rk4":
        J, Phi = evolve_rk4_at(aa.J, aa.Phi, aa.eps, C, taus)
    else:
        raise DomainError(f"unknown evolution method {method!r}")
    table = action_table(float(p_max))

    results: dict[int, tuple[EvolutionState, float]] = {}
    failures: dict[int, str] = {}
    for i, (t, j, ph) in enumerate(zip(taus, J, Phi)):
        try:
            P = table.perimeter_of(float(j))
            a, at = invert_angle(float(ph), P)
            p = OctagonParams.from_tilde(a, at)
            # audit: recompute H at the reconstructed point
            P_back = perimeter(p)
            H_back = hamiltonian(action_J(P_back), angle_Phi(a, P_back, aa.eps), C)
        except OctagonError as exc:
            failures[i] = f"tau = {t:.6g}: {exc}"
            continue
        if not abs(H_back - E) < _H_RESIDUAL_MAX:
            # near a = 1 the point is no longer resolved in double precision
            failures[i] = f"tau = {t:.6g}: reconstructed point violates H = E by {H_back - E:.3g}"
            continue
        state = EvolutionState(float(t), float(j), float(ph), hamiltonian(j, ph, C), E, a, p.alpha)
        results[i] = (state, H_back - E)

    # keep the contiguous run containing the sample closest to tau = 0
    centre = int(np.argmin(np.abs(taus)))
    lo = hi = centre
    if centre in results:
        while lo - 1 in results:
            lo -= 1
        while hi + 1 in results:
            hi += 1
        kept = range(lo, hi + 1)
    else:
        kept = range(0)
    states = tuple(results[i][0] for i in kept)
    residuals = tuple(results[i][1] for i in kept)
    truncated = len(states) < len(taus)
    diagnostic = "; ".join(failures[i] for i in sorted(failures)[:3])
    if truncated and not diagnostic:
        diagnostic = "samples outside the contiguous run around tau = 0 were dropped"
    return Trajectory(states, aa.eps, float(C), E, truncated, diagnostic, residuals)


def area_spectrum(n: int) -> float:
    """WP-area eigenvalue ``4 pi (n + 1/2)`` in Planck units."""
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise DomainError(f"spectrum index must be a non-negative integer, got {n!r}")
    return 4.0 * math.pi * (int(n) + 0.5)


@dataclass(frozen=True)
class LadderMatrices:
    """Truncated discrete-series matrices on the basis ``|j, m>``, ``m = j, j+1, ...``."""

    j: Fraction
    m: tuple[Fraction, ...]
    J0: object
    Jplus: object
    Jminus: object
    C: object


def rep_ladder(j, m_max, exact: bool = False) -> LadderMatrices:
    """Matrices of ``J0, J+, J-`` and ``C`` on the states ``j <= m <= m_max``.

    ``C`` is assembled as ``J0^2 - (J+ J- + J- J+)/2``.  The truncation
    breaks the algebra only at the highest state, where ``J+`` leaves the
    basis.  With ``exact=True`` entries are sympy expressions; otherwise
    float numpy arrays.

    Raises:
        DomainError: if ``j`` is not a positive half-integer or ``m_max < j``.
    """
    jf = Fraction(j).limit_denominator(2)
    if jf != Fraction(j) or jf <= 0 or (2 * jf).denominator != 1:
        raise DomainError(f"j must be a positive half-integer, got {j!r}")
    ms = []
    m = jf
    while m <= Fraction(m_max).limit_denominator(1000):
        ms.append(m)
        m += 1
    if not ms:
        raise DomainError(f"m_max = {m_max!r} is below j = {j!r}")
    n = len(ms)
    up = [(mi - jf + 1) * (mi + jf) for mi in ms]
    down = [(mi - jf) * (mi + jf - 1) for mi in ms]

    if exact:
        import sympy

        def q(x: Fraction):
            return sympy.Rational(x.numerator, x.denominator)

        J0 = sympy.diag(*[q(mi) for mi in ms])
        Jp = sympy.zeros(n, n)
        Jm = sympy.zeros(n, n)
        for k in range(n - 1):
            Jp[k + 1, k] = sympy.sqrt(q(up[k]))
            Jm[k, k + 1] = sympy.sqrt(q(down[k + 1]))
        Cm = (J0 * J0 - (Jp * Jm + Jm * Jp) / 2).applyfunc(sympy.nsimplify)
    else:
        J0 = np.diag([float(mi) for mi in ms])
        Jp = np.zeros((n, n))
        Jm = np.zeros((n, n))
        for k in range(n - 1):
            Jp[k + 1, k] = math.sqrt(up[k])
            Jm[k, k + 1] = math.sqrt(down[k + 1])
        Cm = J0 @ J0 - 0.5 * (Jp @ Jm + Jm @ Jp)
    return LadderMatrices(jf, tuple(ms), J0, Jp, Jm, Cm)


ScalarField = Callable[[float, float], complex]


def field_J(a: float, at: float) -> float:
    return action_J(perimeter(OctagonParams.from_tilde(a, at)))


def field_Phi(a: float, at: float) -> float:
    p = OctagonParams.from_tilde(a, at)
    return angle_Phi(a, perimeter(p), p.eps)


def field_Jplus(a: float, at: float, C: float = 0.0) -> complex:
    return observables(field_J(a, at), field_Phi(a, at), C).Jplus


def field_Jminus(a: float, at: float, C: float = 0.0) -> complex:
    return observables(field_J(a, at), field_Phi(a, at), C).Jminus


def poisson_bracket_fd(f: ScalarField, g: ScalarField, p: OctagonParams, h: float = PB_STEP) -> complex:
    """WP Poisson bracket ``{f, g}`` at ``p`` by central differences in ``(a, alpha_tilde)``.

    ``f`` and ``g`` take ``(a, alpha_tilde)``.  Accuracy is limited to about
    ``h^2`` by truncation and ``1e-12 / h`` by the evaluation noise of the
    fields.

    Raises:
        RegionError: if the stencil leaves the region.
    """
    p.validate()
    a, at = p.a, p.alpha_tilde
    for da, dt in ((h, 0.0), (-h, 0.0), (0.0, h), (0.0, -h)):
        OctagonParams.from_tilde(a + da, at + dt).validate()

    def grad(fn):
        fa = (fn(a + h, at) - fn(a - h, at)) / (2 * h)
        ft = (fn(a, at + h) - fn(a, at - h)) / (2 * h)
        return fa, ft

    fa, ft = grad(f)
    ga, gt = grad(g)
    return 2.0 * (ft * ga - fa * gt) / wp_density(p)
