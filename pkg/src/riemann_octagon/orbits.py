"""Constant-perimeter orbits in the parameter region and their action-angle variables.

A perimeter ``P`` is traded for ``T = tanh(P/16)``.  On the orbit of ``T`` the
squared radius ``x = a^2`` runs between the turning points ``x_-(T)`` and
``x_+(T)``; the two halves of the orbit are the sheets ``eps = +-1``.

The WP-area enclosed by an orbit is computed by quadrature.  Its derivative
and the conjugate angle come from the function ``Q(x, T)``, a combination of
incomplete elliptic integrals of the first and third kind.  ``Q(x_+, T)``
(complete integrals) gives ``dA/dP`` in closed form, which is checked
against the quadrature.

Throughout, points of an orbit are parametrised by ``theta`` in ``[0, pi/2]``
with ``x = x_- + (x_+ - x_-) sin(theta)^2``.  Then ``sin(theta)`` is the
elliptic argument ``u``, and the orbit half-width is free of cancellation:
``tan(alpha_tilde)^2 = 2 T^2 (x_+ - x)(x - x_-) / (T^2 - x)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import integrate, optimize

from .errors import BelowMinimumError, ConsistencyError, DomainError, NumericError
from .octagon import P_REG, OctagonParams, perimeter
from .specfun import dilog_shifted, ellint_f, ellint_pi

__all__ = [
    "T_REG",
    "IsoOrbit",
    "EllipticArgs",
    "ActionAngle",
    "t_of_p",
    "p_of_t",
    "a_plus_minus",
    "orbit_point",
    "orbit_half_width",
    "area_f",
    "wp_area_numeric",
    "elliptic_args",
    "q_function",
    "dA_dP",
    "wp_area_dilog",
    "action_J",
    "invert_action",
    "angle_Phi",
    "invert_angle",
    "action_angle",
    "phase_winding",
    "NEAR_REG",
]

T_REG = math.sqrt(2.0 * math.sqrt(2.0) - 2.0)
NEAR_REG = 1e-6  # below P_REG + NEAR_REG the orbit is treated as a point
_P_TOL = 1e-12 * P_REG
_X_TOL = 1e-12
QUAD_EPSABS = 1e-13
QUAD_EPSREL = 1e-12
QUAD_TARGET = 1e-9


def t_of_p(P: float) -> float:
    """``T = tanh(P/16)`` for ``P >= P_REG``."""
    P = float(P)
    if P < P_REG - _P_TOL:
        raise BelowMinimumError(f"perimeter {P!r} is below the minimum P_reg = {P_REG:.12g}")
    return math.tanh(max(P, P_REG) / 16.0)


def p_of_t(T: float) -> float:
    """Inverse of :func:`t_of_p`."""
    T = float(T)
    if T < T_REG - 1e-15:
        raise BelowMinimumError(f"T = {T!r} is below T_reg = {T_REG:.15g} (P_reg = {P_REG:.12g})")
    if T >= 1.0:
        raise DomainError(f"T must be < 1, got {T!r}")
    return 16.0 * math.atanh(max(T, T_REG))


def _disc(T: float) -> float:
    d2 = (2.0 + T * T) ** 2 - 8.0
    if d2 < 0.0:
        if d2 > -1e-14:
            return 0.0
        raise BelowMinimumError(f"T = {T!r} < T_reg: negative radicand {d2!r}")
    return math.sqrt(d2)


def a_plus_minus(T: float) -> tuple[float, float]:
    """Largest and smallest ``a`` on the orbit (both reached at ``alpha_tilde = 0``)."""
    d = _disc(T)
    s = 2.0 + T * T
    return 0.5 * math.sqrt(s + d), 0.5 * math.sqrt(s - d)


def _make_orbit(P: float, T: float, one_minus_t2: float) -> "IsoOrbit":
    d = _disc(T)
    t2 = T * T
    # T^2 - x_+ = 2 (1 - T^2)^2 / (3 T^2 - 2 + D): no cancellation as T -> 1
    gap = 2.0 * one_minus_t2**2 / (3.0 * t2 - 2.0 + d)
    x_plus = t2 - gap
    # product of the roots is 1/2
    x_minus = min(0.5 / x_plus, x_plus)
    return IsoOrbit(float(P), T, x_minus, x_plus, one_minus_t2, gap)


def _orbit_of_t(T: float) -> "IsoOrbit":
    return _make_orbit(p_of_t(T), T, (1.0 - T) * (1.0 + T))


@dataclass(frozen=True)
class IsoOrbit:
    """The constant-perimeter orbit through a given ``P``.

    ``one_minus_t2 = 1 - T^2`` and ``gap = T^2 - x_+`` are kept as separate
    fields: both become tiny at large perimeter and lose all accuracy if
    recovered by subtraction.
    """

    P: float
    T: float
    x_minus: float
    x_plus: float
    one_minus_t2: float
    gap: float

    @classmethod
    def from_perimeter(cls, P: float) -> "IsoOrbit":
        T = t_of_p(P)
        P = max(float(P), P_REG)
        return _make_orbit(P, T, 1.0 / math.cosh(P / 16.0) ** 2)

    @property
    def a_plus(self) -> float:
        return math.sqrt(self.x_plus)

    @property
    def a_minus(self) -> float:
        return math.sqrt(self.x_minus)

    @property
    def width(self) -> float:
        return self.x_plus - self.x_minus

    @property
    def degenerate(self) -> bool:
        return self.P - P_REG < NEAR_REG

    def x_of_theta(self, theta: float) -> float:
        return self.x_minus + self.width * math.sin(theta) ** 2

    def t2_minus_x(self, theta: float) -> float:
        return self.gap + self.width * math.cos(theta) ** 2

    def tan_half_width(self, theta: float) -> float:
        """``tan(alpha_tilde)`` of the upper-sheet orbit point at ``theta``."""
        s, c = math.sin(theta), math.cos(theta)
        return self.T * self.width * s * c * math.sqrt(2.0 / self.t2_minus_x(theta))

    def theta_of_x(self, x: float) -> float:
        x = _clamp_x(x, self)
        if self.width == 0.0:
            return 0.5 * math.pi
        return math.asin(math.sqrt((x - self.x_minus) / self.width))


def _clamp_x(x: float, orb: IsoOrbit) -> float:
    tol = _X_TOL * max(1.0, orb.width)
    if x < orb.x_minus - tol or x > orb.x_plus + tol:
        raise DomainError(
            f"x = {x!r} is outside [{orb.x_minus!r}, {orb.x_plus!r}] for P = {orb.P!r}"
        )
    return min(max(x, orb.x_minus), orb.x_plus)


def orbit_point(T: float, phi: float) -> tuple[float, float]:
    """Point ``(a, alpha_tilde)`` of the orbit ``T`` at cyclic parameter ``phi``.

    ``phi = 0`` is the outer turning point ``(a_+, 0)``, ``phi = pi`` the inner
    one; ``sign(alpha_tilde) = sign(sin phi)``.
    """
    d = _disc(T)
    s = 2.0 + T * T
    c, sn = math.cos(phi), math.sin(phi)
    a = 0.5 * math.sqrt(s + c * d)
    rad = 3.0 * T * T - 2.0 - c * d
    if rad < -1e-14:
        raise ConsistencyError(f"negative radicand {rad!r} in orbit parametrisation")
    rad = max(rad, 0.0)
    if rad == 0.0:
        return a, 0.0
    # tan(alpha_tilde) = T sqrt(2) D sin(phi) / (2 sqrt(3T^2 - 2 - D cos(phi)))
    return a, math.atan(T * math.sqrt(2.0) * d * sn / (2.0 * math.sqrt(rad))) + 0.0


def orbit_half_width(x: float, T: float) -> float:
    """``|alpha_tilde|`` of the orbit ``T`` at ``x = a^2``."""
    orb = _orbit_of_t(T)
    return math.atan(orb.tan_half_width(orb.theta_of_x(x)))


def area_f(x: float, T: float) -> float:
    """Argument of arccosh in the WP-area integrand."""
    return (
        math.sqrt((2.0 * x - 1.0) / x)
        * math.sqrt((T * T - x) / (T * T - 2.0 * x + 1.0))
        / math.sqrt(1.0 - T * T)
    )


def _area_integrand(theta: float, orb: IsoOrbit) -> float:
    x = orb.x_of_theta(theta)
    # arccosh f(x, T) == artanh(tan(alpha_tilde_max) / sqrt(2x - 1)); the
    # artanh form has no cancellation near the turning points
    y = orb.tan_half_width(theta) / math.sqrt(2.0 * x - 1.0)
    dx = orb.width * math.sin(2.0 * theta)
    one_minus_x = orb.one_minus_t2 + orb.t2_minus_x(theta)
    return 8.0 * math.atanh(y) / (one_minus_x * math.sqrt(2.0 * x - 1.0)) * dx


def wp_area_numeric(P: float) -> float:
    """WP-area of the domain enclosed by the orbit of perimeter ``P``.

    Adaptive Gauss-Kronrod quadrature in ``theta``, which removes the
    square-root behaviour of the integrand at both turning points.

    Raises:
        NumericError: if the error estimate exceeds 1e-9 (``estimate`` holds
            the value reached).
    """
    orb = IsoOrbit.from_perimeter(P)
    if orb.degenerate:
        return 0.0
    # full_output silences quad's warning; convergence is judged below
    val, err, _info = integrate.quad(
        _area_integrand, 0.0, 0.5 * math.pi, args=(orb,),
        epsabs=QUAD_EPSABS, epsrel=QUAD_EPSREL, limit=400, full_output=1,
    )[:3]
    if not err <= max(QUAD_TARGET, 1e-12 * abs(val)):
        raise NumericError(f"area quadrature did not converge at P = {P!r} (error {err:.3g})", val)
    return val


@dataclass(frozen=True)
class EllipticArgs:
    u: float
    k: float
    nu1: float
    nu2: float


def _elliptic_args_theta(theta: float, orb: IsoOrbit) -> EllipticArgs:
    xm, w = orb.x_minus, orb.width
    u = 1.0 if theta >= 0.5 * math.pi else math.sin(theta)
    return EllipticArgs(
        u=u,
        k=math.sqrt(w / (orb.gap + w)),
        nu1=w / (1.0 - xm),
        nu2=2.0 * w / (orb.T**2 - 2.0 * xm + 1.0),
    )


def elliptic_args(x: float, T: float) -> EllipticArgs:
    """Argument, modulus and characteristics entering ``Q(x, T)``."""
    orb = _orbit_of_t(T)
    return _elliptic_args_theta(orb.theta_of_x(x), orb)


def _q_theta(theta: float, orb: IsoOrbit) -> float:
    e = _elliptic_args_theta(theta, orb)
    T2, xm, omt = orb.T**2, orb.x_minus, orb.one_minus_t2
    c1 = 1.0 - xm
    c2 = T2 - 2.0 * xm + 1.0
    bracket = (
        ellint_f(e.u, e.k) / omt
        - ellint_pi(e.u, e.nu1, e.k) / c1
        + ellint_pi(e.u, e.nu2, e.k) / c2
    )
    return math.sqrt(2.0) / 4.0 * omt / math.sqrt(orb.gap + orb.width) * bracket


def q_function(x: float, T: float) -> float:
    """Canonical coordinate ``Q(x, T)`` with ``eps dQ ^ dP`` equal to the WP form.

    ``Q(x_-, T) = 0`` and ``Q`` increases with ``x``; at ``x_+`` the elliptic
    integrals are complete.
    """
    orb = _orbit_of_t(T)
    return _q_theta(orb.theta_of_x(x), orb)


def _q_plus(orb: IsoOrbit) -> float:
    return _q_theta(0.5 * math.pi, orb)


def dA_dP(P: float) -> float:
    """Closed-form ``dA/dP = 2 Q(x_+, T)``.

    Tends to a finite positive limit as ``P -> P_reg`` (the enclosed area
    vanishes linearly in ``P - P_reg``).
    """
    return 2.0 * _q_plus(IsoOrbit.from_perimeter(P))


def _dilog_primitive(T: float, omt: float, xi: float) -> complex:
    s = math.sqrt(2.0 * T * T - 1.0)
    out = complex(
        16.0 * math.log(2.0 / math.sqrt(omt)) * math.atanh(xi)
        + 8.0 * math.log(xi) * math.log1p(xi)
    )
    out += 8.0 * dilog_shifted(xi) + 8.0 * dilog_shifted(1.0 + xi)
    for e in (1, -1):
        out += 4.0 * (
            dilog_shifted((T + e * xi) / (T - e))
            - dilog_shifted((T + e * xi) / (T + e))
            + dilog_shifted(complex((1.0 - xi) / 2.0, e * (1.0 + xi) / 2.0))
            - dilog_shifted(complex((1.0 + xi) / 2.0, e * (1.0 - xi) / 2.0))
            + dilog_shifted((s + e * xi) / (s + e))
            - dilog_shifted((s + e * xi) / (s - e))
        )
    return out


def wp_area_dilog(P: float, return_residual: bool = False):
    """Log-order analytic approximation of the WP-area.

    Replaces ``arccosh z`` by ``ln 2z`` in the area integrand and integrates
    in closed form through dilogarithms.  Accurate only at large ``P``;
    meaningless near ``P_reg``.  With ``return_residual=True`` returns
    ``(value, imaginary_residual)``.

    Raises:
        ConsistencyError: if the imaginary parts fail to cancel (> 1e-6).
    """
    orb = IsoOrbit.from_perimeter(P)
    if orb.degenerate:
        raise BelowMinimumError(f"the approximation needs P > P_reg; got {P!r}")
    T = orb.T
    xi_p = math.sqrt(2.0 * orb.x_plus - 1.0)
    xi_m = math.sqrt(2.0 * orb.x_minus - 1.0)
    omt = orb.one_minus_t2
    z = _dilog_primitive(T, omt, xi_p) - _dilog_primitive(T, omt, xi_m)
    if abs(z.imag) > 1e-6:
        raise ConsistencyError(f"imaginary residual {z.imag!r} in the dilog assembly at P = {P!r}")
    if return_residual:
        return z.real, abs(z.imag)
    return z.real


def action_J(P: float) -> float:
    """Action variable ``J = A_WP(P) / (4 pi)``."""
    return wp_area_numeric(P) / (4.0 * math.pi)


def invert_action(J: float, p_hi: float = 160.0, bracket: tuple[float, float] | None = None) -> float:
    """Perimeter whose orbit has action ``J`` (Brent iteration on a sign-changing bracket).

    ``bracket`` narrows the search when a table of ``(P, J)`` is at hand.
    """
    J = float(J)
    if J < 0:
        raise DomainError(f"action must be non-negative, got {J!r}")
    if J == 0.0:
        return P_REG
    if bracket is None:
        lo, hi = P_REG, 2.0 * P_REG
        while action_J(hi) < J:
            lo, hi = hi, 1.5 * hi
            if hi > p_hi:
                raise NumericError(f"action {J!r} is beyond the bracket limit P = {p_hi!r}")
    else:
        lo, hi = bracket
    try:
        return optimize.brentq(
            lambda P: action_J(P) - J, lo, hi, xtol=1e-13, rtol=1e-15, maxiter=200
        )
    except ValueError as exc:
        raise NumericError(f"no bracket for action {J!r} in [{lo!r}, {hi!r}]") from exc


def angle_Phi(a: float, P: float, eps: int) -> float:
    """Angle variable ``Phi = pi eps Q(a^2, T) / Q(x_+, T)`` in ``[-pi, pi]``."""
    orb = IsoOrbit.from_perimeter(P)
    if orb.degenerate:
        raise DomainError("the angle variable is undefined on the degenerate orbit P = P_reg")
    theta = orb.theta_of_x(a * a)
    return math.pi * eps * _q_theta(theta, orb) / _q_plus(orb)


def invert_angle(Phi: float, P: float) -> tuple[float, float]:
    """Point ``(a, alpha_tilde)`` of the orbit ``P`` with angle variable ``Phi``.

    Solves ``Q(x, T) / Q(x_+, T) = |Phi| / pi`` for ``x``.  The sheet is
    ``sign(Phi)``; ``alpha_tilde`` follows from the perimeter equation, solved
    in closed form for the orbit half-width.
    """
    Phi = float(Phi)
    if abs(Phi) > math.pi + 1e-12:
        raise DomainError(f"Phi must lie in [-pi, pi], got {Phi!r}")
    orb = IsoOrbit.from_perimeter(P)
    if orb.degenerate:
        raise DomainError("cannot invert the angle on the degenerate orbit P = P_reg")
    target = min(abs(Phi) / math.pi, 1.0)
    if target == 0.0:
        theta = 0.0
    elif target == 1.0:
        theta = 0.5 * math.pi
    else:
        qp = _q_plus(orb)
        try:
            theta = optimize.brentq(
                lambda th: _q_theta(th, orb) / qp - target, 0.0, 0.5 * math.pi, xtol=1e-15, rtol=1e-15
            )
        except ValueError as exc:
            raise NumericError(f"no bracket when inverting Phi = {Phi!r} at P = {P!r}") from exc
    a = math.sqrt(orb.x_of_theta(theta))
    sign = 1.0 if Phi > 0 else -1.0
    at = sign * math.atan(orb.tan_half_width(theta)) if Phi != 0.0 else 0.0
    return a, at


@dataclass(frozen=True)
class ActionAngle:
    J: float
    Phi: float
    eps: int
    P: float


def action_angle(p: OctagonParams) -> ActionAngle:
    """Action-angle coordinates ``(J, Phi)`` of a point of the region."""
    P = perimeter(p)
    return ActionAngle(J=action_J(P), Phi=angle_Phi(p.a, P, p.eps), eps=p.eps, P=P)


def phase_winding(P: float, n: int = 256) -> float:
    """Discrete loop integral of ``dPhi`` once around the orbit.

    The orbit is sampled at ``n`` values of ``phi``; consecutive angle
    differences are reduced to ``(-pi, pi]`` and summed.  Returns the
    magnitude, which should be ``2 pi``.

    Raises:
        ConsistencyError: if the samples do not advance monotonically.
    """
    orb = IsoOrbit.from_perimeter(P)
    if orb.degenerate:
        raise DomainError("degenerate orbit has no angle variable")
    values = []
    for i in range(n):
        phi = 2.0 * math.pi * i / n
        a, at = orbit_point(orb.T, phi)
        eps = -1 if at < 0 else 1
        values.append(angle_Phi(a, P, eps))
    total = 0.0
    steps = []
    for i in range(n):
        d = values[(i + 1) % n] - values[i]
        d = math.remainder(d, 2.0 * math.pi)
        steps.append(d)
        total += d
    if not (all(s <= 1e-12 for s in steps) or all(s >= -1e-12 for s in steps)):
        raise ConsistencyError("angle variable is not monotone along the orbit")
    return abs(total)
