"""Special-function kernel.

Stable inverse hyperbolic cosine, Carlson symmetric elliptic integrals
(duplication algorithm), incomplete Legendre integrals of the first and third
kind in the Jacobi-argument convention, and the complex dilogarithm in the
shifted-series convention ``dilog(z) = sum (1 - z)**p / p**2``.

All functions are pure and operate on Python floats / complex numbers.
"""

from __future__ import annotations

import cmath
import math

from .errors import DomainError

__all__ = [
    "arccosh_stable",
    "arccosh_series",
    "arccosh_series_term",
    "carlson_rc",
    "carlson_rf",
    "carlson_rj",
    "ellint_f",
    "ellint_pi",
    "li2",
    "dilog_shifted",
]

# Relative accuracy target for the Carlson termination criterion.
_CARLSON_R = 1e-16
_MAX_DUPLICATIONS = 200

# B_{2k} / (2k+1)!  for k = 1..15, used in the Bernoulli form of Li2.
_BERNOULLI_2K = [
    1 / 6,
    -1 / 30,
    1 / 42,
    -1 / 30,
    5 / 66,
    -691 / 2730,
    7 / 6,
    -3617 / 510,
    43867 / 798,
    -174611 / 330,
    854513 / 138,
    -236364091 / 2730,
    8553103 / 6,
    -23749461029 / 870,
    8615841276005 / 14322,
]
_LI2_COEFFS = [b / math.factorial(2 * k + 1) for k, b in enumerate(_BERNOULLI_2K, start=1)]

_PI2_6 = math.pi**2 / 6


def arccosh_stable(z: float) -> float:
    """Inverse hyperbolic cosine without cancellation near ``z = 1``.

    Raises:
        DomainError: if ``z < 1``.
    """
    z = float(z)
    if not z >= 1.0:
        raise DomainError(f"arccosh requires z >= 1, got {z!r}")
    if z > 1e8:
        return math.log(z) + math.log(2.0)
    t = z - 1.0
    return math.log1p(t + math.sqrt(t * (t + 2.0)))


def arccosh_series(z: float, terms: int) -> float:
    """Partial sum of the large-argument expansion of arccosh.

    ``ln(2z) - sum_{n=1}^{terms-1} c_n z**(-2n)`` with
    ``c_n = (2n-1)!! / ((2n)!! * 2n)``.  ``terms=1`` keeps only the
    logarithm.  All omitted terms share one sign, so the truncation error lies
    between the first omitted term and that term divided by ``1 - z**-2``.
    Near ``z = 1`` the partial sums are poor approximations; that is expected.
    """
    z = float(z)
    if not z > 1.0:
        raise DomainError(f"arccosh_series requires z > 1, got {z!r}")
    if terms < 1:
        raise DomainError("terms must be >= 1")
    total = math.log(2.0 * z)
    ratio = 1.0  # (2n-1)!! / (2n)!!
    inv_z2 = 1.0 / (z * z)
    power = 1.0
    for n in range(1, terms):
        ratio *= (2 * n - 1) / (2 * n)
        power *= inv_z2
        total -= ratio / (2 * n) * power
    return total


def arccosh_series_term(z: float, n: int) -> float:
    """Magnitude of the n-th correction term (n >= 1) of :func:`arccosh_series`."""
    ratio = 1.0
    for m in range(1, n + 1):
        ratio *= (2 * m - 1) / (2 * m)
    return ratio / (2 * n) * z ** (-2 * n)


def carlson_rc(x: float, y: float) -> float:
    """Degenerate Carlson integral R_C(x, y) for x >= 0, y > 0."""
    if x < 0 or y <= 0:
        raise DomainError(f"carlson_rc requires x >= 0, y > 0; got ({x}, {y})")
    if x == 0.0:
        return math.pi / (2.0 * math.sqrt(y))
    if x < y:
        return math.atan(math.sqrt((y - x) / x)) / math.sqrt(y - x)
    if x > y:
        return math.atanh(math.sqrt((x - y) / x)) / math.sqrt(x - y)
    return 1.0 / math.sqrt(x)


def carlson_rf(x: float, y: float, z: float) -> float:
    """Carlson's symmetric integral of the first kind R_F(x, y, z).

    Arguments must be non-negative with at most one zero.
    """
    x, y, z = float(x), float(y), float(z)
    if min(x, y, z) < 0:
        raise DomainError(f"carlson_rf requires non-negative arguments; got ({x}, {y}, {z})")
    if (x == 0) + (y == 0) + (z == 0) > 1:
        raise DomainError("carlson_rf allows at most one zero argument")

    x0, y0 = x, y
    a0 = (x + y + z) / 3.0
    q = (3.0 * _CARLSON_R) ** (-1.0 / 6.0) * max(abs(a0 - x), abs(a0 - y), abs(a0 - z))
    am = a0
    scale = 1.0  # 4**-n
    for _ in range(_MAX_DUPLICATIONS):
        if q * scale < abs(am):
            break
        sx, sy, sz = math.sqrt(x), math.sqrt(y), math.sqrt(z)
        lam = sx * sy + sy * sz + sz * sx
        x = (x + lam) / 4.0
        y = (y + lam) / 4.0
        z = (z + lam) / 4.0
        am = (am + lam) / 4.0
        scale /= 4.0
    xx = (a0 - x0) * scale / am
    yy = (a0 - y0) * scale / am
    zz = -xx - yy
    e2 = xx * yy - zz * zz
    e3 = xx * yy * zz
    return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / math.sqrt(am)


def carlson_rj(x: float, y: float, z: float, p: float) -> float:
    """Carlson's symmetric integral of the third kind R_J(x, y, z, p), p > 0."""
    x, y, z, p = float(x), float(y), float(z), float(p)
    if min(x, y, z) < 0 or p <= 0:
        raise DomainError(f"carlson_rj requires x,y,z >= 0 and p > 0; got ({x}, {y}, {z}, {p})")
    if (x == 0) + (y == 0) + (z == 0) > 1:
        raise DomainError("carlson_rj allows at most one zero among x, y, z")

    x0, y0, z0 = x, y, z
    a0 = (x + y + z + 2.0 * p) / 5.0
    delta = (p - x) * (p - y) * (p - z)
    q = (_CARLSON_R / 4.0) ** (-1.0 / 6.0) * max(
        abs(a0 - x), abs(a0 - y), abs(a0 - z), abs(a0 - p)
    )
    am = a0
    scale = 1.0
    acc = 0.0
    for _ in range(_MAX_DUPLICATIONS):
        if q * scale < abs(am):
            break
        sx, sy, sz, sp = math.sqrt(x), math.sqrt(y), math.sqrt(z), math.sqrt(p)
        lam = sx * sy + sy * sz + sz * sx
        d = (sp + sx) * (sp + sy) * (sp + sz)
        e = delta * scale**3 / (d * d)
        acc += scale * carlson_rc(1.0, 1.0 + e) / d
        x = (x + lam) / 4.0
        y = (y + lam) / 4.0
        z = (z + lam) / 4.0
        p = (p + lam) / 4.0
        am = (am + lam) / 4.0
        scale /= 4.0
    xx = (a0 - x0) * scale / am
    yy = (a0 - y0) * scale / am
    zz = (a0 - z0) * scale / am
    pp = -(xx + yy + zz) / 2.0
    e2 = xx * yy + xx * zz + yy * zz - 3.0 * pp * pp
    e3 = xx * yy * zz + 2.0 * e2 * pp + 4.0 * pp**3
    e4 = (2.0 * xx * yy * zz + e2 * pp + 3.0 * pp**3) * pp
    e5 = xx * yy * zz * pp * pp
    series = (
        1.0
        - 3.0 * e2 / 14.0
        + e3 / 6.0
        + 9.0 * e2 * e2 / 88.0
        - 3.0 * e4 / 22.0
        - 9.0 * e2 * e3 / 52.0
        + 3.0 * e5 / 26.0
    )
    return scale * series / (am * math.sqrt(am)) + 6.0 * acc


def _check_uk(u: float, k: float) -> None:
    if not 0.0 <= u <= 1.0:
        raise DomainError(f"elliptic argument u must lie in [0, 1], got {u!r}")
    if not 0.0 <= k <= 1.0:
        raise DomainError(f"elliptic modulus k must lie in [0, 1], got {k!r}")
    if u == 1.0 and k == 1.0:
        raise DomainError("F(1, 1) diverges")


def ellint_f(u: float, k: float) -> float:
    """Incomplete integral of the first kind, ``int_0^u dt / sqrt((1-t^2)(1-k^2 t^2))``.

    ``u`` is the Jacobi argument (sine of the amplitude); ``u = 1`` gives K(k).
    """
    u, k = float(u), float(k)
    _check_uk(u, k)
    if u == 0.0:
        return 0.0
    u2 = u * u
    return u * carlson_rf((1.0 - u) * (1.0 + u), (1.0 - k * u) * (1.0 + k * u), 1.0)


def ellint_pi(u: float, nu: float, k: float) -> float:
    """Incomplete integral of the third kind.

    ``int_0^u dt / ((1 - nu t^2) sqrt((1-t^2)(1-k^2 t^2)))``, with the same
    argument convention as :func:`ellint_f`.

    Raises:
        DomainError: if ``nu * u**2 >= 1`` (singular parameter).
    """
    u, nu, k = float(u), float(nu), float(k)
    _check_uk(u, k)
    u2 = u * u
    if nu * u2 >= 1.0:
        raise DomainError(f"singular parameter: nu*u^2 = {nu * u2!r} >= 1")
    if u == 0.0:
        return 0.0
    # factored forms keep relative accuracy as u -> 1 and k -> 1
    c2 = (1.0 - u) * (1.0 + u)
    d2 = (1.0 - k * u) * (1.0 + k * u)
    f = u * carlson_rf(c2, d2, 1.0)
    if nu == 0.0:
        return f
    return f + nu * u * u2 / 3.0 * carlson_rj(c2, d2, 1.0, 1.0 - nu * u2)


def _li2_series(w: complex) -> complex:
    # |w| <= 1/2
    total = 0j
    power = w
    p = 1
    while True:
        term = power / (p * p)
        total += term
        if abs(term) < 1e-17 * max(abs(total), 1e-300):
            return total
        p += 1
        power *= w


def _li2_bernoulli(w: complex) -> complex:
    # |w| <= 1, Re w <= 1/2 so |u| stays near 1
    u = -cmath.log(1.0 - w)
    u2 = u * u
    total = u - u2 / 4.0
    power = u
    for c in _LI2_COEFFS:
        power *= u2
        term = c * power
        total += term
        if abs(term) < 1e-17 * abs(total):
            break
    return total


def li2(w: complex) -> complex:
    """Standard dilogarithm Li2(w) = sum w**p / p**2, principal branch.

    On the cut ``w > 1`` (real) the value continuous from below is returned,
    i.e. ``Im Li2(w) = -pi ln w``.
    """
    w = complex(w)
    if not (math.isfinite(w.real) and math.isfinite(w.imag)):
        raise DomainError(f"li2 requires a finite argument, got {w!r}")
    if w == 1:
        return complex(_PI2_6)
    if w == 0:
        return 0j
    if w.imag == 0.0 and w.real > 1.0:
        x = w.real
        lx = math.log(x)
        re = 2.0 * _PI2_6 - 0.5 * lx * lx - li2(1.0 / x).real
        return complex(re, -math.pi * lx)
    if abs(w) > 1.0:
        lm = cmath.log(-w)
        return -_PI2_6 - 0.5 * lm * lm - li2(1.0 / w)
    if w.real > 0.5:
        return _PI2_6 - cmath.log(w) * cmath.log(1.0 - w) - li2(1.0 - w)
    if abs(w) <= 0.5:
        return _li2_series(w)
    return _li2_bernoulli(w)


def dilog_shifted(z: complex) -> complex:
    """Dilogarithm in the shifted convention ``sum_{p>=1} (1 - z)**p / p**2``.

    Equal to ``li2(1 - z)``; the series is summed directly for
    ``|1 - z| <= 1/2`` and continued analytically elsewhere.
    """
    return li2(1.0 - complex(z))
