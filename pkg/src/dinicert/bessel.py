"""Bessel functions of the first kind and the normalized family w_{a,nu}.

Everything here is evaluated by the ascending power series with the
term-ratio recurrence; raw factorials or gamma values never appear past
the leading term, so no coefficient overflows.  The series for J_nu(x) is
alternating and its largest term grows like e^x, so plain double
precision loses roughly 0.43*x digits to cancellation.  Small arguments
are summed in doubles; beyond that the same series is summed with guard
digits through mpmath's low-level libmp primitives, which are pure
functions of (value, precision) and therefore safe to call from any
number of threads.
"""

from __future__ import annotations

import cmath
import math
from typing import Iterator

import numpy as np
from mpmath.libmp import (
    fone,
    from_float,
    from_int,
    mpf_abs,
    mpf_add,
    mpf_div,
    mpf_gamma,
    mpf_lt,
    mpf_mul,
    mpf_mul_int,
    mpf_neg,
    mpf_pow,
    mpf_shift,
    round_nearest,
    to_float,
)

from .errors import DomainError, NumericFailure
from .families import DiniFamily, Order

_RN = round_nearest

# Double summation is accepted only while the largest term exceeds the
# result by less than this factor (< 2 digits lost to cancellation).
_FLOAT_PATH_X_MAX = 3.0
_FLOAT_PATH_CANCEL_MAX = 64.0

X_MAX = 60.0


def _as_nu(order: Order | float) -> float:
    if isinstance(order, Order):
        return order.nu
    return Order(float(order)).nu


def gamma_real(x: float) -> float:
    """Gamma function for positive real argument.

    Backed by the platform libm implementation (a minimax/Lanczos-class
    rational approximation with double coefficients), which is well within
    the 1e-13 relative budget on (0, 50].
    """
    x = float(x)
    if not x > 0.0:
        raise DomainError("gamma_real requires x > 0")
    return math.gamma(x)


def _j_series_float(nu: float, x: float) -> float | None:
    """Double-precision ascending series; None if cancellation is too deep."""
    try:
        t = (0.5 * x) ** nu / math.gamma(nu + 1.0)
    except OverflowError:
        return None
    s = t
    maxmag = abs(t)
    q = -0.25 * x * x
    n = 0
    small = 0
    while small < 2:
        t *= q / ((n + 1) * (n + nu + 1))
        s += t
        a = abs(t)
        if a > maxmag:
            maxmag = a
        if a < 1e-17 * (1.0 + abs(s)):
            small += 1
        else:
            small = 0
        n += 1
        if n > 400:
            return None
    if abs(s) * _FLOAT_PATH_CANCEL_MAX < maxmag:
        return None
    return s


def _j_series_libmp(nu: float, x: float, prec: int):
    """One guarded-precision series pass; returns (sum, cancel_bits)."""
    xm = from_float(x)
    half_x = mpf_shift(xm, -1)
    qneg = mpf_neg(mpf_mul(half_x, half_x, prec, _RN))
    num = from_float(nu)
    t = mpf_pow(half_x, num, prec, _RN)
    t = mpf_div(t, mpf_gamma(mpf_add(num, fone, prec, _RN), prec, _RN), prec, _RN)
    s = t
    maxmag = mpf_abs(t)
    n = 0
    small = 0
    while small < 2:
        den = mpf_mul_int(mpf_add(num, from_int(n + 1), prec, _RN), n + 1, prec, _RN)
        t = mpf_div(mpf_mul(t, qneg, prec, _RN), den, prec, _RN)
        s = mpf_add(s, t, prec, _RN)
        at = mpf_abs(t)
        if mpf_lt(maxmag, at):
            maxmag = at
        if mpf_lt(at, mpf_shift(maxmag, -(prec - 10))):
            small += 1
        else:
            small = 0
        n += 1
        if n > 500:
            raise NumericFailure(f"Bessel series did not converge at nu={nu}, x={x}")
    if not s[1]:  # exact zero mantissa: no magnitude information
        return s, prec
    def _mag(v):  # floor(log2 |v|) + 1 for a normalized libmp tuple
        return v[2] + v[3]
    return s, _mag(maxmag) - _mag(s)


def _j_guarded(nu: float, x: float) -> float:
    """Ascending series in guarded precision, verified against cancellation."""
    prec = 73 + int(1.443 * x)
    for _ in range(4):
        s, cancel = _j_series_libmp(nu, x, prec)
        if cancel <= prec - 63:
            return to_float(s)
        prec += cancel - (prec - 63) + 20
    raise NumericFailure(f"could not reach target precision at nu={nu}, x={x}")


def _j_one(nu: float, x: float) -> float:
    if x <= _FLOAT_PATH_X_MAX:
        v = _j_series_float(nu, x)
        if v is not None:
            return v
    return _j_guarded(nu, x)


def _j_pair(nu: float, x: float) -> tuple[float, float]:
    """(J_nu(x), J_{nu+1}(x)) at full accuracy."""
    return _j_one(nu, x), _j_one(nu + 1.0, x)


def _j_pair_sign_quality(nu: float, x: float) -> tuple[float, float]:
    """Reduced-precision pair; accurate to ~1e-9 of the series magnitude.

    Only good for sign decisions during scanning and bisection.
    """
    if x <= _FLOAT_PATH_X_MAX:
        return _j_pair(nu, x)
    prec = 40 + int(1.443 * x)
    s0, _ = _j_series_libmp(nu, x, prec)
    s1, _ = _j_series_libmp(nu + 1.0, x, prec)
    return to_float(s0), to_float(s1)


def _check_x(x: float) -> float:
    x = float(x)
    if not (0.0 < x <= X_MAX):
        raise DomainError(f"x must lie in (0, {X_MAX:g}]")
    return x


def bessel_j(order: Order | float, x: float) -> float:
    """J_nu(x) for nu > -1 and x in (0, 60], by ascending series."""
    nu = _as_nu(order)
    return _j_one(nu, _check_x(x))


def bessel_j_prime(order: Order | float, x: float) -> float:
    """J'_nu(x) via the identity J'_nu = (nu/x) J_nu - J_{nu+1} (valid for nu > -1)."""
    nu = _as_nu(order)
    x = _check_x(x)
    j0, j1 = _j_pair(nu, x)
    return (nu / x) * j0 - j1


def _w_ratio(a: float, nu: float, n: int) -> float:
    """Factor f_n with t_{n+1} = f_n * z * t_n for the w_{a,nu} series."""
    return -(2 * n + 2 + a) / ((2 * n + a) * 4.0 * (n + 1) * (nu + n + 1))


def w_series_terms(family: DiniFamily, z: complex) -> Iterator[complex]:
    """Successive terms t_n of the w_{a,nu} power series, t_0 = z."""
    a, nu = family.a, family.nu
    t = complex(z)
    n = 0
    while True:
        yield t
        t *= _w_ratio(a, nu, n) * z
        n += 1


def _check_disk(z):
    zz = np.asarray(z, dtype=np.complex128)
    if np.any(np.abs(zz) > 1.0 + 1e-9):
        raise DomainError("w_{a,nu} is evaluated on the closed unit disk only")
    return zz


def _w_sum(a: float, nu: float, z, derivative: bool):
    """Vectorized series sum for w (or w') on |z| <= 1.

    Stops once two consecutive terms fall below 1e-16 * (1 + |partial|),
    measured in the max norm over the input array.
    """
    zz = _check_disk(z)
    t = np.ones_like(zz) if derivative else zz.copy()
    s = t.copy()
    n = 0
    small = 0
    while small < 2:
        f = _w_ratio(a, nu, n)
        if derivative:
            f *= (n + 2) / (n + 1)
        t = t * (f * zz)
        s = s + t
        tmax = float(np.max(np.abs(t)))
        smax = float(np.max(np.abs(s)))
        if tmax < 1e-16 * (1.0 + smax):
            small += 1
        else:
            small = 0
        n += 1
        if n > 400:
            raise NumericFailure("w series did not converge on the unit disk")
    return s


def w_eval(family: DiniFamily, z):
    """w_{a,nu}(z) on |z| <= 1, normalized so w(0) = 0 and w'(0) = 1.

    Accepts a scalar or an ndarray of points; scalar input returns a
    complex scalar.  The series has real coefficients, so real input z
    yields a result with imaginary part exactly zero.
    """
    out = _w_sum(family.a, family.nu, z, derivative=False)
    if np.isscalar(z) or np.ndim(z) == 0:
        return complex(out)
    return out


def w_prime_eval(family: DiniFamily, z):
    """Term-wise differentiated series of w_{a,nu}; w'(0) = 1."""
    out = _w_sum(family.a, family.nu, z, derivative=True)
    if np.isscalar(z) or np.ndim(z) == 0:
        return complex(out)
    return out


_CLOSED_FORMS = ("q_half", "q_threehalf", "r_half", "r_threehalf")


def oracle_closed_form(which: str, z: complex) -> complex:
    """Half-integer closed forms of w_{a,nu} for cross-validation.

    q_* are the a = 2 family at nu = 1/2, 3/2; r_* the a = 1 family.
    All four satisfy w(0) = 0 and w'(0) = 1 and agree with the power
    series; z = 0 returns the series limit 0.  (Either branch of sqrt(z)
    gives the same value, the combinations are entire in z.)
    """
    if which not in _CLOSED_FORMS:
        raise DomainError(f"unknown closed form {which!r}; choose from {_CLOSED_FORMS}")
    z = complex(z)
    if z == 0:
        return 0j
    s = cmath.sqrt(z)
    if which == "q_half":
        return (s / 2.0) * (cmath.sin(s) + s * cmath.cos(s))
    if which == "q_threehalf":
        return (3.0 / (2.0 * s)) * (s * cmath.cos(s) + (z - 1.0) * cmath.sin(s))
    if which == "r_half":
        return z * cmath.cos(s)
    return 3.0 * (z - 2.0) * cmath.sin(s) / s + 6.0 * cmath.cos(s)
