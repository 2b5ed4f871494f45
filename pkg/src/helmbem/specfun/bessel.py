"""Bessel J_m and Hankel H_m^(1) of integer order and real argument.

All orders 0..mmax are produced together in a :class:`BesselTable`. Values are
stored as ``mantissa * 2**exponent`` so that J_m (which underflows) and Y_m
(which overflows) stay usable for orders far beyond the argument; products such
as ``J_m * Y_m`` are formed on mantissas and exponents separately.

J is computed by Miller's downward recurrence normalised with
``J_0 + 2 sum_k J_2k = 1``; Y_0 and Y_1 come from the order-0/1 kernels and
higher orders from the (stable) upward recurrence. For small orders and large
argument (``x > 30 + (m+1)^2/2``) the scalar functions use the Hankel
expansion directly.
"""

import math
from dataclasses import dataclass

import numpy as np

from .._accel import njit
from ..errors import DomainError, SpecialFunctionOverflow
from ._hankel01 import bessel01

_EPS = np.finfo(float).eps
_SHIFT = 500  # rescale by 2**-500 whenever |value| exceeds 2**500
_BIG = 2.0**_SHIFT
_SMALL = 2.0**-_SHIFT


@dataclass(frozen=True)
class SpecialValue:
    """A special-function value with a heuristic absolute error estimate."""

    value: complex
    abs_err_est: float

    def __complex__(self):
        return complex(self.value)

    def __float__(self):
        return float(np.real(self.value))


def _log_j_estimate(n, x):
    """Rough log|J_n(x)| (Debye leading term), used to pick a Miller start."""
    if n <= x + 1.0:
        return -0.5 * math.log(max(x, 1.0))
    th = math.sqrt(1.0 - (x / n) ** 2)
    alpha = math.acosh(n / x)
    th_eff = max(th, n ** (-1.0 / 3.0))
    return n * (th - alpha) - 0.5 * math.log(2.0 * math.pi * n * th_eff)


def miller_start(mmax, x):
    """Start order for downward recurrence delivering J_0..J_mmax to ~1e-17."""
    if x == 0.0:
        return mmax + 2
    target = min(_log_j_estimate(mmax, x), _log_j_estimate(x, x)) - 42.0
    n = max(mmax, int(math.ceil(x))) + 10
    while _log_j_estimate(n, x) > target:
        n += max(2, n // 64)
    n += 20
    return n + (n % 2)


@njit
def _miller_scaled(x, n, mmax, j, je):
    """Fill j, je (length mmax+1) with J_m = j*2**je by Miller recurrence."""
    vals = np.empty(n + 1)
    sc = np.empty(n + 1, dtype=np.int64)
    f_hi = 0.0
    f = 1.0
    s = 0
    vals[n] = f
    sc[n] = 0
    for m in range(n, 0, -1):
        f_lo = (2.0 * m / x) * f - f_hi
        f_hi = f
        f = f_lo
        if abs(f) > 2.0**500:
            f *= 2.0**-500
            f_hi *= 2.0**-500
            s += 1
        vals[m - 1] = f
        sc[m - 1] = s
    s_fin = s
    norm = 0.0
    for m in range(0, n + 1, 2):
        d = int(500 * (sc[m] - s_fin))
        if d < -1070:
            break
        c = 1.0 if m == 0 else 2.0
        norm += c * math.ldexp(vals[m], d)
    for m in range(mmax + 1):
        fr, e = math.frexp(vals[m] / norm)
        j[m] = fr
        je[m] = e + 500 * (sc[m] - s_fin)


@njit
def _upward_scaled(x, y0, y1, mmax, y, ye):
    """Fill y, ye with Y_m = y*2**ye by forward recurrence from Y_0, Y_1."""
    a = y0
    b = y1
    s = 0
    fr, e = math.frexp(a)
    y[0] = fr
    ye[0] = e
    if mmax >= 1:
        fr, e = math.frexp(b)
        y[1] = fr
        ye[1] = e
    for m in range(1, mmax):
        c = (2.0 * m / x) * b - a
        a = b
        b = c
        if abs(b) > 2.0**500:
            a *= 2.0**-500
            b *= 2.0**-500
            s += 1
        fr, e = math.frexp(b)
        y[m + 1] = fr
        ye[m + 1] = e + 500 * s


def _combine(a, ea, b, eb, ca=1.0, cb=1.0):
    """Scaled ``ca*a*2**ea + cb*b*2**eb`` as (mantissa, exponent) arrays."""
    e = np.maximum(ea, eb)
    v = ca * np.ldexp(a, ea - e) + cb * np.ldexp(b, eb - e)
    fr, de = np.frexp(v)
    out_e = e + de
    out_e = np.where(fr == 0.0, 0, out_e)
    return fr, out_e


@dataclass(frozen=True)
class BesselTable:
    """J_m, J'_m, Y_m, Y'_m for m = 0..mmax at one argument, exponent-scaled.

    ``J_m = j[m] * 2**j_exp[m]`` and similarly for the other three arrays.
    """

    x: float
    mmax: int
    j: np.ndarray
    j_exp: np.ndarray
    jp: np.ndarray
    jp_exp: np.ndarray
    y: np.ndarray
    y_exp: np.ndarray
    yp: np.ndarray
    yp_exp: np.ndarray
    start_order: int

    @property
    def orders(self):
        return np.arange(self.mmax + 1)

    def J(self):
        return np.ldexp(self.j, self.j_exp)

    def Jp(self):
        return np.ldexp(self.jp, self.jp_exp)

    def Y(self):
        with np.errstate(over="ignore"):
            return np.ldexp(self.y, self.y_exp)

    def Yp(self):
        with np.errstate(over="ignore"):
            return np.ldexp(self.yp, self.yp_exp)

    def H(self):
        return self.J() + 1j * self.Y()

    def Hp(self):
        return self.Jp() + 1j * self.Yp()

    @staticmethod
    def product(a, ea, b, eb):
        """``(a*2**ea) * (b*2**eb)`` evaluated without intermediate overflow."""
        with np.errstate(over="ignore", under="ignore"):
            return np.ldexp(a * b, ea + eb)


def bessel_table(mmax, x):
    """Exponent-scaled J, J', Y, Y' for orders 0..mmax at argument ``x > 0``."""
    mmax = int(mmax)
    x = float(x)
    if mmax < 0:
        raise DomainError("mmax must be non-negative")
    if not x > 0.0 or not math.isfinite(x):
        raise DomainError(f"bessel_table needs a finite x > 0, got {x!r}")
    top = mmax + 1
    n = miller_start(top, x)
    j = np.empty(top + 1)
    je = np.empty(top + 1, dtype=np.int64)
    _miller_scaled(x, n, top, j, je)
    _, _, y0, y1 = bessel01(x)
    y = np.empty(top + 1)
    ye = np.empty(top + 1, dtype=np.int64)
    _upward_scaled(x, y0, y1, top, y, ye)

    jp = np.empty(top)
    jpe = np.empty(top, dtype=np.int64)
    yp = np.empty(top)
    ype = np.empty(top, dtype=np.int64)
    jp[0], jpe[0] = -j[1], je[1]
    yp[0], ype[0] = -y[1], ye[1]
    if mmax >= 1:
        a, ea = _combine(j[:-2], je[:-2], j[2:], je[2:], 0.5, -0.5)
        jp[1:], jpe[1:] = a, ea
        b, eb = _combine(y[:-2], ye[:-2], y[2:], ye[2:], 0.5, -0.5)
        yp[1:], ype[1:] = b, eb
    return BesselTable(
        x=x, mmax=mmax,
        j=j[:top].copy(), j_exp=je[:top].copy(), jp=jp, jp_exp=jpe,
        y=y[:top].copy(), y_exp=ye[:top].copy(), yp=yp, yp_exp=ype,
        start_order=n,
    )


# ---------------------------------------------------------------------------
# scalar API
# ---------------------------------------------------------------------------
def _hankel_asymptotic(m, x):
    """H_m^(1)(x) from the large-argument expansion, with last-term estimate."""
    mu = 4.0 * m * m
    t = 1.0 + 0.0j
    s = 1.0 + 0.0j
    for k in range(1, 80):
        fac = (mu - (2.0 * k - 1.0) ** 2) / (8.0 * k * x)
        t_new = t * 1j * fac
        if abs(t_new) > abs(t) and k > 1:
            break
        t = t_new
        s += t
        if abs(t) < 1e-17:
            break
    amp = math.sqrt(2.0 / (math.pi * x))
    ph = x - 0.5 * m * math.pi - 0.25 * math.pi
    return amp * complex(math.cos(ph), math.sin(ph)) * s, amp * abs(t)


def _check_order(m, x):
    if int(m) != m or m < 0:
        raise DomainError(f"order must be a non-negative integer, got {m!r}")
    if x < 0:
        raise DomainError(f"argument must be non-negative, got {x!r}")
    if m > 4.0 * x + 2000.0:
        raise DomainError("order beyond supported range m <= 4x + 2000")


def _use_asymptotic(m, x):
    return x > 30.0 + 0.5 * (m + 1) ** 2


def _scalar_values(m, x):
    """(J, J', Y, Y', err) at a single (m, x)."""
    if _use_asymptotic(m, x):
        h, err = _hankel_asymptotic(m, x)
        if m == 0:
            h1, err1 = _hankel_asymptotic(1, x)
            hp = -h1
        else:
            hm1, err1 = _hankel_asymptotic(m - 1, x)
            hp = hm1 - (m / x) * h
        err = max(err, err1) + 8 * _EPS * abs(h)
        return h.real, hp.real, h.imag, hp.imag, err
    tab = bessel_table(m, x)
    with np.errstate(over="ignore", under="ignore"):
        jv = math.ldexp(tab.j[m], int(tab.j_exp[m]))
        jpv = math.ldexp(tab.jp[m], int(tab.jp_exp[m])) if tab.jp_exp[m] > -1100 else 0.0
        try:
            yv = math.ldexp(tab.y[m], int(tab.y_exp[m]))
            ypv = math.ldexp(tab.yp[m], int(tab.yp_exp[m]))
        except OverflowError:
            yv = ypv = math.inf
    err = 4.0 * _EPS * math.sqrt(tab.start_order) * max(abs(jv), 1e-300)
    return jv, jpv, yv, ypv, err


def bessel_j(m, x):
    """Bessel function of the first kind J_m(x), integer ``m >= 0``, ``x >= 0``."""
    x = float(x)
    _check_order(m, x)
    if x == 0.0:
        return SpecialValue(1.0 if m == 0 else 0.0, 0.0)
    jv, _, _, _, err = _scalar_values(int(m), x)
    return SpecialValue(jv, err)


def bessel_j_prime(m, x):
    """Derivative J'_m(x)."""
    x = float(x)
    _check_order(m, x)
    if x == 0.0:
        return SpecialValue(0.5 if m == 1 else 0.0, 0.0)
    _, jpv, _, _, err = _scalar_values(int(m), x)
    return SpecialValue(jpv, err * (1.0 + m / x))


def bessel_y(m, x):
    """Bessel function of the second kind Y_m(x), ``x > 0``."""
    x = float(x)
    _check_order(m, x)
    if x == 0.0:
        raise DomainError("Y_m has a singularity at x = 0")
    _, _, yv, _, err = _scalar_values(int(m), x)
    if not math.isfinite(yv):
        raise SpecialFunctionOverflow(f"|Y_{m}({x})| exceeds double range")
    return SpecialValue(yv, max(err, 4.0 * _EPS * abs(yv)))


def hankel1(m, x):
    """Hankel function of the first kind H_m^(1)(x) = J_m(x) + i Y_m(x)."""
    x = float(x)
    _check_order(m, x)
    if x <= 0.0:
        raise DomainError("H_m^(1) is singular at x = 0 (log/pole of Y)")
    jv, _, yv, _, err = _scalar_values(int(m), x)
    if not math.isfinite(yv):
        raise SpecialFunctionOverflow(f"|H_{m}({x})| exceeds double range")
    return SpecialValue(complex(jv, yv), max(err, 4.0 * _EPS * abs(yv)))


def hankel1_prime(m, x):
    """Derivative of H_m^(1)."""
    x = float(x)
    _check_order(m, x)
    if x <= 0.0:
        raise DomainError("H_m^(1)' is singular at x = 0")
    _, jpv, _, ypv, err = _scalar_values(int(m), x)
    if not math.isfinite(ypv):
        raise SpecialFunctionOverflow(f"|H_{m}'({x})| exceeds double range")
    return SpecialValue(complex(jpv, ypv), max(err, 4.0 * _EPS * abs(ypv)) * (1.0 + m / x))
