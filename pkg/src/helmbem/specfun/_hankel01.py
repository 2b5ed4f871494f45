"""J0, J1, Y0, Y1 for real positive argument: the hot path of kernel evaluation.

Production route, shared by the scalar (numba) and vectorised (numpy) variants:

* ``x <= SERIES_MAX``: power series, with the logarithmic part of Y split off
  (``R0``, ``R1`` below are entire functions of ``x``);
* ``x > SERIES_MAX``: modulus/phase form
  ``H_n = sqrt(2/(pi x)) exp(i(x - n pi/2 - pi/4)) (P_n + i Q_n)`` with
  ``P_n``, ``x Q_n`` from piecewise Chebyshev interpolants in ``1/x^2``
  (see ``_hankel_cheb``; 8 terms suffice beyond x = 40).

Two independent routes are kept for cross-checking: Miller downward
recurrence normalised by ``J0 + 2*sum(J_2k) = 1`` with Y from the Neumann
series (moderate ``x``), and the Hankel large-argument expansion
(``x > ASYM_MIN``).

``R0(x) = Y0(x) - (2/pi) log(x/2) J0(x)`` and
``R1(x) = Y1(x) - (2/pi) log(x/2) J1(x) + 2/(pi x)``.
"""

import math

import numpy as np

from .._accel import njit
from ._hankel_cheb import BREAKS as _BREAKS, NTERMS as _NTERMS, VA as _VA, VB as _VB
from ._hankel_cheb import P0 as _P0, P1 as _P1, XQ0 as _XQ0, XQ1 as _XQ1

EULER_GAMMA = 0.57721566490153286061
SERIES_MAX = 6.0
ASYM_MIN = 30.5  # 30 + m^2/2 for m <= 1

_TWO_OVER_PI = 2.0 / math.pi
_SQRT_HALF = math.sqrt(0.5)


# ---------------------------------------------------------------------------
# scalar kernels (numba when enabled)
# ---------------------------------------------------------------------------
@njit
def series01(x):
    """(J0, J1, R0, R1) from the Maclaurin series."""
    q = 0.25 * x * x
    t0 = 1.0
    t1 = 1.0
    j0 = 1.0
    j1 = 1.0
    r0 = EULER_GAMMA
    s1 = 1.0 - 2.0 * EULER_GAMMA
    h = 0.0
    for k in range(1, 80):
        t0 *= -q / (k * k)
        t1 *= -q / (k * (k + 1.0))
        h += 1.0 / k
        j0 += t0
        j1 += t1
        r0 += (EULER_GAMMA - h) * t0
        s1 += (2.0 * h + 1.0 / (k + 1.0) - 2.0 * EULER_GAMMA) * t1
        if abs(t0) * (h + 1.0) < 1e-18 and abs(t1) * (h + 1.0) < 1e-18:
            break
    return j0, 0.5 * x * j1, _TWO_OVER_PI * r0, -0.5 * x * s1 / math.pi


@njit
def miller01(x):
    """(J0, J1, Y0, Y1) by Miller recurrence and Neumann series."""
    n = int(1.4 * x + 40.0)
    if n % 2 == 1:
        n += 1
    f_hi = 0.0
    f = 1e-30
    norm = 0.0
    sy0 = 0.0
    sy1 = 0.0
    f1 = 0.0
    for m in range(n, 0, -1):
        # f currently holds order m
        if m % 2 == 0:
            kk = m // 2
            norm += 2.0 * f
            if kk % 2 == 0:
                sy0 += f / kk
            else:
                sy0 -= f / kk
        else:
            j = (m - 1) // 2
            if j == 0:
                sy1 -= f
                f1 = f
            else:
                c = 1.0 / j + 1.0 / (j + 1.0)
                if j % 2 == 0:
                    sy1 -= c * f
                else:
                    sy1 += c * f
        f_lo = (2.0 * m / x) * f - f_hi
        f_hi = f
        f = f_lo
    norm += f
    j0 = f / norm
    j1 = f1 / norm
    lg = math.log(0.5 * x) + EULER_GAMMA
    y0 = _TWO_OVER_PI * lg * j0 - 2.0 * _TWO_OVER_PI * sy0 / norm
    y1 = -_TWO_OVER_PI * j0 / x + _TWO_OVER_PI * lg * j1 + _TWO_OVER_PI * sy1 / norm
    return j0, j1, y0, y1


@njit
def asym01(x):
    """(J0, J1, Y0, Y1) from the Hankel expansion; accurate for x > ASYM_MIN."""
    inv8x = 1.0 / (8.0 * x)
    p0 = 1.0
    q0 = 0.0
    p1 = 1.0
    q1 = 0.0
    # t = i^k a_k(nu) / x^k, tracked as real/imag parts
    t0r = 1.0
    t0i = 0.0
    t1r = 1.0
    t1i = 0.0
    for k in range(1, 60):
        odd2 = (2.0 * k - 1.0) ** 2
        c0 = (0.0 - odd2) * inv8x / k
        c1 = (4.0 - odd2) * inv8x / k
        # multiply by i*c
        t0r, t0i = -t0i * c0, t0r * c0
        t1r, t1i = -t1i * c1, t1r * c1
        p0 += t0r
        q0 += t0i
        p1 += t1r
        q1 += t1i
        if abs(t0r) + abs(t0i) + abs(t1r) + abs(t1i) < 1e-17:
            break
    amp = math.sqrt(_TWO_OVER_PI / x)
    # cos/sin(x - pi/4) expanded so that x itself is never rounded
    cx, sx = math.cos(x), math.sin(x)
    c = _SQRT_HALF * (cx + sx)
    s = _SQRT_HALF * (sx - cx)
    # H0 = amp * (c + i s) * (p0 + i q0)
    j0 = amp * (c * p0 - s * q0)
    y0 = amp * (s * p0 + c * q0)
    # H1 phase is x - 3pi/4: (c + i s) * (-i) = s - i c
    j1 = amp * (s * p1 + c * q1)
    y1 = amp * (-c * p1 + s * q1)
    return j0, j1, y0, y1


@njit
def _amp_phase01(x):
    """(J0, J1, Y0, Y1) from P_n, Q_n and the phase."""
    iv = 3
    while iv > 0 and x < _BREAKS[iv]:
        iv -= 1
    v = 1.0 / (x * x)
    z = (2.0 * v - (_VA[iv] + _VB[iv])) / (_VB[iv] - _VA[iv])
    z2 = 2.0 * z
    # Clenshaw, four series at once
    b0 = b1 = c0 = c1 = d0 = d1 = e0 = e1 = 0.0
    for i in range(_NTERMS[iv] - 1, 0, -1):
        b0, b1 = z2 * b0 - b1 + _P0[iv, i], b0
        c0, c1 = z2 * c0 - c1 + _XQ0[iv, i], c0
        d0, d1 = z2 * d0 - d1 + _P1[iv, i], d0
        e0, e1 = z2 * e0 - e1 + _XQ1[iv, i], e0
    p0 = z * b0 - b1 + _P0[iv, 0]
    q0 = (z * c0 - c1 + _XQ0[iv, 0]) / x
    p1 = z * d0 - d1 + _P1[iv, 0]
    q1 = (z * e0 - e1 + _XQ1[iv, 0]) / x
    amp = math.sqrt(_TWO_OVER_PI / x)
    # cos/sin(x - pi/4) expanded so that x itself is never rounded
    cx, sx = math.cos(x), math.sin(x)
    c = _SQRT_HALF * (cx + sx)
    s = _SQRT_HALF * (sx - cx)
    return (amp * (c * p0 - s * q0), amp * (s * p1 + c * q1),
            amp * (s * p0 + c * q0), amp * (-c * p1 + s * q1))


@njit
def bessel01(x):
    """(J0, J1, Y0, Y1) for x > 0."""
    if x <= SERIES_MAX:
        j0, j1, r0, r1 = series01(x)
        lg = _TWO_OVER_PI * math.log(0.5 * x)
        return j0, j1, r0 + lg * j0, r1 + lg * j1 - _TWO_OVER_PI / x
    return _amp_phase01(x)


# ---------------------------------------------------------------------------
# vectorised numpy variants
# ---------------------------------------------------------------------------
def series01_np(x):
    x = np.asarray(x, dtype=float)
    q = 0.25 * x * x
    t0 = np.ones_like(x)
    t1 = np.ones_like(x)
    j0 = np.ones_like(x)
    j1 = np.ones_like(x)
    r0 = np.full_like(x, EULER_GAMMA)
    s1 = np.full_like(x, 1.0 - 2.0 * EULER_GAMMA)
    h = 0.0
    qmax = float(q.max()) if q.size else 0.0
    for k in range(1, 80):
        t0 = t0 * (-q / (k * k))
        t1 = t1 * (-q / (k * (k + 1.0)))
        h += 1.0 / k
        j0 += t0
        j1 += t1
        r0 += (EULER_GAMMA - h) * t0
        s1 += (2.0 * h + 1.0 / (k + 1.0) - 2.0 * EULER_GAMMA) * t1
        # largest-argument term bounds every other one
        tmax = qmax**k / math.factorial(k) ** 2
        if tmax * (h + 1.0) < 1e-18:
            break
    return j0, 0.5 * x * j1, _TWO_OVER_PI * r0, -0.5 * x * s1 / math.pi


def miller01_np(x):
    x = np.asarray(x, dtype=float)
    if x.size == 0:
        z = np.zeros_like(x)
        return z, z, z, z
    n = int(1.4 * float(x.max()) + 40.0)
    n += n % 2
    f_hi = np.zeros_like(x)
    f = np.full_like(x, 1e-30)
    norm = np.zeros_like(x)
    sy0 = np.zeros_like(x)
    sy1 = np.zeros_like(x)
    f1 = np.zeros_like(x)
    for m in range(n, 0, -1):
        if m % 2 == 0:
            kk = m // 2
            norm += 2.0 * f
            sy0 += f / kk if kk % 2 == 0 else -f / kk
        else:
            j = (m - 1) // 2
            if j == 0:
                sy1 -= f
                f1 = f.copy()
            else:
                c = 1.0 / j + 1.0 / (j + 1.0)
                sy1 += -c * f if j % 2 == 0 else c * f
        f_lo = (2.0 * m / x) * f - f_hi
        f_hi = f
        f = f_lo
        # keep the recurrence in range for widely spread batches
        big = np.abs(f) > 1e250
        if big.any():
            s = np.where(big, 1e-250, 1.0)
            f *= s
            f_hi *= s
            norm *= s
            sy0 *= s
            sy1 *= s
            f1 *= s
    norm += f
    j0 = f / norm
    j1 = f1 / norm
    lg = np.log(0.5 * x) + EULER_GAMMA
    y0 = _TWO_OVER_PI * lg * j0 - 2.0 * _TWO_OVER_PI * sy0 / norm
    y1 = -_TWO_OVER_PI * j0 / x + _TWO_OVER_PI * lg * j1 + _TWO_OVER_PI * sy1 / norm
    return j0, j1, y0, y1


def asym01_np(x):
    x = np.asarray(x, dtype=float)
    inv8x = 1.0 / (8.0 * x)
    p0 = np.ones_like(x)
    q0 = np.zeros_like(x)
    p1 = np.ones_like(x)
    q1 = np.zeros_like(x)
    t0r = np.ones_like(x)
    t0i = np.zeros_like(x)
    t1r = np.ones_like(x)
    t1i = np.zeros_like(x)
    xmin = float(x.min()) if x.size else 1.0
    for k in range(1, 60):
        odd2 = (2.0 * k - 1.0) ** 2
        c0 = -odd2 * inv8x / k
        c1 = (4.0 - odd2) * inv8x / k
        t0r, t0i = -t0i * c0, t0r * c0
        t1r, t1i = -t1i * c1, t1r * c1
        p0 += t0r
        q0 += t0i
        p1 += t1r
        q1 += t1i
        # terms are largest at the smallest argument
        bound = float(np.max(np.abs(t0r) + np.abs(t0i) + np.abs(t1r) + np.abs(t1i)))
        if bound < 1e-17 or (odd2 / (8.0 * k * xmin) > 1.0):
            break
    amp = np.sqrt(_TWO_OVER_PI / x)
    cx, sx = np.cos(x), np.sin(x)
    c = _SQRT_HALF * (cx + sx)
    s = _SQRT_HALF * (sx - cx)
    j0 = amp * (c * p0 - s * q0)
    y0 = amp * (s * p0 + c * q0)
    j1 = amp * (s * p1 + c * q1)
    y1 = amp * (-c * p1 + s * q1)
    return j0, j1, y0, y1


def _amp_phase01_np(x):
    x = np.asarray(x, dtype=float)
    iv = np.searchsorted(_BREAKS, x, side="right") - 1
    v = 1.0 / (x * x)
    va, vb = _VA[iv], _VB[iv]
    z = (2.0 * v - (va + vb)) / (vb - va)
    z2 = 2.0 * z
    out = []
    for tab in (_P0, _XQ0, _P1, _XQ1):
        coef = tab[iv]
        b0 = np.zeros_like(x)
        b1 = np.zeros_like(x)
        for i in range(tab.shape[1] - 1, 0, -1):   # zero padding is harmless
            b0, b1 = z2 * b0 - b1 + coef[:, i], b0
        out.append(z * b0 - b1 + coef[:, 0])
    p0, q0, p1, q1 = out[0], out[1] / x, out[2], out[3] / x
    amp = np.sqrt(_TWO_OVER_PI / x)
    # cos/sin(x - pi/4) expanded so that x itself is never rounded
    cx, sx = np.cos(x), np.sin(x)
    c = _SQRT_HALF * (cx + sx)
    s = _SQRT_HALF * (sx - cx)
    return (amp * (c * p0 - s * q0), amp * (s * p1 + c * q1),
            amp * (s * p0 + c * q0), amp * (-c * p1 + s * q1))


def bessel01_np(x):
    """Vectorised (J0, J1, Y0, Y1) for an array of positive arguments."""
    x = np.asarray(x, dtype=float)
    shape = x.shape
    x = x.ravel()
    out = [np.empty_like(x) for _ in range(4)]
    lo = x <= SERIES_MAX
    if lo.any():
        xs = x[lo]
        j0, j1, r0, r1 = series01_np(xs)
        lg = _TWO_OVER_PI * np.log(0.5 * xs)
        vals = (j0, j1, r0 + lg * j0, r1 + lg * j1 - _TWO_OVER_PI / xs)
        for o, v in zip(out, vals):
            o[lo] = v
    hi = ~lo
    if hi.any():
        for o, v in zip(out, _amp_phase01_np(x[hi])):
            o[hi] = v
    return tuple(o.reshape(shape) for o in out)


def split01_np(x):
    """(J0, J1, R0, R1): Bessel J and the entire remainders of Y0, Y1.

    Used where the logarithm is integrated analytically, so small arguments
    go through the series (no cancellation between Y and its log part).
    """
    x = np.asarray(x, dtype=float)
    shape = x.shape
    x = x.ravel()
    out = [np.empty_like(x) for _ in range(4)]
    lo = x <= SERIES_MAX
    if lo.any():
        for o, v in zip(out, series01_np(x[lo])):
            o[lo] = v
    if (~lo).any():
        xs = x[~lo]
        j0, j1, y0, y1 = bessel01_np(xs)
        lg = _TWO_OVER_PI * np.log(0.5 * xs)
        vals = (j0, j1, y0 - lg * j0, y1 - lg * j1 + _TWO_OVER_PI / xs)
        for o, v in zip(out, vals):
            o[~lo] = v
    return tuple(o.reshape(shape) for o in out)
