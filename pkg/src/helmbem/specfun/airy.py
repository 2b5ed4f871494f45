"""Airy function Ai and its derivative on the sector |arg z| < pi - 0.1.

Regimes
-------
* ``|z| <= 1``: Maclaurin series.
* ``|z| >= 9``: asymptotic expansion in ``xi = (2/3) z^{3/2}``; for
  ``|arg z| > 2pi/3`` the connection formula
  ``Ai(z) = -w Ai(wz) - w^2 Ai(w^2 z)`` (``w = exp(2pi i/3)``) brings both
  terms back into the sector where the expansion is sharp.
* in between, whichever of the Maclaurin series or an inward Taylor
  integration of ``Ai'' = z Ai`` (started from the asymptotic values at
  radius 9 on the same ray) loses fewer digits.

The series alone cannot reach 1e-10 relative accuracy near ``|z| = 9`` on the
positive axis (cancellation of order ``exp(2 xi)``), and the expansion alone is
too coarse below it, hence the middle regime.
"""

import cmath
import math

from ..errors import DomainError, SpecialFunctionOverflow
from .bessel import SpecialValue

AI0 = 0.355028053887817239260
AIP0 = -0.258819403792806798405
SECTOR_MARGIN = 0.1
R_SERIES = 1.0
R_ASYM = 9.0
_EPS = 2.220446049250313e-16
_W = cmath.exp(2j * math.pi / 3)


def _check(z):
    z = complex(z)
    if not (cmath.isfinite(z)):
        raise DomainError("Airy argument must be finite")
    if abs(z) > 1e4:
        raise DomainError("|z| > 1e4 is outside the supported range")
    if z != 0 and abs(cmath.phase(z)) >= math.pi - SECTOR_MARGIN:
        raise DomainError("argument too close to the branch cut on (-inf, 0]")
    return z


def _maclaurin(z):
    """(Ai, Ai', sum of term magnitudes) from the power series."""
    z3 = z * z * z
    f = t = 1.0 + 0j
    g = u = z
    fp = p = 0.5 * z * z
    gp = v = 1.0 + 0j
    mag = 1.0 + abs(z)
    for k in range(1, 200):
        t = t * z3 / ((3 * k - 1) * (3 * k))
        u = u * z3 / ((3 * k) * (3 * k + 1))
        v = v * z3 / ((3 * k) * (3 * k - 2))
        if k > 1:
            p = p * z3 / ((3 * k - 1) * (3 * k - 3))
            fp += p
        f += t
        g += u
        gp += v
        mag += abs(t) + abs(u)
        if abs(t) + abs(u) + abs(v) + abs(p) < 1e-18 * (abs(f) + abs(g) + 1e-300):
            break
    ai = AI0 * f + AIP0 * g
    aip = AI0 * fp + AIP0 * gp
    return ai, aip, mag


def _asym_series(z):
    """(S, Sp, xi, err): Ai = e^{-xi} S, Ai' = e^{-xi} Sp for |arg z| < pi."""
    z14 = z ** 0.25
    xi = (2.0 / 3.0) * z ** 1.5
    s = sp = 1.0 + 0j
    uk = 1.0
    prev = math.inf
    last = 0.0
    for k in range(1, 100):
        uk = uk * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216.0 * k)
        vk = -uk * (6 * k + 1) / (6 * k - 1)
        term = (-1) ** k / xi ** k
        size = abs(uk * term)
        if size > prev:
            break
        s += uk * term
        sp += vk * term
        prev = last = size
        if size < 1e-17:
            break
    norm = 1.0 / (2.0 * math.sqrt(math.pi))
    return s * norm / z14, -sp * norm * z14, xi, last + 2 * _EPS


def _asym_scaled(z):
    """(e^{xi} Ai, e^{xi} Ai', xi, rel_err) for |z| large, any allowed arg."""
    if abs(cmath.phase(z)) <= 2.0 * math.pi / 3.0:
        s, sp, xi, err = _asym_series(z)
        return s, sp, xi, err
    # rotate both pieces into |arg| < 2pi/3; their exponents are -xi and +xi
    w = _W if z.imag >= 0 else _W.conjugate()
    w2 = w * w
    s1, sp1, _, e1 = _asym_series(w * z)
    s2, sp2, _, e2 = _asym_series(w2 * z)
    xi = (2.0 / 3.0) * z ** 1.5
    damp = cmath.exp(2.0 * xi)
    ai = -w * s1 - w2 * damp * s2
    aip = -w * w * sp1 - w2 * w2 * damp * sp2
    return ai, aip, xi, max(e1, e2)


def _taylor_step(z0, y, yp, h, nterms=60):
    """Advance (Ai, Ai') from z0 to z0 + h by the Taylor series of y'' = z y."""
    c0, c1 = y, yp
    c2 = z0 * c0 / 2.0
    cs = [c0, c1, c2]
    for n in range(1, nterms):
        cs.append((z0 * cs[n] + cs[n - 1]) / ((n + 2) * (n + 1)))
    val = 0j
    der = 0j
    hp = 1.0 + 0j
    for n, c in enumerate(cs):
        val += c * hp
        if n + 1 < len(cs):
            der += (n + 1) * cs[n + 1] * hp
        hp *= h
    return val, der


def _integrate_inward(z):
    r = abs(z)
    unit = z / r
    zs = R_ASYM * unit
    a, ap, xi_s, _ = _asym_scaled(zs)
    e = cmath.exp(-xi_s)
    y, yp = a * e, ap * e
    nsteps = max(1, int(math.ceil((R_ASYM - r) / 0.25)))
    h = (z - zs) / nsteps
    zc = zs
    for _ in range(nsteps):
        y, yp = _taylor_step(zc, y, yp, h)
        zc = zc + h
    return y, yp


def _evaluate(z):
    """(Ai e^{xi}, Ai' e^{xi}, xi, relative error estimate)."""
    if z == 0:
        return complex(AI0), complex(AIP0), 0j, _EPS
    r = abs(z)
    xi = (2.0 / 3.0) * z ** 1.5
    if r >= R_ASYM:
        return _asym_scaled(z)
    c = math.cos(1.5 * cmath.phase(z))
    loss_series = abs(xi) * (1.0 + c)
    xi_r = (2.0 / 3.0) * R_ASYM ** 1.5
    loss_ode = 2.0 * max(0.0, -c) * (xi_r - abs(xi)) + 2.0
    if r <= R_SERIES or loss_series <= loss_ode:
        ai, aip, mag = _maclaurin(z)
        scale = cmath.exp(xi)
        err = 4 * _EPS * mag / max(abs(ai), 1e-300) + 1e-17
        return ai * scale, aip * scale, xi, err
    ai, aip = _integrate_inward(z)
    scale = cmath.exp(xi)
    return ai * scale, aip * scale, xi, 64 * _EPS * math.exp(loss_ode)


_LOG_MAX = math.log(1.7976931348623157e308)


def _unscale(val, xi):
    """val * exp(-xi), multiplied in log-magnitude form so the factor cannot overflow alone."""
    if -xi.real < 700.0:
        return val * cmath.exp(-xi)
    if val == 0:
        return 0j
    logmag = math.log(abs(val)) - xi.real
    if logmag > _LOG_MAX:
        raise SpecialFunctionOverflow(f"|Ai| ~ exp({logmag:.1f}) is not representable; use scaled=True")
    return cmath.rect(math.exp(logmag), cmath.phase(val) - xi.imag)


def _finish(val, xi, err, scaled, real_input):
    if not scaled:
        val = _unscale(val, xi)
    if real_input:
        val = complex(val.real, 0.0)
    return SpecialValue(val, abs(val) * err)


def airy_ai(z, scaled=False):
    """Ai(z) for ``|arg z| < pi - 0.1``, ``|z| <= 1e4``.

    Parameters
    ----------
    z : complex
    scaled : bool
        Return ``exp(xi) Ai(z)`` with ``xi = (2/3) z^{3/2}``; this stays
        representable where Ai itself under- or overflows.
    """
    z = _check(z)
    ai, _, xi, err = _evaluate(z)
    return _finish(ai, xi, err, scaled, z.imag == 0 and z.real >= 0)


def airy_ai_prime(z, scaled=False):
    """Ai'(z) on the same sector; ``scaled`` as in :func:`airy_ai`."""
    z = _check(z)
    _, aip, xi, err = _evaluate(z)
    return _finish(aip, xi, err, scaled, z.imag == 0 and z.real >= 0)
