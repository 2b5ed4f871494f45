"""Olver's uniform large-order approximations of J_m(mz), J'_m(mz), H_m(mz)."""

import cmath
import math
from dataclasses import dataclass

from ..errors import DomainError
from .airy import airy_ai, airy_ai_prime


def zeta_of_z(z):
    """Olver variable ``zeta(z) = ((3/2) int_z^1 sqrt(1-t^2)/t dt)^{2/3}``.

    The integral has the closed form ``artanh(s) - s`` with ``s = sqrt(1-z^2)``;
    for small ``s`` its Taylor series avoids the cancellation.
    """
    z = float(z)
    if not 0.0 < z < 1.0:
        raise DomainError(f"zeta_of_z needs 0 < z < 1, got {z!r}")
    s = math.sqrt((1.0 - z) * (1.0 + z))
    if s < 0.1:
        s2 = s * s
        term = s2 * s
        integral = 0.0
        n = 3
        while True:
            add = term / n
            integral += add
            if add < 1e-18 * integral:
                break
            term *= s2
            n += 2
    else:
        integral = math.atanh(s) - s
    return (1.5 * integral) ** (2.0 / 3.0)


@dataclass(frozen=True)
class UniformAsymptoticInput:
    m: int
    z: float
    zeta: float


@dataclass(frozen=True)
class UniformBesselApprox:
    """Leading-order approximations at ``x = m z``."""

    inputs: UniformAsymptoticInput
    J_approx: float
    Jp_approx: float
    H_approx: complex


def uniform_bessel(m, z):
    """Leading-order Olver approximations of J_m, J'_m and H_m^(1) at ``m z``.

    Valid in the regime ``m >= 8`` and ``0 < z <= 0.9``, where the relative
    error behaves like ``O(1/m)``.
    """
    if int(m) != m or m < 8:
        raise DomainError("uniform_bessel needs an integer order m >= 8")
    z = float(z)
    if not 0.0 < z <= 0.9:
        raise DomainError("uniform_bessel needs 0 < z <= 0.9")
    m = int(m)
    zeta = zeta_of_z(z)
    arg = m ** (2.0 / 3.0) * zeta
    pref = (4.0 * zeta / (1.0 - z * z)) ** 0.25
    ai = airy_ai(arg).value.real
    aip = airy_ai_prime(arg).value.real
    rot = cmath.exp(2j * math.pi / 3.0)
    ai_rot = airy_ai(rot * arg).value
    j = pref * m ** (-1.0 / 3.0) * ai
    jp = -(2.0 / z) / pref * m ** (-2.0 / 3.0) * aip
    h = 2.0 * cmath.exp(-1j * math.pi / 3.0) * pref * m ** (-1.0 / 3.0) * ai_rot
    return UniformBesselApprox(UniformAsymptoticInput(m, z, zeta), j, jp, h)
