"""Bessel, Hankel and Airy functions, the zeta map and uniform large-order asymptotics."""

from ._hankel01 import bessel01, bessel01_np
from .airy import airy_ai, airy_ai_prime
from .bessel import (
    BesselTable,
    SpecialValue,
    bessel_j,
    bessel_j_prime,
    bessel_table,
    bessel_y,
    hankel1,
    hankel1_prime,
)
from .uniform import UniformAsymptoticInput, UniformBesselApprox, uniform_bessel, zeta_of_z

__all__ = [
    "BesselTable", "SpecialValue", "UniformAsymptoticInput", "UniformBesselApprox",
    "airy_ai", "airy_ai_prime", "bessel01", "bessel01_np", "bessel_j", "bessel_j_prime",
    "bessel_table", "bessel_y", "hankel1", "hankel1_prime", "uniform_bessel", "zeta_of_z",
]
