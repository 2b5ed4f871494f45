"""Helmholtz fundamental solution in 2-d and the layer-potential kernels.

``Phi(x, y) = (i/4) H0(k|x-y|)``. The double-layer kernels are

* ``dPhi/dnu(y) = (ik/4) H1(kr) (x-y).nu(y) / r``
* ``dPhi/dnu(x) = (ik/4) H1(kr) (y-x).nu(x) / r``

The kernel functions below take :class:`KernelPoint` records and include the
Jacobian ``|gamma'(s)|`` of the integration variable, so they integrate in the
curve parameter directly.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import CoincidenceError
from .specfun._hankel01 import bessel01, bessel01_np, split01_np

_TWO_PI = 2.0 * math.pi


class KernelFormulation(enum.Enum):
    AK = "Ak"              # 1/2 I + D_k - ik S_k, kernel dPhi/dnu(y)
    AK_PRIME = "AkPrime"   # 1/2 I + D'_k - ik S_k, kernel dPhi/dnu(x)


@dataclass(frozen=True)
class KernelPoint:
    t: float
    x: np.ndarray
    nu: np.ndarray
    jac: float

    @classmethod
    def on(cls, curve, t):
        t = float(t)
        return cls(t, curve.gamma(t), curve.normal(t), float(curve.jac(t)))


def _h01(x):
    j0, j1, y0, y1 = bessel01(float(x))
    return complex(j0, y0), complex(j1, y1)


def phi_k(k, x, y):
    """``(i/4) H0^(1)(k |x - y|)``."""
    d = np.asarray(x, dtype=float) - np.asarray(y, dtype=float)
    r = math.hypot(d[0], d[1])
    if r == 0.0:
        raise CoincidenceError("Phi_k is singular at x = y")
    h0, _ = _h01(k * r)
    return 0.25j * h0


def _pair(xp, yp):
    d = np.asarray(xp.x, dtype=float) - np.asarray(yp.x, dtype=float)
    r = math.hypot(d[0], d[1])
    if r == 0.0:
        raise CoincidenceError("layer kernels are singular at coincident points")
    return d, r


def kernel_S(k, xp, yp):
    """``Phi(x, y) |gamma'(s)|``."""
    _, r = _pair(xp, yp)
    h0, _ = _h01(k * r)
    return 0.25j * h0 * yp.jac


def kernel_Dy(k, xp, yp):
    """``dPhi(x, y)/dnu(y) |gamma'(s)|``."""
    d, r = _pair(xp, yp)
    _, h1 = _h01(k * r)
    return 0.25j * k * h1 * float(d @ yp.nu) / r * yp.jac


def kernel_Dx(k, xp, yp):
    """``dPhi(x, y)/dnu(x) |gamma'(s)|``."""
    d, r = _pair(xp, yp)
    _, h1 = _h01(k * r)
    return -0.25j * k * h1 * float(d @ xp.nu) / r * yp.jac


def combined_kernel(formulation, k, xp, yp):
    """Kernel of ``D_k - ik S_k`` (Ak) or ``D'_k - ik S_k`` (AkPrime)."""
    formulation = KernelFormulation(formulation) if not isinstance(formulation, KernelFormulation) else formulation
    dpart = kernel_Dy if formulation is KernelFormulation.AK else kernel_Dx
    return dpart(k, xp, yp) - 1j * k * kernel_S(k, xp, yp)


# ---------------------------------------------------------------------------
# vectorised forms used by assembly and field evaluation
# ---------------------------------------------------------------------------
def hankel01_np(x):
    j0, j1, y0, y1 = bessel01_np(x)
    return j0 + 1j * y0, j1 + 1j * y1


def combined_kernel_np(k, d, r, nu_x, nu_y, formulation):
    """Combined kernel (physical measure) for chord ``d = x - y`` of shape (2, ...)."""
    h0, h1 = hankel01_np(k * r)
    if formulation is KernelFormulation.AK:
        n = d[0] * nu_y[0] + d[1] * nu_y[1]
    else:
        n = -(d[0] * nu_x[0] + d[1] * nu_x[1])
    return 0.25j * k * h1 * n / r + 0.25 * k * h0


def split_kernel_np(k, d, r, rho, n, with_s=True):
    """Log-split of ``D - ik S`` near the diagonal.

    With ``rho`` the parameter distance ``|t - s|`` and ``n`` the normal
    projection (``(x-y).nu(y)`` or ``(y-x).nu(x)``), returns ``(A, B)`` with
    ``kernel = A ln(rho) + B``, both smooth in (t, s).
    """
    kr = k * r
    j0, j1, r0, r1 = split01_np(kr)
    lg = math.log(0.5 * k) + np.log(r / rho)
    nr = n / r
    a = -(k / _TWO_PI) * j1 * nr
    b = (0.25j * k * j1 - 0.25 * k * r1 - (k / _TWO_PI) * j1 * lg) * nr + n / (_TWO_PI * r * r)
    if with_s:
        a_s = -j0 / _TWO_PI
        b_s = 0.25j * j0 - 0.25 * r0 - j0 / _TWO_PI * lg
        a = a - 1j * k * a_s
        b = b - 1j * k * b_s
    return a, b
