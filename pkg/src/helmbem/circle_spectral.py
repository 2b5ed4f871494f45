"""Exact Fourier-multiplier realisation of the boundary operators on the unit circle.

On ``gamma(t) = (cos t, sin t)`` every operator in the combined-field setting
is diagonal in the basis ``e_m(t) = exp(imt)/sqrt(2 pi)``. With
``J = J_|m|(k)``, ``H = H^(1)_|m|(k)``:

* ``2 A_k``:            ``lambda_m = pi k H (i J' + J)``
* single layer ``S_k``: ``s_m = (i pi / 2) J H``
* double layer ``D_k``: ``d_m``, fixed by ``1 + 2 d_m - 2ik s_m = lambda_m``
* exterior DtN:         ``k H'/H``
* interior ItD (impedance ``d_nu u - ik u = g``): ``J / (k J' - ik J)``

Products such as ``J H`` are formed from exponent-scaled Bessel tables, so any
order is available even where ``J`` underflows and ``Y`` overflows.
"""

import enum
import math
import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .errors import MultiplierSingularityError, TruncationWarning
from .specfun.bessel import BesselTable, bessel_table

SQRT_2PI = math.sqrt(2.0 * math.pi)


# ---------------------------------------------------------------------------
# Fourier coefficients
# ---------------------------------------------------------------------------
@dataclass
class FourierCoefficients:
    """Coefficients of ``sum_m c_m exp(imt)/sqrt(2 pi)`` for ``m = -M..M``."""

    M: int
    coeffs: np.ndarray

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=complex)
        if self.coeffs.shape != (2 * self.M + 1,):
            raise ValueError(f"expected {2 * self.M + 1} coefficients, got {self.coeffs.shape}")

    @property
    def modes(self):
        return np.arange(-self.M, self.M + 1)

    @classmethod
    def zeros(cls, M):
        return cls(M, np.zeros(2 * M + 1, dtype=complex))

    @classmethod
    def single_mode(cls, M, m, value=1.0):
        v = cls.zeros(M)
        v.coeffs[m + M] = value
        return v

    @classmethod
    def from_function(cls, f, M, n_samples=None):
        """Coefficients of a smooth 2pi-periodic ``f`` by the trapezoid rule (FFT)."""
        n = n_samples or max(4 * M + 8, 64)
        t = 2.0 * np.pi * np.arange(n) / n
        vals = np.asarray(f(t), dtype=complex)
        fh = np.fft.fft(vals) * (SQRT_2PI / n)
        m = np.arange(-M, M + 1)
        return cls(M, fh[m % n])

    def __call__(self, t):
        """Evaluate the truncated series at parameter values ``t``."""
        t = np.asarray(t, dtype=float)
        phase = np.exp(1j * np.multiply.outer(t, self.modes))
        return phase @ self.coeffs / SQRT_2PI

    def norm(self):
        """L2 norm on the circle (Parseval)."""
        return float(np.linalg.norm(self.coeffs))

    def padded(self, M):
        """Same function with truncation raised (or lowered) to ``M``."""
        out = FourierCoefficients.zeros(M)
        lo = min(M, self.M)
        out.coeffs[M - lo:M + lo + 1] = self.coeffs[self.M - lo:self.M + lo + 1]
        return out

    def __add__(self, other):
        _same_band(self, other)
        return FourierCoefficients(self.M, self.coeffs + other.coeffs)

    def __sub__(self, other):
        _same_band(self, other)
        return FourierCoefficients(self.M, self.coeffs - other.coeffs)

    def __mul__(self, alpha):
        return FourierCoefficients(self.M, alpha * self.coeffs)

    __rmul__ = __mul__


def _same_band(a, b):
    if a.M != b.M:
        raise ValueError("coefficient sequences have different truncations")


def sobolev_norm(v, s):
    """``(sum (1+m^2)^s |v_m|^2)^{1/2}``; ``s = 0`` is the L2 norm."""
    w = (1.0 + v.modes.astype(float) ** 2) ** s
    return float(np.sqrt(np.sum(w * np.abs(v.coeffs) ** 2)))


# ---------------------------------------------------------------------------
# multiplier tables
# ---------------------------------------------------------------------------
class CircleSymbols(NamedTuple):
    """All multipliers at orders ``0..M`` for one wavenumber."""

    k: float
    lam: np.ndarray
    s: np.ndarray
    d: np.ndarray
    dtn: np.ndarray
    itd: np.ndarray
    J: np.ndarray
    Jp: np.ndarray
    inv_h: np.ndarray


def _scaled_complex(re, re_e, im, im_e):
    """``re*2**re_e + i*im*2**im_e`` as (complex mantissa, common exponent)."""
    e = np.maximum(re_e, im_e)
    with np.errstate(under="ignore"):
        z = np.ldexp(re, re_e - e) + 1j * np.ldexp(im, im_e - e)
    return z, e


def _cldexp(z, e):
    return np.ldexp(z.real, e) + 1j * np.ldexp(z.imag, e)


@lru_cache(maxsize=64)
def circle_symbols(k, M):
    """Multiplier arrays for ``|m| = 0..M`` at wavenumber ``k`` (cached)."""
    k = float(k)
    M = int(M)
    if not k > 0:
        raise ValueError("wavenumber must be positive")
    tab = bessel_table(M, k)
    prod = BesselTable.product
    jj = prod(tab.j, tab.j_exp, tab.j, tab.j_exp)
    jy = prod(tab.j, tab.j_exp, tab.y, tab.y_exp)
    jpj = prod(tab.jp, tab.jp_exp, tab.j, tab.j_exp)
    jpy = prod(tab.jp, tab.jp_exp, tab.y, tab.y_exp)
    hj = jj + 1j * jy       # H J
    hjp = jpj + 1j * jpy    # H J'
    lam = np.pi * k * (1j * hjp + hj)
    s = 0.5j * np.pi * hj
    d = 0.5 * (lam - 1.0 + 2j * k * s)

    h, he = _scaled_complex(tab.j, tab.j_exp, tab.y, tab.y_exp)
    hp, hpe = _scaled_complex(tab.jp, tab.jp_exp, tab.yp, tab.yp_exp)
    with np.errstate(under="ignore", over="ignore"):
        dtn = k * _cldexp(hp / h, hpe - he)
        inv_h = _cldexp(1.0 / h, -he)
        jp_rel = np.ldexp(tab.jp, tab.jp_exp - tab.j_exp)  # J'/J scaled by 2**je
        den = k * jp_rel - 1j * k * tab.j
        if np.any(np.abs(den) < 1e-300) or not np.all(np.isfinite(den)):
            raise MultiplierSingularityError("impedance denominator k J' - ik J vanished")
        itd = tab.j / den
        J = tab.J()
        Jp = tab.Jp()
    return CircleSymbols(k, lam, s, d, dtn, itd, J, Jp, inv_h)


def _orders(m):
    return np.abs(np.asarray(m, dtype=np.int64))


def lambda_m(k, m):
    """Eigenvalue of ``2 A_k`` at Fourier mode ``m`` (``lambda_m = lambda_{-m}``)."""
    ma = _orders(m)
    out = circle_symbols(float(k), int(ma.max(initial=0))).lam[ma]
    return complex(out) if np.ndim(m) == 0 else out


@dataclass(frozen=True)
class LayerMultipliers:
    s_m: complex
    d_m: complex


def layer_multipliers(k, m):
    """Single- and double-layer multipliers ``s_m``, ``d_m``."""
    ma = _orders(m)
    sym = circle_symbols(float(k), int(ma.max(initial=0)))
    if np.ndim(m) == 0:
        return LayerMultipliers(complex(sym.s[ma]), complex(sym.d[ma]))
    return LayerMultipliers(sym.s[ma], sym.d[ma])


def dtn_multiplier(k, m):
    """Exterior Dirichlet-to-Neumann multiplier ``k H'_|m|(k) / H_|m|(k)``."""
    ma = _orders(m)
    out = circle_symbols(float(k), int(ma.max(initial=0))).dtn[ma]
    return complex(out) if np.ndim(m) == 0 else out


def itd_multiplier(k, m):
    """Interior impedance-to-Dirichlet multiplier ``J / (k J' - ik J)``."""
    ma = _orders(m)
    out = circle_symbols(float(k), int(ma.max(initial=0))).itd[ma]
    return complex(out) if np.ndim(m) == 0 else out


# ---------------------------------------------------------------------------
# cutoff
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class CutoffSpec:
    """Frequency cutoff ``chi(m^2/k^2)``.

    ``chi = 1`` for ``m^2 <= plateau_end k^2``, ``chi = 0`` for
    ``m^2 >= support_end k^2`` and a quintic (C2) smoothstep in between.
    """

    plateau_end: float = 1.2
    support_end: float = 2.0
    profile: str = "smoothstep5"

    def __post_init__(self):
        if not 0.0 < self.plateau_end < self.support_end:
            raise ValueError("need 0 < plateau_end < support_end")

    def __call__(self, xi):
        xi = np.asarray(xi, dtype=float)
        t = np.clip((xi - self.plateau_end) / (self.support_end - self.plateau_end), 0.0, 1.0)
        return 1.0 - t * t * t * (10.0 - 15.0 * t + 6.0 * t * t)


def cutoff_multiplier(spec, k, m):
    """``chi(m^2 / k^2)`` in [0, 1]."""
    m = np.asarray(m, dtype=float)
    out = spec(m * m / (k * k))
    return float(out) if out.ndim == 0 else out


def cutoff_smoothing_constant(spec, k, M=None):
    """``max_m (1+m^2)^{1/2} chi(m^2/k^2) / k``; bounded in ``k``."""
    M = M or int(math.ceil(math.sqrt(spec.support_end) * k)) + 2
    m = np.arange(M + 1, dtype=float)
    return float(np.max(np.sqrt(1.0 + m * m) * cutoff_multiplier(spec, k, m)) / k)


# ---------------------------------------------------------------------------
# operators
# ---------------------------------------------------------------------------
class OperatorKind(enum.Enum):
    TWO_A = "TwoA"
    TWO_A_INVERSE = "TwoAInverse"
    SINGLE_LAYER = "SingleLayer"
    DOUBLE_LAYER = "DoubleLayer"
    CUTOFF_LOW = "CutoffLow"
    CUTOFF_HIGH = "CutoffHigh"
    DTN_PLUS = "DtNPlus"
    ITD_MINUS = "ItDMinus"
    IDENTITY = "Identity"
    COMPOSITION = "Composition"


@dataclass(frozen=True)
class MultiplierOperator:
    """A Fourier-diagonal operator on the unit circle at wavenumber ``k``."""

    kind: OperatorKind
    k: float
    cutoff: CutoffSpec | None = None
    parts: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if self.kind is OperatorKind.COMPOSITION:
            if any(abs(p.k - self.k) > 0 for p in self.parts):
                raise ValueError("all factors of a composition must share k")
        if self.kind in (OperatorKind.CUTOFF_LOW, OperatorKind.CUTOFF_HIGH) and self.cutoff is None:
            object.__setattr__(self, "cutoff", CutoffSpec())

    @classmethod
    def compose(cls, *parts):
        if not parts:
            raise ValueError("empty composition")
        return cls(OperatorKind.COMPOSITION, parts[0].k, parts=tuple(parts))

    def symbol(self, m):
        """Multiplier values at integer modes ``m`` (depends on ``|m|`` only)."""
        ma = _orders(m)
        kind = self.kind
        if kind is OperatorKind.IDENTITY:
            return np.ones(ma.shape, dtype=complex)
        if kind is OperatorKind.COMPOSITION:
            out = np.ones(ma.shape, dtype=complex)
            for p in self.parts:
                out = out * p.symbol(ma)
            return out
        if kind in (OperatorKind.CUTOFF_LOW, OperatorKind.CUTOFF_HIGH):
            chi = cutoff_multiplier(self.cutoff, self.k, ma).astype(complex)
            return chi if kind is OperatorKind.CUTOFF_LOW else 1.0 - chi
        sym = circle_symbols(float(self.k), int(ma.max(initial=0)))
        table = {
            OperatorKind.TWO_A: sym.lam,
            OperatorKind.SINGLE_LAYER: sym.s,
            OperatorKind.DOUBLE_LAYER: sym.d,
            OperatorKind.DTN_PLUS: sym.dtn,
            OperatorKind.ITD_MINUS: sym.itd,
        }
        if kind is OperatorKind.TWO_A_INVERSE:
            return 1.0 / sym.lam[ma]
        return table[kind][ma]


def apply(op, v):
    """Apply a multiplier operator to a coefficient sequence."""
    c = v.coeffs
    total = np.linalg.norm(c)
    if v.M > 0 and total > 0 and max(abs(c[0]), abs(c[-1])) > 1e-12 * total:
        warnings.warn(
            f"coefficients reach the truncation edge |m| = {v.M}; result may be truncated",
            TruncationWarning, stacklevel=2,
        )
    return FourierCoefficients(v.M, op.symbol(v.modes) * c)


# ---------------------------------------------------------------------------
# plane-wave data and exact densities
# ---------------------------------------------------------------------------
class PlaneWaveTrace(NamedTuple):
    trace: FourierCoefficients
    normal_derivative: FourierCoefficients


def _check_planewave_band(k, M):
    sym = circle_symbols(float(k), int(M))
    if abs(sym.J[M]) > 1e-14:
        warnings.warn(f"|J_M(k)| = {abs(sym.J[M]):.2e} > 1e-14: raise M", TruncationWarning, stacklevel=3)
    return sym


def default_truncation(k, n_dof=0):
    """``ceil(2k) + 100 + n_dof``."""
    return int(math.ceil(2.0 * k)) + 100 + int(n_dof)


def planewave_trace(k, theta_a, M=None):
    """Jacobi-Anger coefficients of ``exp(ik x . a)`` and its normal derivative."""
    M = default_truncation(k) if M is None else int(M)
    sym = _check_planewave_band(k, M)
    m = np.arange(-M, M + 1)
    ma = np.abs(m)
    base = SQRT_2PI * (1j ** ma) * np.exp(-1j * m * theta_a)
    trace = base * sym.J[ma]
    dn = base * k * sym.Jp[ma]
    return PlaneWaveTrace(FourierCoefficients(M, trace), FourierCoefficients(M, dn))


class Formulation(enum.Enum):
    DIRECT = "direct"
    INDIRECT = "indirect"

    @classmethod
    def parse(cls, s):
        if isinstance(s, cls):
            return s
        return cls(str(s).lower())


def exact_density(formulation, k, theta_a, M=None):
    """Exact boundary density for plane-wave sound-soft scattering by the disc.

    Direct: the normal derivative of the total field, solving
    ``(lambda_m/2) v_m = (d_nu u^I - ik u^I)_m``. Indirect: ``v_m = -2 u^I_m / lambda_m``.
    """
    formulation = Formulation.parse(formulation)
    M = default_truncation(k) if M is None else int(M)
    pw = planewave_trace(k, theta_a, M)
    lam = circle_symbols(float(k), M).lam[np.abs(pw.trace.modes)]
    if formulation is Formulation.DIRECT:
        rhs = pw.normal_derivative.coeffs - 1j * k * pw.trace.coeffs
    else:
        rhs = -pw.trace.coeffs
    return FourierCoefficients(M, 2.0 * rhs / lam)


def direct_rhs(k, theta_a, M=None):
    """Coefficients of ``d_nu u^I - ik u^I`` on the circle."""
    pw = planewave_trace(k, theta_a, M)
    return pw.normal_derivative - (1j * k) * pw.trace


def mie_normal_derivative(k, theta_a, M=None):
    """Separation-of-variables normal derivative of the total field on the circle."""
    M = default_truncation(k) if M is None else int(M)
    sym = circle_symbols(float(k), M)
    m = np.arange(-M, M + 1)
    ma = np.abs(m)
    c = (-2j / np.pi) * SQRT_2PI * (1j ** ma) * np.exp(-1j * m * theta_a) * sym.inv_h[ma]
    return FourierCoefficients(M, c)


def creg_ratio(v, k):
    """``||v||_{H^1} / (k ||v||_{L^2})``."""
    return sobolev_norm(v, 1.0) / (k * sobolev_norm(v, 0.0))


# ---------------------------------------------------------------------------
# verification quantities
# ---------------------------------------------------------------------------
def verify_inverse_decomposition(k, M):
    """Max over ``|m| <= M`` of ``|2/lambda_m - (1 - itd_m (dtn_m - ik))|``."""
    sym = circle_symbols(float(k), int(M))
    res = np.abs(2.0 / sym.lam - (1.0 - sym.itd * (sym.dtn - 1j * k)))
    return float(np.max(res))


class MinReal(NamedTuple):
    value: float
    argmin: int


def dgs_min_real(k, M=None):
    """Minimum of ``Re lambda_m(k)`` over ``|m| <= M`` and the mode attaining it."""
    M = int(math.ceil(4 * k)) if M is None else int(M)
    re = circle_symbols(float(k), M).lam.real
    i = int(np.argmin(re))
    return MinReal(float(re[i]), i)


def lambda_tail_constant(k, delta, M=None):
    """``sup_{(1+delta)k <= m <= M} |lambda_m - 1| m / k``."""
    if delta <= 0:
        raise ValueError("delta must be positive")
    lo = int(math.ceil((1.0 + delta) * k))
    M = max(int(math.ceil(8 * k)), lo + 50) if M is None else int(M)
    lam = circle_symbols(float(k), M).lam
    m = np.arange(lo, M + 1)
    return float(np.max(np.abs(lam[m] - 1.0) * m / k))


class HFNorms(NamedTuple):
    C_S: float
    C_D: float


def _hf_sup(k, weight, M):
    sym = circle_symbols(float(k), M)
    m = np.arange(M + 1, dtype=float)
    w = weight * np.sqrt(1.0 + m * m)
    return HFNorms(float(np.max(w * np.abs(sym.s))), float(np.max(w * np.abs(sym.d))) / k)


def _hf_band(k):
    return int(math.ceil(8 * k)) + 200


def hf_multiplier_norms(k, epsilon, M=None):
    """``C_S = sup (1+m^2)^{1/2}|s_m|`` and ``C_D = sup (1+m^2)^{1/2}|d_m| / k``.

    Suprema over ``m^2 >= (1+epsilon) k^2``, up to ``M`` (default ``8k + 200``;
    both weighted multipliers settle to their limits well before that).
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    M = _hf_band(k) if M is None else int(M)
    m = np.arange(M + 1, dtype=float)
    return _hf_sup(k, (m * m >= (1.0 + epsilon) * k * k).astype(float), M)


def hf_cutoff_norms(spec, k, M=None):
    """L2 -> H1 norms of ``(I - chi) S_k`` and ``k^{-1} (I - chi) D_k``."""
    M = _hf_band(k) if M is None else int(M)
    m = np.arange(M + 1, dtype=float)
    return _hf_sup(k, 1.0 - cutoff_multiplier(spec, k, m), M)


def cutoff_leaks(spec, k):
    """True if ``I - chi`` keeps any frequency with ``m^2 <= k^2``."""
    m = np.arange(int(math.floor(k)) + 1, dtype=float)
    return bool(np.any(cutoff_multiplier(spec, k, m) < 1.0))
