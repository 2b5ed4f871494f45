"""L2 projection onto boundary-element spaces, best-approximation errors and
the quasi-optimality condition estimate on the unit circle."""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import spherical_jn

from ..circle_spectral import FourierCoefficients, circle_symbols
from ..curves import Circle
from ..quadrature import gauss01


@dataclass(eq=False)
class DensityVector:
    """Coefficients in the orthonormal basis of ``space``; L2 norm = Euclidean norm."""

    coeffs: np.ndarray
    space: object

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=complex)
        if self.coeffs.shape != (self.space.N,):
            raise ValueError("coefficient vector does not match the space dimension")

    def l2_norm(self):
        return float(np.linalg.norm(self.coeffs))

    def __call__(self, t):
        return self.space.evaluate(self.coeffs, t)


def _is_unit_circle_uniform(space):
    c = space.curve
    if not (isinstance(c, Circle) and c.radius == 1.0):
        return False
    n = space.n_panels
    return np.allclose(space.mesh.breakpoints, 2.0 * np.pi * np.arange(n + 1) / n, atol=1e-13, rtol=0)


class FourierProjector:
    """Exact ``F[(i,a), m] = (e_m, phi_{i,a})`` on a uniform unit-circle mesh.

    Applied with the FFT: panel centres are equispaced, so the sum over modes
    folds modulo the panel count.
    """

    def __init__(self, space, M):
        if not _is_unit_circle_uniform(space):
            raise ValueError("Fourier projection needs a uniform mesh on the unit circle")
        self.space = space
        self.M = int(M)
        n, P = space.n_panels, space.P
        self.n = n
        dt = 2.0 * np.pi / n
        m = np.arange(-self.M, self.M + 1)
        self.modes = m
        # int_{-1}^{1} e^{i alpha xi} P_b(xi) dxi = 2 i^b j_b(alpha)
        alpha = 0.5 * m * dt
        mom = np.array([2.0 * (1j ** b) * spherical_jn(b, np.abs(alpha)) * np.sign(alpha) ** b
                        for b in range(P)])                      # (P, 2M+1)
        C = space.C[0]                                            # identical on every panel
        self.G = (0.5 * dt / math.sqrt(2.0 * np.pi)) * (C @ mom)  # (P, 2M+1)
        self.shift = np.exp(0.5j * m * dt)
        self.fold = m % n

    def apply(self, c):
        """Projection coefficients ``F c`` of coefficients ``c`` (length 2M+1)."""
        out = np.empty((self.n, self.space.P), dtype=complex)
        for a in range(self.space.P):
            folded = np.zeros(self.n, dtype=complex)
            np.add.at(folded, self.fold, c * self.G[a] * self.shift)
            out[:, a] = self.n * np.fft.ifft(folded)
        return out.ravel()

    def adjoint(self, y):
        """``F^H y``: Fourier coefficients of the element with basis coefficients ``y``."""
        y = np.asarray(y).reshape(self.n, self.space.P)
        out = np.zeros(2 * self.M + 1, dtype=complex)
        for a in range(self.space.P):
            fy = np.fft.fft(y[:, a])
            out += np.conj(self.G[a] * self.shift) * fy[self.fold]
        return out


def l2_project(target, space):
    """Orthogonal L2 projection onto ``space``.

    ``target`` is a :class:`FourierCoefficients` (uniform unit-circle mesh) or a
    callable of the curve parameter ``t``.
    """
    if isinstance(target, FourierCoefficients):
        return DensityVector(FourierProjector(space, target.M).apply(target.coeffs), space)
    vals = np.asarray(target(space.t), dtype=complex)
    return DensityVector(space.project_values(vals), space)


def _fine_rule(space, order=None):
    q = order or 2 * space.qorder
    x, w = gauss01(q)
    bp = space.mesh.breakpoints
    dt = np.diff(bp)
    t = bp[:-1, None] + dt[:, None] * x
    mu = dt[:, None] * w * space.curve.jac(t)
    return t, x, mu


def best_approx_error(exact, space):
    """``||(I - P_N) exact||_{L2}``.

    For Fourier coefficients this is ``sqrt(||c||^2 - ||F c||^2)`` (exact
    Pythagoras); for callables the difference is integrated by a Gauss rule
    of twice the space's order.
    """
    if isinstance(exact, FourierCoefficients):
        pc = FourierProjector(space, exact.M).apply(exact.coeffs)
        return math.sqrt(max(exact.norm() ** 2 - float(np.vdot(pc, pc).real), 0.0))
    proj = l2_project(exact, space)
    return l2_distance(exact, proj)


def l2_distance(f, density):
    """``||f - density||_{L2}`` for a callable ``f(t)`` by panelwise Gauss quadrature."""
    space = density.space
    t, x, mu = _fine_rule(space)
    b = space.basis_at(np.arange(space.n_panels), np.broadcast_to(x, t.shape))
    vals = np.einsum("ia,iaq->iq", density.coeffs.reshape(space.n_panels, space.P), b)
    diff = np.asarray(f(t), dtype=complex) - vals
    return float(np.sqrt(np.sum(mu * np.abs(diff) ** 2)))


def galerkin_error(exact, density):
    """``||exact - v_N||`` for Fourier coefficients: ``sqrt(best^2 + ||F c - v_N||^2)``.

    Exact splitting since ``(I - P_N) exact`` is orthogonal to ``V_N``.
    """
    proj = FourierProjector(density.space, exact.M).apply(exact.coeffs)
    best = best_approx_error(exact, density.space)
    return math.sqrt(best ** 2 + float(np.linalg.norm(proj - density.coeffs)) ** 2), best


@dataclass
class ConditionEstimate:
    value: float
    iterations: int
    converged: bool
    history: list = field(default_factory=list)


def estimate_qo_condition_norm(k, space, M=None, seed=0, maxiter=200, tol=1e-6):
    """Power-iteration estimate of ``||(I - P_N) K (I + K)^{-1}||_{L2 -> L2}``.

    On the unit circle ``K = 2A_k - I`` so ``K (I + K)^{-1}`` is the multiplier
    ``(lambda_m - 1)/lambda_m``; the iteration runs on ``T^H T`` with
    ``T = (I - F^H F) B`` in the Fourier basis truncated at ``M``
    (default ``ceil(2k) + 100 + N``).
    """
    M = int(math.ceil(2 * k)) + 100 + space.N if M is None else int(M)
    lam = circle_symbols(float(k), M).lam
    modes = np.arange(-M, M + 1)
    B = (lam - 1.0)[np.abs(modes)] / lam[np.abs(modes)]
    F = FourierProjector(space, M)

    def T(v):
        w = B * v
        return w - F.adjoint(F.apply(w))

    def TH(w):
        u = w - F.adjoint(F.apply(w))
        return np.conj(B) * u

    rng = np.random.default_rng(seed)
    v = rng.standard_normal(2 * M + 1) + 1j * rng.standard_normal(2 * M + 1)
    v /= np.linalg.norm(v)
    est = 0.0
    history = []
    converged = False
    it = 0
    for it in range(1, maxiter + 1):
        w = TH(T(v))
        nrm = float(np.linalg.norm(w))
        new = math.sqrt(nrm)
        history.append(new)
        if nrm == 0.0:
            est, converged = 0.0, True
            break
        v = w / nrm
        if abs(new - est) <= tol * new:
            est, converged = new, True
            break
        est = new
    return ConditionEstimate(est, it, converged, history)


def qo_condition_norm_exact(k, space, M=None):
    """Exact value of the norm estimated by :func:`estimate_qo_condition_norm`.

    ``F`` only couples modes congruent modulo the panel count ``n``, so
    ``T = (I - F^H F) B`` is block diagonal over the ``n`` residue classes;
    on class ``r`` it is ``(I - n G_r^H G_r) diag(B_r)`` with ``G_r`` the
    columns of ``G * shift`` in that class. Used to cross-check the power
    iteration.
    """
    M = int(math.ceil(2 * k)) + 100 + space.N if M is None else int(M)
    lam = circle_symbols(float(k), M).lam
    modes = np.arange(-M, M + 1)
    B = (lam - 1.0)[np.abs(modes)] / lam[np.abs(modes)]
    F = FourierProjector(space, M)
    G = F.G * F.shift
    best = 0.0
    for r in range(F.n):
        idx = np.nonzero(F.fold == r)[0]
        if idx.size == 0:
            continue
        g = G[:, idx]
        T = (np.eye(idx.size) - F.n * (g.conj().T @ g)) * B[idx]
        best = max(best, float(np.linalg.norm(T, 2)))
    return best
