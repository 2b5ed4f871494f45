"""Meshes and discontinuous piecewise-polynomial boundary-element spaces."""

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from numpy.polynomial import legendre

from ..curves import TWO_PI
from ..quadrature import gauss01


def panel_count(curve, k, hk):
    """Number of equal-arclength panels giving mesh width ``h <= hk / k``."""
    return max(4, int(math.ceil(curve.perimeter * k / hk)))


def quadrature_order(hk, p=0):
    """Gauss points per panel: ``max(10, ceil(4 + 3 hk)) + p``."""
    return max(10, int(math.ceil(4.0 + 3.0 * hk))) + int(p)


@dataclass(frozen=True, eq=False)
class Mesh:
    """Panels ``[breakpoints[i], breakpoints[i+1]]`` in the curve parameter.

    ``breakpoints`` has ``n_panels + 1`` entries from 0 to 2pi; the last
    panel closes the curve.
    """

    curve: object
    breakpoints: np.ndarray

    @classmethod
    def equal_arclength(cls, curve, n_panels):
        if n_panels < 4:
            raise ValueError("need at least 4 panels")
        s = curve.perimeter * np.arange(n_panels + 1) / n_panels
        t = curve.parameter_at_arclength(s)
        t[0], t[-1] = 0.0, TWO_PI
        return cls(curve, t)

    @property
    def n_panels(self):
        return len(self.breakpoints) - 1

    @cached_property
    def widths(self):
        """Panel arclengths."""
        s = self.curve.arclength(self.breakpoints)
        return np.diff(s)

    @property
    def h(self):
        return float(self.widths.max())

    @property
    def quasi_uniformity(self):
        w = self.widths
        return float(w.max() / w.min())

    def refine(self, factor=2):
        """Each panel split into ``factor`` equal-arclength pieces."""
        return Mesh.equal_arclength(self.curve, self.n_panels * factor)

    def locate(self, t):
        """Panel index and local coordinate in [0, 1] of parameters ``t``."""
        t = np.mod(np.asarray(t, dtype=float), TWO_PI)
        i = np.clip(np.searchsorted(self.breakpoints, t, side="right") - 1, 0, self.n_panels - 1)
        a = self.breakpoints[i]
        b = self.breakpoints[i + 1]
        return i, (t - a) / (b - a)


@dataclass(eq=False)
class BoundarySpace:
    """Discontinuous degree-``p`` polynomials per panel, L2-orthonormal basis.

    On panel ``i`` the basis is ``phi_{i,a}(t) = sum_b C[i,a,b] P_b(2 xi - 1)``
    with ``xi`` the local coordinate and ``C`` the inverse Cholesky factor of
    the Jacobian-weighted Legendre Gram matrix, so the global Gram matrix is
    the identity. Degrees of freedom are ordered panel-major.
    """

    mesh: Mesh
    p: int
    qorder: int

    def __post_init__(self):
        if self.p < 0:
            raise ValueError("polynomial degree must be >= 0")
        curve = self.mesh.curve
        bp = self.mesh.breakpoints
        x, w = gauss01(self.qorder)
        self.dt = np.diff(bp)
        self.t = bp[:-1, None] + self.dt[:, None] * x[None, :]
        self.pos = curve.gamma(self.t)
        self.nu = curve.normal(self.t)
        self.jac = curve.jac(self.t)
        self.mu = self.dt[:, None] * w[None, :] * self.jac   # arclength weights
        leg = self._legendre(np.broadcast_to(x, self.t.shape))  # (n, P, q)
        gram = np.einsum("iaq,ibq,iq->iab", leg, leg, self.mu)
        chol = np.linalg.cholesky(gram)
        eye = np.broadcast_to(np.eye(self.p + 1), gram.shape)
        self.C = np.linalg.solve(chol, eye)                   # lower-triangular L^{-1}
        self.basis = np.einsum("iab,ibq->iaq", self.C, leg)   # (n, P, q)

    @property
    def n_panels(self):
        return self.mesh.n_panels

    @property
    def P(self):
        return self.p + 1

    @property
    def N(self):
        return self.n_panels * (self.p + 1)

    @property
    def curve(self):
        return self.mesh.curve

    @property
    def h(self):
        return self.mesh.h

    def _legendre(self, xi):
        """Legendre P_0..P_p at ``2 xi - 1``; returns shape ``xi.shape[:-1] + (P,) + xi.shape[-1:]``."""
        z = 2.0 * np.asarray(xi) - 1.0
        vals = [legendre.legval(z, np.eye(self.p + 1)[b]) for b in range(self.p + 1)]
        return np.stack(vals, axis=-2)

    def basis_at(self, panels, xi):
        """Basis values on ``panels`` (shape (m,)) at local coordinates ``xi`` (shape (m, r))."""
        leg = self._legendre(xi)  # (m, P, r)
        return np.einsum("iab,ibr->iar", self.C[panels], leg)

    def gram(self):
        """Discrete Gram matrix (identity up to rounding)."""
        g = np.einsum("iaq,ibq,iq->iab", self.basis, self.basis, self.mu)
        out = np.zeros((self.N, self.N))
        for i in range(self.n_panels):
            s = slice(i * self.P, (i + 1) * self.P)
            out[s, s] = g[i]
        return out

    def evaluate(self, coeffs, t):
        """Evaluate the function with basis coefficients ``coeffs`` at parameters ``t``."""
        t = np.asarray(t, dtype=float)
        i, xi = self.mesh.locate(t.ravel())
        b = self.basis_at(i, xi[:, None])[:, :, 0]
        c = np.asarray(coeffs).reshape(self.n_panels, self.P)[i]
        return np.sum(b * c, axis=1).reshape(t.shape)

    def values_at_nodes(self, coeffs):
        """Function values at the quadrature nodes, shape (n, q)."""
        c = np.asarray(coeffs).reshape(self.n_panels, self.P)
        return np.einsum("ia,iaq->iq", c, self.basis)

    def project_values(self, values):
        """Coefficients of the L2 projection of values sampled at the nodes."""
        return np.einsum("iq,iaq,iq->ia", values, self.basis, self.mu).ravel()


def build_space(curve, n_panels, p=0, qorder=None, hk=None):
    """Equal-arclength mesh with ``n_panels`` panels and degree-``p`` basis.

    The quadrature order defaults to :func:`quadrature_order` for the given
    ``hk`` (or ``hk = 1`` when unknown).
    """
    if int(n_panels) != n_panels or n_panels < 4:
        raise ValueError("n_panels must be an integer >= 4")
    if int(p) != p or p < 0:
        raise ValueError("p must be a non-negative integer")
    mesh = Mesh.equal_arclength(curve, int(n_panels))
    q = qorder or quadrature_order(1.0 if hk is None else hk, p)
    return BoundarySpace(mesh, int(p), int(q))
