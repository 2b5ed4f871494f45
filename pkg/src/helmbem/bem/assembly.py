"""Galerkin matrices for ``1/2 I + D_k - ik S_k`` (indirect) and its adjoint form (direct).

Panel pairs are split three ways:

* far pairs: tensor Gauss rule, the hot loop. ``r``, ``H0(kr)`` and ``H1(kr)``
  are shared between blocks (i, j) and (j, i);
* coincident and adjacent pairs: the kernel is split as ``A ln(rho) + B`` in
  the parameter distance ``rho``; coincident pairs use the substitution
  ``w = |tau - sigma|``, adjacent pairs Duffy triangles at the shared corner,
  with the logarithm integrated by a log-weighted Gauss rule;
* other pairs closer than half a panel width: both panels subdivided four
  times.
"""

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .._accel import USE_NUMBA, njit
from ..kernels import KernelFormulation, combined_kernel_np, split_kernel_np
from ..quadrature import gauss01, log_gauss01
from ..specfun._hankel01 import bessel01
from ..circle_spectral import Formulation

MAX_HK = 20.0


@dataclass(eq=False)
class GalerkinSystem:
    """Dense ``(A v_N, w_N) = (f, w_N)`` for one formulation."""

    matrix: np.ndarray
    rhs: np.ndarray | None
    formulation: Formulation
    k: float
    space: object
    timings: dict = field(default_factory=dict)

    @property
    def kernel_formulation(self):
        return kernel_for(self.formulation)

    def with_rhs(self, rhs):
        return GalerkinSystem(self.matrix, np.asarray(rhs, dtype=complex), self.formulation,
                              self.k, self.space, dict(self.timings))

    def transposed(self):
        """System of the other formulation.

        ``A'_k`` is the real-L2 adjoint of ``A_k`` and the basis is real, so
        the two Galerkin matrices are transposes of each other.
        """
        other = Formulation.INDIRECT if self.formulation is Formulation.DIRECT else Formulation.DIRECT
        return GalerkinSystem(np.ascontiguousarray(self.matrix.T), None, other, self.k,
                              self.space, dict(self.timings))


def kernel_for(formulation):
    """Direct formulation uses ``A'_k`` (kernel dPhi/dnu(x)), indirect ``A_k``."""
    formulation = Formulation.parse(formulation)
    return KernelFormulation.AK_PRIME if formulation is Formulation.DIRECT else KernelFormulation.AK


# ---------------------------------------------------------------------------
# far field
# ---------------------------------------------------------------------------
@njit
def _far_pairs_numba(k, px, py, nx, ny, bm, far, prime, out):
    n, P, q = bm.shape
    kij = np.empty((q, q), dtype=np.complex128)
    kji = np.empty((q, q), dtype=np.complex128)
    for i in range(n):
        for j in range(i + 1, n):
            if not far[i, j]:
                continue
            for a in range(q):
                for b in range(q):
                    dx = px[i, a] - px[j, b]
                    dy = py[i, a] - py[j, b]
                    r = math.sqrt(dx * dx + dy * dy)
                    j0, j1, y0, y1 = bessel01(k * r)
                    c1 = 0.25j * k * complex(j1, y1) / r
                    c0 = 0.25 * k * complex(j0, y0)
                    nb = dx * nx[j, b] + dy * ny[j, b]
                    na = -(dx * nx[i, a] + dy * ny[i, a])
                    if prime:
                        kij[a, b] = c1 * na + c0
                        kji[b, a] = c1 * nb + c0
                    else:
                        kij[a, b] = c1 * nb + c0
                        kji[b, a] = c1 * na + c0
            for al in range(P):
                for be in range(P):
                    s1 = 0j
                    s2 = 0j
                    for a in range(q):
                        for b in range(q):
                            s1 += bm[i, al, a] * kij[a, b] * bm[j, be, b]
                            s2 += bm[j, al, b] * kji[b, a] * bm[i, be, a]
                    out[i * P + al, j * P + be] = s1
                    out[j * P + al, i * P + be] = s2


def _far_pairs_numpy(k, px, py, nx, ny, bm, far, prime, out):
    n, P, q = bm.shape
    for i in range(n - 1):
        js = np.nonzero(far[i, i + 1:])[0] + i + 1
        if js.size == 0:
            continue
        dx = px[i][None, :, None] - px[js][:, None, :]
        dy = py[i][None, :, None] - py[js][:, None, :]
        r = np.hypot(dx, dy)
        d = np.array([dx, dy])
        nu_x = nx[i][None, :, None], ny[i][None, :, None]
        nu_y = nx[js][:, None, :], ny[js][:, None, :]
        form = KernelFormulation.AK_PRIME if prime else KernelFormulation.AK
        other = KernelFormulation.AK if prime else KernelFormulation.AK_PRIME
        # K(x_a, y_b) and, by swapping the roles of the normals, K(y_b, x_a)
        kij = combined_kernel_np(k, d, r, nu_x, nu_y, form)
        kji = combined_kernel_np(k, d, r, nu_x, nu_y, other)
        blk = np.einsum("la,jab,jmb->jlm", bm[i], kij, bm[js])
        blk_t = np.einsum("jlb,jab,ma->jlm", bm[js], kji, bm[i])
        for jj, j in enumerate(js):
            out[i * P:(i + 1) * P, j * P:(j + 1) * P] = blk[jj]
            out[j * P:(j + 1) * P, i * P:(i + 1) * P] = blk_t[jj]


def _far_mask(space):
    """Pairs treated by the plain tensor rule, and near-singular pairs."""
    n = space.n_panels
    c = space.curve.gamma(0.5 * (space.mesh.breakpoints[:-1] + space.mesh.breakpoints[1:]))
    L = space.mesh.widths
    dist = np.hypot(c[0][:, None] - c[0][None, :], c[1][:, None] - c[1][None, :])
    gap = dist - 0.5 * (L[:, None] + L[None, :])
    idx = np.arange(n)
    near_diag = np.zeros((n, n), dtype=bool)
    near_diag[idx, idx] = True
    near_diag[idx, (idx + 1) % n] = True
    near_diag[idx, (idx - 1) % n] = True
    close = (gap < 0.5 * np.maximum(L[:, None], L[None, :])) & ~near_diag
    far = ~(near_diag | close)
    return far, close


# ---------------------------------------------------------------------------
# near field
# ---------------------------------------------------------------------------
def _geometry(curve, t):
    return curve.gamma(t), curve.normal(t), curve.jac(t)


def _normal_part(d, nu_x, nu_y, kform):
    if kform is KernelFormulation.AK:
        return d[0] * nu_y[0] + d[1] * nu_y[1]
    return -(d[0] * nu_x[0] + d[1] * nu_x[1])


def _split_block(space, k, kform, pi, pj, t, s, rho, wa, wb, tau, sig):
    """Sum ``(wa A + wb B) jac(t) jac(s) phi_a(t) phi_b(s)`` per panel pair.

    All node arrays have shape (m, r) for m panel pairs with r nodes each.
    """
    curve = space.curve
    d = curve.chord(t, s)
    r = np.hypot(d[0], d[1])
    _, nu_x, jx = _geometry(curve, t)
    _, nu_y, jy = _geometry(curve, s)
    n = _normal_part(d, nu_x, nu_y, kform)
    a, b = split_kernel_np(k, d, r, rho, n)
    kern = (wa * a + wb * b) * jx * jy
    bx = space.basis_at(pi, tau)
    by = space.basis_at(pj, sig)
    return np.einsum("mar,mr,mbr->mab", bx, kern, by)


def _coincident_rule(q):
    gx, gw = gauss01(q)
    lx, lw = log_gauss01(q)
    # nodes (w, u), base weights, and a flag for nodes of the log-weighted rule in w
    W = np.concatenate([np.repeat(lx, q), np.repeat(gx, q)])
    U = np.tile(gx, 2 * q)
    wu = np.tile(gw, 2 * q)
    base = np.concatenate([np.repeat(lw, q), np.repeat(gw, q)]) * (1.0 - W) * wu
    is_log = np.concatenate([np.ones(q * q, bool), np.zeros(q * q, bool)])
    return W, U, base, is_log


def _coincident(space, k, kform, out):
    n, P = space.n_panels, space.P
    q = space.qorder
    W, U, base, is_log = _coincident_rule(q)
    a = space.mesh.breakpoints[:-1][:, None]
    dt = space.dt[:, None]
    total = np.zeros((n, P, P), dtype=complex)
    for lower in (True, False):
        # tau > sigma: tau = sigma + w; otherwise sigma = tau + w
        lo = U * (1.0 - W)
        tau = np.broadcast_to(lo + W if lower else lo, (n, W.size))
        sig = np.broadcast_to(lo if lower else lo + W, (n, W.size))
        rho = dt * W
        wa = np.where(is_log, -base, base * np.log(dt))
        wb = np.where(is_log, 0.0, base)
        wa = np.broadcast_to(wa, (n, W.size))
        wb = np.broadcast_to(wb, (n, W.size))
        pid = np.arange(n)
        total += _split_block(space, k, kform, pid, pid, a + dt * tau, a + dt * sig,
                              rho, wa, wb, tau, sig)
    total *= (dt * dt)[:, :, None]
    for i in range(n):
        out[i * P:(i + 1) * P, i * P:(i + 1) * P] += total[i]


def _duffy_rule(q):
    gx, gw = gauss01(q)
    lx, lw = log_gauss01(q)
    A = np.concatenate([np.repeat(lx, q), np.repeat(gx, q)])
    V = np.tile(gx, 2 * q)
    wv = np.tile(gw, 2 * q)
    wa_ = np.concatenate([np.repeat(lw, q), np.repeat(gw, q)])
    is_log = np.concatenate([np.ones(q * q, bool), np.zeros(q * q, bool)])
    return A, V, wv * wa_ * A, is_log


def _adjacent(space, k, kform, out):
    """Pairs (i, i+1) and (i+1, i) sharing one endpoint."""
    n, P = space.n_panels, space.P
    q = space.qorder
    A, V, base, is_log = _duffy_rule(q)
    bp = space.mesh.breakpoints
    dt = space.dt
    for step in (1, -1):
        pi = np.arange(n)
        pj = (pi + step) % n
        di, dj = dt[pi][:, None], dt[pj][:, None]
        if step == 1:   # shared point: end of i, start of j
            ei, si = bp[1:][:, None], -1.0
            ej, sj = bp[:-1][pj][:, None], 1.0
        else:           # shared point: start of i, end of j
            ei, si = bp[:-1][:, None], 1.0
            ej, sj = bp[1:][pj][:, None], -1.0
        total = np.zeros((n, P, P), dtype=complex)
        for first in (True, False):
            # first: b = a v (b <= a); otherwise a = b v
            ca = A if first else A * V
            cb = A * V if first else A
            ca = np.broadcast_to(ca, (n, A.size))
            cb = np.broadcast_to(cb, (n, A.size))
            lin = (di + dj * V) if first else (di * V + dj)
            rho = A * lin
            wa = np.where(is_log, -base, base * np.log(lin))
            wb = np.broadcast_to(np.where(is_log, 0.0, base), (n, A.size))
            t = ei + si * di * ca
            s = ej + sj * dj * cb
            tau = ca if si > 0 else 1.0 - ca
            sig = cb if sj > 0 else 1.0 - cb
            total += _split_block(space, k, kform, pi, pj, t, s, rho, wa, wb, tau, sig)
        total *= (di * dj)[:, :, None]
        for i, j in zip(pi, pj):
            out[i * P:(i + 1) * P, j * P:(j + 1) * P] += total[i]


def _near_singular(space, k, kform, pairs, out, sub=4):
    """Pairs that are close but not touching: subdivided tensor Gauss."""
    if len(pairs) == 0:
        return
    P = space.P
    q = space.qorder
    gx, gw = gauss01(q)
    xi = ((np.arange(sub)[:, None] + gx[None, :]) / sub).ravel()
    wx = np.tile(gw, sub) / sub
    curve = space.curve
    for i, j in pairs:
        t = space.mesh.breakpoints[i] + space.dt[i] * xi
        s = space.mesh.breakpoints[j] + space.dt[j] * xi
        x, nu_x, jx = _geometry(curve, t)
        y, nu_y, jy = _geometry(curve, s)
        d = x[:, :, None] - y[:, None, :]
        r = np.hypot(d[0], d[1])
        kern = combined_kernel_np(k, d, r, nu_x[:, :, None], nu_y[:, None, :], kform)
        bx = space.basis_at(np.array([i]), xi[None, :])[0] * (wx * jx * space.dt[i])
        by = space.basis_at(np.array([j]), xi[None, :])[0] * (wx * jy * space.dt[j])
        out[i * P:(i + 1) * P, j * P:(j + 1) * P] = bx @ kern @ by.T


# ---------------------------------------------------------------------------
def assemble(curve, k, formulation, space, rhs=None, backend=None):
    """Galerkin matrix of ``1/2 I + D - ik S`` (indirect) or ``1/2 I + D' - ik S`` (direct).

    Parameters
    ----------
    curve : Curve
        Must be the curve the space was built on.
    k : float
    formulation : Formulation or str
    space : BoundarySpace
    rhs : array_like, optional
        Load vector to attach to the system.
    backend : {"numba", "numpy"}, optional
        Far-field kernel; defaults to numba when enabled.
    """
    if curve is not space.curve:
        raise ValueError("space was built on a different curve")
    formulation = Formulation.parse(formulation)
    k = float(k)
    hk = space.h * k
    if hk > MAX_HK:
        raise ValueError(f"hk = {hk:.3g} exceeds {MAX_HK}; quadrature would be unresolved")
    kform = kernel_for(formulation)
    backend = backend or ("numba" if USE_NUMBA else "numpy")
    N = space.N
    out = np.zeros((N, N), dtype=complex)
    timings = {}

    t0 = time.perf_counter()
    far, close = _far_mask(space)
    bm = space.basis * space.mu[:, None, :]
    px, py = space.pos
    nx, ny = space.nu
    prime = kform is KernelFormulation.AK_PRIME
    if backend == "numba":
        if not USE_NUMBA:
            raise RuntimeError("numba backend requested but numba is disabled")
        _far_pairs_numba(k, px, py, nx, ny, bm, far, prime, out)
    elif backend == "numpy":
        _far_pairs_numpy(k, px, py, nx, ny, bm, far, prime, out)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    timings["far"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    _coincident(space, k, kform, out)
    _adjacent(space, k, kform, out)
    _near_singular(space, k, kform, list(zip(*np.nonzero(close))), out)
    out[np.diag_indices(N)] += 0.5
    timings["near"] = time.perf_counter() - t0
    return GalerkinSystem(out, None if rhs is None else np.asarray(rhs, dtype=complex),
                          formulation, k, space, timings)


def load_vector(space, f):
    """``(f, phi_i)`` for a callable ``f(points) -> values`` (points shape (2, n, q))."""
    return space.project_values(np.asarray(f(space.pos), dtype=complex))
