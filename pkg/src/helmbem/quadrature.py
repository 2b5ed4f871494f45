"""Gauss rules on [0, 1]: plain, log-weighted, and panel rules for log singularities."""

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal


@lru_cache(maxsize=None)
def gauss01(n):
    """n-point Gauss-Legendre rule on [0, 1]; exact to degree 2n - 1."""
    x, w = np.polynomial.legendre.leggauss(int(n))
    x = 0.5 * (x + 1.0)
    w = 0.5 * w
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


@lru_cache(maxsize=None)
def log_gauss01(n):
    """n-point Gauss rule for the weight ``-ln x`` on (0, 1].

    Exact for ``int_0^1 -ln(x) P(x) dx`` with ``deg P <= 2n - 1``. Built by a
    Lanczos (discretised Stieltjes) reduction of a dyadic composite
    Gauss-Legendre discretisation of the weight, then Golub-Welsch.
    """
    n = int(n)
    if n < 1:
        raise ValueError("need at least one node")
    # discrete measure: 40-point Gauss on [2^{-j-1}, 2^{-j}], j < 90
    gx, gw = np.polynomial.legendre.leggauss(40)
    xs, ws = [], []
    for j in range(90):
        a, b = 2.0 ** (-j - 1), 2.0 ** (-j)
        x = a + 0.5 * (b - a) * (gx + 1.0)
        xs.append(x)
        ws.append(0.5 * (b - a) * gw * -np.log(x))
    x = np.concatenate(xs)
    w = np.concatenate(ws)
    alpha, beta = _lanczos(x, w, n)
    nodes, vecs = eigh_tridiagonal(alpha, beta)
    weights = w.sum() * vecs[0] ** 2
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def _lanczos(x, w, n):
    """Jacobi coefficients of the discrete measure sum w_i delta(x_i)."""
    q = np.sqrt(w / w.sum())
    Q = np.zeros((n, x.size))
    alpha = np.zeros(n)
    beta = np.zeros(max(n - 1, 0))
    Q[0] = q
    for j in range(n):
        v = x * Q[j]
        alpha[j] = Q[j] @ v
        if j == n - 1:
            break
        v -= alpha[j] * Q[j]
        if j > 0:
            v -= beta[j - 1] * Q[j - 1]
        # full reorthogonalisation, twice
        for _ in range(2):
            v -= Q[: j + 1].T @ (Q[: j + 1] @ v)
        beta[j] = np.linalg.norm(v)
        Q[j + 1] = v / beta[j]
    return alpha, beta


class RuleKind(enum.Enum):
    GAUSS_PER_PANEL = "GaussLegendrePerPanel"
    SINGULAR_LOG_SPLIT = "SingularLogSplit"


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights in parameter space.

    For ``SINGULAR_LOG_SPLIT`` rules the pair (``nodes``, ``weights``) integrates
    ``g(s)`` (smooth, positive weights) and (``log_nodes``, ``log_weights``)
    integrates ``g(s) ln|s - t|`` for the target ``t``.
    """

    nodes: np.ndarray
    weights: np.ndarray
    kind: RuleKind
    order: int
    log_nodes: np.ndarray | None = None
    log_weights: np.ndarray | None = None

    def integrate(self, f):
        return np.sum(self.weights * f(self.nodes))

    def integrate_log(self, g):
        """Approximates ``int g(s) ln|s - t| ds`` over the panel."""
        return np.sum(self.log_weights * g(self.log_nodes))


def panel_gauss_rule(a, b, order):
    x, w = gauss01(order)
    return QuadratureRule(a + (b - a) * x, (b - a) * w, RuleKind.GAUSS_PER_PANEL, order)


def singular_panel_rule(panel, target_t, order):
    """Rules for ``int_panel g(s) ln|s - t| ds`` with ``t`` in or at the panel.

    The panel is split at ``t``; on each piece of length ``L`` the substitution
    ``s = t +/- L u`` gives ``L ln L int g + L int g ln u``, handled by a plain
    and a log-weighted Gauss rule respectively. Exact whenever ``g`` is a
    polynomial of degree ``<= 2 order - 1``.
    """
    a, b = float(panel[0]), float(panel[1])
    t = float(target_t)
    if not a - 1e-14 * abs(b - a) <= t <= b + 1e-14 * abs(b - a):
        raise ValueError("target must lie in the closed panel")
    gx, gw = gauss01(order)
    lx, lw = log_gauss01(order)
    log_nodes, log_weights = [], []
    for length, sign in ((t - a, -1.0), (b - t, 1.0)):
        if length <= 0.0:
            continue
        log_nodes += [t + sign * length * gx, t + sign * length * lx]
        log_weights += [length * math.log(length) * gw, -length * lw]
    smooth = panel_gauss_rule(a, b, order)
    return QuadratureRule(
        smooth.nodes, smooth.weights, RuleKind.SINGULAR_LOG_SPLIT, order,
        np.concatenate(log_nodes), np.concatenate(log_weights),
    )
