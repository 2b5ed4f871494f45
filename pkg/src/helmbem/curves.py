"""Smooth closed curves parametrised over [0, 2pi), counter-clockwise.

The outward unit normal is ``(y', -x') / |gamma'|``. Each curve also provides
an accurate chord ``gamma(t) - gamma(s)`` written with sum-to-product
identities, so nearly coincident points do not lose digits to cancellation.
"""

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import cached_property

import numpy as np

TWO_PI = 2.0 * math.pi

_GL_X, _GL_W = np.polynomial.legendre.leggauss(20)


class Curve(ABC):
    """Base class; subclasses supply position, derivatives and the chord."""

    kind = "curve"

    @abstractmethod
    def gamma(self, t):
        """Positions, shape ``(2,) + t.shape``."""

    @abstractmethod
    def dgamma(self, t):
        """Tangent ``gamma'(t)``."""

    @abstractmethod
    def chord(self, t, s):
        """``gamma(t) - gamma(s)`` without cancellation for ``t ~ s``."""

    def jac(self, t):
        d = self.dgamma(t)
        return np.hypot(d[0], d[1])

    def normal(self, t):
        d = self.dgamma(t)
        j = np.hypot(d[0], d[1])
        return np.array([d[1] / j, -d[0] / j])

    # -- arclength ---------------------------------------------------------
    @cached_property
    def _arclength_grid(self):
        n = 512
        edges = np.linspace(0.0, TWO_PI, n + 1)
        half = 0.5 * (edges[1] - edges[0])
        mids = 0.5 * (edges[:-1] + edges[1:])
        pts = mids[:, None] + half * _GL_X[None, :]
        seg = half * (self.jac(pts) @ _GL_W)
        return edges, np.concatenate([[0.0], np.cumsum(seg)])

    @property
    def perimeter(self):
        return float(self._arclength_grid[1][-1])

    def arclength(self, t):
        """Arclength from parameter 0 to ``t`` for ``t`` in [0, 2pi]."""
        t = np.asarray(t, dtype=float)
        edges, cum = self._arclength_grid
        h = edges[1] - edges[0]
        idx = np.clip((t / h).astype(int), 0, len(edges) - 2)
        a = edges[idx]
        half = 0.5 * (t - a)
        pts = (a + half)[..., None] + half[..., None] * _GL_X
        return cum[idx] + half * (self.jac(pts) @ _GL_W)

    def parameter_at_arclength(self, s):
        """Invert :meth:`arclength` by safeguarded Newton iteration."""
        s = np.asarray(s, dtype=float)
        L = self.perimeter
        t = TWO_PI * s / L
        for _ in range(50):
            f = self.arclength(t) - s
            step = f / self.jac(t)
            t = np.clip(t - step, 0.0, TWO_PI)
            if np.max(np.abs(step), initial=0.0) < 1e-15:
                break
        return t

    @property
    def jac_bounds(self):
        t = np.linspace(0.0, TWO_PI, 2049)
        j = self.jac(t)
        return float(j.min()), float(j.max())

    # -- inside/outside ----------------------------------------------------
    def contains(self, points, n=4096):
        """Even-odd test of points (shape ``(2, ...)``) against a fine polygon."""
        pts = np.asarray(points, dtype=float)
        shape = pts.shape[1:]
        px = pts[0].ravel()
        py = pts[1].ravel()
        t = np.linspace(0.0, TWO_PI, n, endpoint=False)
        x0, y0 = self.gamma(t)
        x1, y1 = np.roll(x0, -1), np.roll(y0, -1)
        inside = np.zeros(px.shape, dtype=bool)
        for a, b, c, d in zip(x0, y0, x1, y1):
            cross = (b > py) != (d > py)
            with np.errstate(divide="ignore", invalid="ignore"):
                xi = a + (py - b) * (c - a) / (d - b)
            inside ^= cross & (px < xi)
        return inside.reshape(shape)

    def distance(self, points, n=4096):
        """Approximate distance from points to the curve (dense sampling)."""
        pts = np.asarray(points, dtype=float)
        shape = pts.shape[1:]
        p = pts.reshape(2, -1)
        t = np.linspace(0.0, TWO_PI, n, endpoint=False)
        g = self.gamma(t)
        out = np.empty(p.shape[1])
        for i0 in range(0, p.shape[1], 256):
            blk = p[:, i0:i0 + 256]
            d = np.hypot(blk[0][:, None] - g[0], blk[1][:, None] - g[1])
            out[i0:i0 + 256] = d.min(axis=1)
        return out.reshape(shape)

    def spec(self):
        return self.kind


@dataclass(frozen=True, eq=False)
class Circle(Curve):
    radius: float = 1.0
    kind = "circle"

    def gamma(self, t):
        t = np.asarray(t, dtype=float)
        return self.radius * np.array([np.cos(t), np.sin(t)])

    def dgamma(self, t):
        t = np.asarray(t, dtype=float)
        return self.radius * np.array([-np.sin(t), np.cos(t)])

    def jac(self, t):
        return np.full(np.shape(t), self.radius, dtype=float)

    def normal(self, t):
        t = np.asarray(t, dtype=float)
        return np.array([np.cos(t), np.sin(t)])

    def chord(self, t, s):
        sig = 0.5 * (np.asarray(t) + s)
        dl = np.sin(0.5 * (np.asarray(t) - s))
        return 2.0 * self.radius * np.array([-np.sin(sig) * dl, np.cos(sig) * dl])

    @property
    def perimeter(self):
        return TWO_PI * self.radius

    def arclength(self, t):
        return self.radius * np.asarray(t, dtype=float)

    def parameter_at_arclength(self, s):
        return np.asarray(s, dtype=float) / self.radius

    def spec(self):
        return "circle" if self.radius == 1.0 else f"circle:{self.radius:g}"


@dataclass(frozen=True, eq=False)
class Ellipse(Curve):
    a: float = 1.0
    b: float = 1.0
    kind = "ellipse"

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0):
            raise ValueError("ellipse semi-axes must be positive")

    def gamma(self, t):
        t = np.asarray(t, dtype=float)
        return np.array([self.a * np.cos(t), self.b * np.sin(t)])

    def dgamma(self, t):
        t = np.asarray(t, dtype=float)
        return np.array([-self.a * np.sin(t), self.b * np.cos(t)])

    def chord(self, t, s):
        sig = 0.5 * (np.asarray(t) + s)
        dl = np.sin(0.5 * (np.asarray(t) - s))
        return 2.0 * np.array([-self.a * np.sin(sig) * dl, self.b * np.cos(sig) * dl])

    def spec(self):
        return f"ellipse:{self.a:g}:{self.b:g}"


@dataclass(frozen=True, eq=False)
class Kite(Curve):
    """``gamma(t) = (cos t + 0.65 cos 2t - 0.65, 1.5 sin t)``."""

    kind = "kite"

    def gamma(self, t):
        t = np.asarray(t, dtype=float)
        return np.array([np.cos(t) + 0.65 * np.cos(2 * t) - 0.65, 1.5 * np.sin(t)])

    def dgamma(self, t):
        t = np.asarray(t, dtype=float)
        return np.array([-np.sin(t) - 1.3 * np.sin(2 * t), 1.5 * np.cos(t)])

    def chord(self, t, s):
        t = np.asarray(t, dtype=float)
        sig = 0.5 * (t + s)
        d = 0.5 * (t - s)
        dx = -2.0 * np.sin(sig) * np.sin(d) - 1.3 * np.sin(2 * sig) * np.sin(2 * d)
        dy = 3.0 * np.cos(sig) * np.sin(d)
        return np.array([dx, dy])


def parse_curve(text):
    """``circle``, ``ellipse:a:b`` or ``kite``."""
    parts = str(text).strip().lower().split(":")
    name = parts[0]
    try:
        if name == "circle":
            return Circle(float(parts[1])) if len(parts) > 1 else Circle()
        if name == "ellipse":
            if len(parts) != 3:
                raise ValueError
            return Ellipse(float(parts[1]), float(parts[2]))
        if name == "kite" and len(parts) == 1:
            return Kite()
    except ValueError:
        pass
    raise ValueError(f"unknown curve {text!r}; expected circle, ellipse:a:b or kite")
