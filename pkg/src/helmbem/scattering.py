"""Sound-soft scattering: incident fields, boundary solves and field reconstruction.

Direct formulation: ``A'_k d_nu u = d_nu u^I - ik u^I`` on the boundary and
``u = u^I - S_k(d_nu u)`` outside. Indirect formulation: ``A_k v = -u^I`` and
``u = u^I + (D_k - ik S_k) v``. The normal points out of the obstacle.
"""

import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np

from ._accel import USE_NUMBA, njit
from .bem.assembly import assemble, load_vector
from .bem.solver import solve_galerkin
from .circle_spectral import Formulation
from .curves import Circle
from .errors import DomainError, QuadratureWarning
from .kernels import hankel01_np
from .specfun._hankel01 import bessel01
from .specfun.bessel import bessel_table

MIN_SOURCE_DISTANCE = 0.05
PROBE_RADIUS = 3.0


class IncidentKind(enum.Enum):
    PLANE_WAVE = "plane_wave"
    POINT_SOURCE = "point_source"


@dataclass(frozen=True)
class IncidentField:
    """``exp(ik x.a)`` with ``a = (cos theta, sin theta)``, or ``Phi_k(., y0)``."""

    kind: IncidentKind
    k: float
    theta: float = 0.0
    source: tuple = (0.0, 0.0)

    @classmethod
    def plane_wave(cls, k, theta=0.0):
        if not k > 0:
            raise DomainError("wavenumber must be positive")
        return cls(IncidentKind.PLANE_WAVE, float(k), float(theta))

    @classmethod
    def point_source(cls, k, y0, curve):
        """Point source at ``y0``, which must lie inside ``curve`` at distance > 0.05."""
        if not k > 0:
            raise DomainError("wavenumber must be positive")
        y = np.asarray(y0, dtype=float).reshape(2, 1)
        if not curve.contains(y)[0] or curve.distance(y)[0] <= MIN_SOURCE_DISTANCE:
            raise DomainError(f"source {tuple(y0)} must lie inside the obstacle, "
                              f"more than {MIN_SOURCE_DISTANCE} from the boundary")
        return cls(IncidentKind.POINT_SOURCE, float(k), source=(float(y[0, 0]), float(y[1, 0])))

    @property
    def direction(self):
        return np.array([math.cos(self.theta), math.sin(self.theta)])

    def __call__(self, points):
        """Values at ``points`` of shape ``(2, ...)``."""
        x = np.asarray(points, dtype=float)
        if self.kind is IncidentKind.PLANE_WAVE:
            a = self.direction
            return np.exp(1j * self.k * (a[0] * x[0] + a[1] * x[1]))
        r = np.hypot(x[0] - self.source[0], x[1] - self.source[1])
        h0, _ = hankel01_np(self.k * r)
        return 0.25j * h0

    def normal_derivative(self, points, nu):
        """``grad u^I . nu`` at ``points`` with unit normals ``nu`` (both shape ``(2, ...)``)."""
        x = np.asarray(points, dtype=float)
        if self.kind is IncidentKind.PLANE_WAVE:
            a = self.direction
            return 1j * self.k * (a[0] * nu[0] + a[1] * nu[1]) * self(x)
        dx = x[0] - self.source[0]
        dy = x[1] - self.source[1]
        r = np.hypot(dx, dy)
        _, h1 = hankel01_np(self.k * r)
        return -0.25j * self.k * h1 * (dx * nu[0] + dy * nu[1]) / r


# ---------------------------------------------------------------------------
# layer potentials off the boundary
# ---------------------------------------------------------------------------
@njit
def _potentials_numba(k, tx, ty, sx, sy, snx, sny, dens, out_s, out_d):
    """``sum w H0(kr) phi`` and ``sum w H1(kr) (x-y).nu(y)/r phi`` per target."""
    for i in range(tx.shape[0]):
        acc_s = 0j
        acc_d = 0j
        for j in range(sx.shape[0]):
            dx = tx[i] - sx[j]
            dy = ty[i] - sy[j]
            r = math.sqrt(dx * dx + dy * dy)
            j0, j1, y0, y1 = bessel01(k * r)
            acc_s += complex(j0, y0) * dens[j]
            acc_d += complex(j1, y1) * ((dx * snx[j] + dy * sny[j]) / r) * dens[j]
        out_s[i] = acc_s
        out_d[i] = acc_d


def _potentials_numpy(k, tx, ty, sx, sy, snx, sny, dens, out_s, out_d, chunk=64):
    for i0 in range(0, tx.shape[0], chunk):
        sl = slice(i0, i0 + chunk)
        dx = tx[sl, None] - sx[None, :]
        dy = ty[sl, None] - sy[None, :]
        r = np.hypot(dx, dy)
        h0, h1 = hankel01_np(k * r)
        out_s[sl] = h0 @ dens
        out_d[sl] = (h1 * (dx * snx + dy * sny) / r) @ dens


def layer_potentials(space, k, coeffs, points, backend=None):
    """Single- and double-layer potentials ``(S phi)(x)``, ``(D phi)(x)`` off the boundary.

    ``phi`` has basis coefficients ``coeffs`` in ``space``; the integrals use
    the space's panel Gauss rule.
    """
    pts = np.asarray(points, dtype=float)
    shape = pts.shape[1:]
    tx = np.ascontiguousarray(pts[0].ravel())
    ty = np.ascontiguousarray(pts[1].ravel())
    dens = (space.values_at_nodes(coeffs) * space.mu).ravel()
    sx, sy = (np.ascontiguousarray(c.ravel()) for c in space.pos)
    snx, sny = (np.ascontiguousarray(c.ravel()) for c in space.nu)
    out_s = np.empty(tx.shape, dtype=complex)
    out_d = np.empty(tx.shape, dtype=complex)
    backend = backend or ("numba" if USE_NUMBA else "numpy")
    if backend == "numba":
        if not USE_NUMBA:
            raise RuntimeError("numba backend requested but numba is disabled")
        _potentials_numba(float(k), tx, ty, sx, sy, snx, sny, dens, out_s, out_d)
    elif backend == "numpy":
        _potentials_numpy(float(k), tx, ty, sx, sy, snx, sny, dens, out_s, out_d)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    return (0.25j * out_s).reshape(shape), (0.25j * k * out_d).reshape(shape)


# ---------------------------------------------------------------------------
# solutions
# ---------------------------------------------------------------------------
@dataclass(frozen=True, eq=False)
class ScatteringSolution:
    """Boundary density plus what is needed to evaluate the exterior field.

    ``density`` is ``d_nu u`` (direct) or ``v`` (indirect). Calling the
    solution on points returns the total field.
    """

    curve: object
    incident: IncidentField
    formulation: Formulation
    density: object

    @property
    def space(self):
        return self.density.space

    @property
    def k(self):
        return self.incident.k

    def scattered(self, points, backend=None):
        return reconstruct_field(self, points, backend=backend, total=False)

    def __call__(self, points, backend=None):
        return reconstruct_field(self, points, backend=backend)


def boundary_rhs(space, incident, formulation):
    """Load vector ``(f, phi_i)``: ``d_nu u^I - ik u^I`` (direct) or ``-u^I`` (indirect)."""
    formulation = Formulation.parse(formulation)
    if formulation is Formulation.DIRECT:
        vals = incident.normal_derivative(space.pos, space.nu) - 1j * incident.k * incident(space.pos)
        return space.project_values(vals)
    return load_vector(space, lambda x: -incident(x))


def solve_scattering(curve, incident, formulation, space, system=None):
    """Galerkin solve for the boundary density of the sound-soft problem.

    ``system`` may be a pre-assembled matrix for the same ``k``, formulation
    and space; its right-hand side is replaced.
    """
    formulation = Formulation.parse(formulation)
    if system is None:
        system = assemble(curve, incident.k, formulation, space)
    elif system.formulation is not formulation or system.k != incident.k or system.space is not space:
        raise ValueError("pre-assembled system does not match the problem")
    rhs = boundary_rhs(space, incident, formulation)
    density = solve_galerkin(system, rhs)
    return ScatteringSolution(curve, incident, formulation, density)


def _near_check(curve, points, h):
    pts = np.asarray(points, dtype=float)
    d = curve.distance(pts)
    if np.any(d <= h):
        warnings.warn(f"{int(np.sum(d <= h))} target point(s) within h = {h:.3g} of the boundary: "
                      "potential quadrature is unreliable there", QuadratureWarning, stacklevel=3)


def reconstruct_field(solution, points, backend=None, total=True):
    """Total (or scattered) field at exterior ``points`` of shape ``(2, ...)``.

    Direct: ``u^S = -S_k(d_nu u)``. Indirect: ``u^S = (D_k - ik S_k) v``.
    Warns with :class:`QuadratureWarning` for targets within ``h`` of the
    boundary.
    """
    pts = np.asarray(points, dtype=float)
    space = solution.space
    _near_check(solution.curve, pts, space.h)
    k = solution.k
    s_pot, d_pot = layer_potentials(space, k, solution.density.coeffs, pts, backend=backend)
    if solution.formulation is Formulation.DIRECT:
        us = -s_pot
    else:
        us = d_pot - 1j * k * s_pot
    return us + solution.incident(pts) if total else us


# ---------------------------------------------------------------------------
# exact-solution checks
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class PointSourceResult:
    max_rel_error: float
    probe_points: np.ndarray
    values: np.ndarray
    exact: np.ndarray
    solution: ScatteringSolution


def point_source_test(curve, k, y0, space, n_probe=64, radius=PROBE_RADIUS, system=None):
    """Indirect solve with Dirichlet data ``Phi_k(., y0)`` on the boundary.

    The radiating solution is ``Phi_k(., y0)`` itself; returns the maximum
    pointwise relative error of the reconstruction on a ring of ``radius``.
    """
    src = IncidentField.point_source(k, y0, curve)
    if system is None:
        system = assemble(curve, k, Formulation.INDIRECT, space)
    # A_k v = g_D with g_D = Phi(., y0): the indirect solve with incident -Phi
    rhs = load_vector(space, src)
    density = solve_galerkin(system, rhs)
    sol = ScatteringSolution(curve, src, Formulation.INDIRECT, density)
    th = 2.0 * np.pi * np.arange(n_probe) / n_probe
    pts = radius * np.array([np.cos(th), np.sin(th)])
    vals = reconstruct_field(sol, pts, total=False)
    exact = src(pts)
    err = float(np.max(np.abs(vals - exact) / np.abs(exact)))
    return PointSourceResult(err, pts, vals, exact, sol)


def mie_field(k, theta, points, radius=1.0, total=True, M=None):
    """Separation-of-variables field for a plane wave on a sound-soft disc.

    ``u = u^I + sum_m a_m H_m(k r) e^{im phi}`` with
    ``a_m = -i^|m| e^{-im theta} J_|m|(kR) / H_|m|(kR)``.
    """
    pts = np.asarray(points, dtype=float)
    shape = pts.shape[1:]
    x, y = pts[0].ravel(), pts[1].ravel()
    r = np.hypot(x, y)
    if np.any(r < radius * (1.0 - 1e-12)):  # rounding slack for points on the circle
        raise DomainError("Mie field is defined outside the disc only")
    kR = k * radius
    M = int(math.ceil(1.5 * kR)) + 40 if M is None else int(M)
    ref = bessel_table(M, kR)
    m = np.arange(-M, M + 1)
    ma = np.abs(m)
    coef = -(1j ** ma) * np.exp(-1j * m * theta) * (ref.J() / ref.H())[ma]
    phi = np.arctan2(y, x)
    out = np.empty(r.shape, dtype=complex)
    for i in range(r.size):
        h = bessel_table(M, k * r[i]).H()[ma]
        out[i] = np.sum(coef * h * np.exp(1j * m * phi[i]))
    if not np.all(np.isfinite(out)):
        raise DomainError("Mie series overflowed; lower M")
    if total:
        out = out + IncidentField.plane_wave(k, theta)(np.array([x, y]))
    return out.reshape(shape)


def is_unit_circle(curve):
    return isinstance(curve, Circle) and curve.radius == 1.0
