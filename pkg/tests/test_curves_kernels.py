"""Curve geometry, Helmholtz kernels and panel quadrature rules."""

import math

import mpmath as mp
import numpy as np
import pytest

from helmbem.curves import Circle, Ellipse, Kite, parse_curve
from helmbem.errors import CoincidenceError
from helmbem.kernels import (
    KernelFormulation,
    KernelPoint,
    combined_kernel,
    kernel_Dx,
    kernel_Dy,
    kernel_S,
    phi_k,
    split_kernel_np,
)
from helmbem.quadrature import RuleKind, gauss01, log_gauss01, panel_gauss_rule, singular_panel_rule
from helmbem.specfun import hankel1

CURVES = [Circle(), Ellipse(2.0, 1.0), Kite()]
T_GRID = np.linspace(0.0, 2 * np.pi, 1000, endpoint=False)


# ---------------------------------------------------------------------------
# curves
# ---------------------------------------------------------------------------
@pytest.mark.parametrize("curve", CURVES, ids=lambda c: c.spec())
def test_normals_unit_and_orthogonal(curve):
    nu = curve.normal(T_GRID)
    tau = curve.dgamma(T_GRID)
    assert np.max(np.abs(np.hypot(nu[0], nu[1]) - 1.0)) <= 1e-14
    assert np.max(np.abs(nu[0] * tau[0] + nu[1] * tau[1]) / curve.jac(T_GRID)) <= 1e-14


@pytest.mark.parametrize("curve", CURVES, ids=lambda c: c.spec())
def test_normals_point_outward(curve):
    t = T_GRID[::25]
    x = curve.gamma(t)
    nu = curve.normal(t)
    assert not np.any(curve.contains(x + 1e-2 * nu))
    assert np.all(curve.contains(x - 1e-2 * nu))


@pytest.mark.parametrize("curve", CURVES, ids=lambda c: c.spec())
def test_regular_and_periodic(curve):
    assert curve.jac_bounds[0] > 0
    assert np.allclose(curve.gamma(0.3), curve.gamma(0.3 + 2 * np.pi), atol=1e-14)


@pytest.mark.parametrize("curve", CURVES, ids=lambda c: c.spec())
def test_chord_matches_positions(curve):
    t = np.array([0.1, 2.0, 5.5])
    s = np.array([0.1 + 1e-9, 1.0, 3.0])
    d = curve.chord(t, s)
    ref = curve.gamma(t) - curve.gamma(s)
    assert np.max(np.abs(d - ref)) <= 1e-14
    # no cancellation for close pairs: chord / (t - s) tends to gamma'
    t1 = 1.0 + 1e-12
    c = curve.chord(t1, 1.0) / (t1 - 1.0)
    assert np.max(np.abs(c - curve.dgamma(1.0))) <= 1e-9


def test_perimeters():
    assert Circle().perimeter == pytest.approx(2 * math.pi, rel=1e-15)
    # ellipse(2,1): 4 a E(1 - b^2/a^2)
    assert Ellipse(2.0, 1.0).perimeter == pytest.approx(float(8 * mp.ellipe(0.75)), rel=1e-12)


def test_arclength_inverse():
    c = Ellipse(2.0, 1.0)
    s = np.linspace(0.0, c.perimeter, 13)
    assert np.max(np.abs(c.arclength(c.parameter_at_arclength(s)) - s)) <= 1e-12


def test_parse_curve():
    assert isinstance(parse_curve("circle"), Circle)
    e = parse_curve("ellipse:2:1")
    assert (e.a, e.b) == (2.0, 1.0)
    assert isinstance(parse_curve("kite"), Kite)
    for bad in ("square", "ellipse:2", "kite:1", "ellipse:a:b"):
        with pytest.raises(ValueError):
            parse_curve(bad)
    with pytest.raises(ValueError):
        Ellipse(0.0, 1.0)


def test_contains_and_distance():
    k = Kite()
    pts = np.array([[0.0, 5.0, -0.5], [0.0, 0.0, 0.2]])
    assert list(k.contains(pts)) == [True, False, True]
    assert Circle().distance(np.array([[3.0], [0.0]]))[0] == pytest.approx(2.0, abs=1e-6)


# ---------------------------------------------------------------------------
# fundamental solution and kernels
# ---------------------------------------------------------------------------
def test_phi_symmetric_and_golden():
    x, y = np.array([0.3, -1.2]), np.array([1.1, 0.4])
    assert phi_k(3.0, x, y) == phi_k(3.0, y, x)
    assert phi_k(1.0, np.array([1.0, 0.0]), np.array([0.0, 0.0])) == pytest.approx(
        0.25j * complex(mp.hankel1(0, 1)), rel=1e-15)


def test_phi_coincidence():
    with pytest.raises(CoincidenceError):
        phi_k(1.0, np.zeros(2), np.zeros(2))


@pytest.mark.parametrize("k", [1.0, 3.0, 5.0])
def test_phi_solves_helmholtz(k):
    y = np.zeros(2)
    x = np.array([2.0 * math.cos(0.7), 2.0 * math.sin(0.7)])
    h = 1e-3
    e1, e2 = np.array([h, 0.0]), np.array([0.0, h])
    lap = (phi_k(k, x + e1, y) + phi_k(k, x - e1, y) + phi_k(k, x + e2, y) + phi_k(k, x - e2, y)
           - 4 * phi_k(k, x, y)) / h ** 2
    f = phi_k(k, x, y)
    assert abs(lap + k * k * f) <= 1e-5 * k * k * abs(f)


def _pts(curve, t, s):
    return KernelPoint.on(curve, t), KernelPoint.on(curve, s)


def test_circle_double_layers_agree():
    c = Circle()
    rng = np.random.default_rng(0)
    for t, s in rng.uniform(0, 2 * np.pi, (50, 2)):
        xp, yp = _pts(c, t, s)
        for k in (1.0, 17.0):
            a, b = kernel_Dy(k, xp, yp), kernel_Dx(k, xp, yp)
            assert abs(a - b) <= 1e-14 * max(1.0, abs(a))
            assert abs(combined_kernel("Ak", k, xp, yp) - combined_kernel("AkPrime", k, xp, yp)) <= 1e-13 * k


def test_kite_double_layers_differ():
    xp, yp = _pts(Kite(), 0.4, 2.9)
    assert abs(kernel_Dy(5.0, xp, yp) - kernel_Dx(5.0, xp, yp)) > 1e-3


def test_combined_minus_double_is_single():
    xp, yp = _pts(Kite(), 1.0, 4.0)
    k = 6.0
    for form, dpart in ((KernelFormulation.AK, kernel_Dy), (KernelFormulation.AK_PRIME, kernel_Dx)):
        diff = combined_kernel(form, k, xp, yp) - dpart(k, xp, yp)
        assert abs(diff + 1j * k * kernel_S(k, xp, yp)) <= 1e-15 * abs(diff)


def test_kernel_formulas():
    c = Ellipse(2.0, 1.0)
    xp, yp = _pts(c, 0.2, 1.7)
    k = 4.0
    d = xp.x - yp.x
    r = float(np.hypot(*d))
    H1 = hankel1(1, k * r).value
    assert kernel_S(k, xp, yp) == pytest.approx(0.25j * hankel1(0, k * r).value * yp.jac, rel=1e-14)
    assert kernel_Dy(k, xp, yp) == pytest.approx(0.25j * k * H1 * (d @ yp.nu) / r * yp.jac, rel=1e-14)
    assert kernel_Dx(k, xp, yp) == pytest.approx(0.25j * k * H1 * (-d @ xp.nu) / r * yp.jac, rel=1e-14)


def test_single_layer_reciprocity():
    c = Kite()
    xp, yp = _pts(c, 0.5, 3.3)
    assert kernel_S(7.0, xp, yp) / yp.jac == kernel_S(7.0, yp, xp) / xp.jac


def test_weak_singularity():
    c = Kite()
    t = 1.2
    xp = KernelPoint.on(c, t)
    ratios = []
    for eps in 10.0 ** -np.arange(1, 12):
        yp = KernelPoint.on(c, t + eps)
        ratios.append(abs(kernel_S(3.0, xp, yp)) / (1.0 + abs(math.log(eps))))
    assert max(ratios) < 1.0


def test_double_layer_diagonal_limit():
    """dPhi/dnu(y) tends to -curvature/(4 pi) (times |gamma'|) on a smooth curve.

    Position-based evaluation loses (x-y).nu/r^2 to cancellation for tiny
    separations, so the limit is probed at moderate ones.
    """
    c = Kite()
    t = 1.2
    g1, g2 = c.dgamma(t), np.array([-math.cos(t) - 2.6 * math.cos(2 * t), -1.5 * math.sin(t)])
    kappa = (g1[0] * g2[1] - g1[1] * g2[0]) / c.jac(t) ** 3
    limit = -kappa / (4 * math.pi) * c.jac(t)
    xp = KernelPoint.on(c, t)
    errs = [abs(kernel_Dy(3.0, xp, KernelPoint.on(c, t + eps)) - limit) for eps in (1e-2, 1e-3, 1e-4)]
    assert errs[2] < errs[1] < errs[0] and errs[2] <= 1e-3


def test_kernel_coincidence():
    xp = KernelPoint.on(Circle(), 0.3)
    with pytest.raises(CoincidenceError):
        kernel_S(1.0, xp, xp)


@pytest.mark.parametrize("curve", [Circle(), Ellipse(1.0, 1.0)], ids=["circle", "ellipse11"])
def test_degenerate_ellipse_is_circle(curve):
    ref = Circle()
    for t, s in [(0.1, 2.0), (4.0, 4.5), (1.0, 6.0)]:
        a = _pts(curve, t, s)
        b = _pts(ref, t, s)
        for f in (kernel_S, kernel_Dy, kernel_Dx):
            assert abs(f(5.0, *a) - f(5.0, *b)) <= 1e-14 * max(1.0, abs(f(5.0, *b)))


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------
def test_gauss_exactness():
    for n in (1, 4, 10):
        x, w = gauss01(n)
        for deg in range(2 * n):
            assert np.sum(w * x ** deg) == pytest.approx(1.0 / (deg + 1), abs=1e-14)


def test_log_gauss_exactness():
    for n in (2, 6, 12):
        x, w = log_gauss01(n)
        assert np.all(w > 0) and np.all((x > 0) & (x < 1))
        for deg in range(2 * n):
            # int_0^1 -ln(x) x^j dx = 1/(j+1)^2
            assert np.sum(w * x ** deg) == pytest.approx(1.0 / (deg + 1) ** 2, abs=1e-13)


def test_log_gauss_rejects_empty():
    with pytest.raises(ValueError):
        log_gauss01(0)


def test_singular_rule_log_integral():
    rule = singular_panel_rule((-1.0, 1.0), 0.0, 6)
    assert rule.kind is RuleKind.SINGULAR_LOG_SPLIT
    assert np.all(rule.weights > 0)
    assert rule.integrate_log(lambda s: np.ones_like(s)) == pytest.approx(-2.0, abs=1e-12)


def test_singular_rule_polynomial_exact():
    a, b, t = 0.2, 1.1, 0.47
    rule = singular_panel_rule((a, b), t, 5)
    for deg in range(10):
        with mp.workdps(30):
            ref = mp.quad(lambda s: s ** deg * mp.log(abs(s - t)), [a, t, b])
        assert rule.integrate_log(lambda s: s ** deg) == pytest.approx(float(ref), abs=1e-12)
    # target at an endpoint
    rule = singular_panel_rule((a, b), a, 5)
    with mp.workdps(30):
        ref = mp.quad(lambda s: s ** 3 * mp.log(s - a), [a, b])
    assert rule.integrate_log(lambda s: s ** 3) == pytest.approx(float(ref), abs=1e-12)


def test_singular_rule_target_outside():
    with pytest.raises(ValueError):
        singular_panel_rule((0.0, 1.0), 1.5, 4)


def test_panel_gauss_smooth():
    rule = panel_gauss_rule(0.5, 2.0, 8)
    assert rule.kind is RuleKind.GAUSS_PER_PANEL
    assert rule.integrate(np.cos) == pytest.approx(math.sin(2.0) - math.sin(0.5), abs=1e-14)
    assert rule.integrate(lambda s: s ** 15) == pytest.approx((2.0 ** 16 - 0.5 ** 16) / 16, rel=1e-14)


def test_self_panel_single_layer_converges():
    """Single-layer integral over a panel containing the target, by log splitting."""
    c = Circle()
    k, a, b, t0 = 8.0, 0.0, 0.5, 0.13
    with mp.workdps(25):
        ref = complex(mp.quad(lambda s: 0.25j * mp.hankel1(0, 2 * k * abs(mp.sin((s - t0) / 2))), [a, t0, b]))

    def approx(order):
        rule = singular_panel_rule((a, b), t0, order)
        x = c.gamma(t0)

        def parts(s):
            d = x[:, None] - c.gamma(s)
            r = np.hypot(d[0], d[1])
            A, B = split_kernel_np(k, d, r, np.abs(s - t0), np.zeros_like(s))
            return A / (-1j * k), B / (-1j * k)

        return rule.integrate_log(lambda s: parts(s)[0]) + rule.integrate(lambda s: parts(s)[1])

    errs = [abs(approx(q) - ref) for q in (2, 4, 8)]
    assert errs[1] < errs[0] and errs[2] <= 1e-11
