"""Property tests of the closed-form engine over randomized admissible
parameters.  Tolerances follow the module contracts: interior residuals are
relative to max(1, |lap(phi)|), boundary residuals to max(1, beta*phi), and
structural identities hold to 1e-12 relative.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from robinball import (
    BallGeometry,
    NonnegativityClass,
    check_superharmonic_constraint,
    derive_model,
    f_eval,
    grad_phi,
    laplacian_phi,
    laplacian_radial,
    nonlinearity_min_scan,
    pde_residual,
    phi,
    phi_radial,
    robin_residual,
    superharmonic_threshold,
    unit_directions,
)

dims = st.sampled_from([1, 2, 3])
radius = st.floats(0.5, 2.0)
offset_frac = st.floats(0.0, 0.9)
beta_values = st.floats(0.05, 2.0)


def _make_model(n, R, a_frac, beta):
    x0 = np.zeros(n)
    x0[0] = a_frac * R
    return derive_model(BallGeometry(n=n, R=R, x0=x0), beta)


@given(dims, radius, offset_frac, beta_values)
def test_coefficient_formulas(n, R, a_frac, beta):
    m = _make_model(n, R, a_frac, beta)
    br = beta * R
    assert m.c1 == 2.0 * br
    assert m.c2 == -2.0 * (br + 1.0) + n
    assert m.c3 == 2.0 * (br + 1.0) * m.alpha_sq
    assert m.p == 1.0 / br
    assert m.c1 > 0.0 and m.c3 > 0.0 and m.p > 0.0 and m.alpha_sq > 0.0


@given(dims, radius, offset_frac, beta_values, st.integers(0, 2**32 - 1))
@settings(deadline=None)
def test_interior_identity_minus_lap_equals_f_of_phi(n, R, a_frac, beta, seed):
    m = _make_model(n, R, a_frac, beta)
    rng = np.random.default_rng(seed)
    for _ in range(10):
        x = rng.uniform(-R, R, size=n)
        if np.linalg.norm(x) >= 0.999 * R:
            continue
        tol = 1e-10 * max(1.0, abs(laplacian_phi(m, x)))
        assert abs(pde_residual(m, x)) <= tol


@given(dims, radius, offset_frac, beta_values)
@settings(deadline=None)
def test_boundary_identity_robin_residual_vanishes(n, R, a_frac, beta):
    m = _make_model(n, R, a_frac, beta)
    for d in unit_directions(n, 16):
        x = R * d
        tol = 1e-12 * max(1.0, beta * phi(m, x))
        assert abs(robin_residual(m, x)) <= tol


@given(dims, radius, offset_frac, beta_values, st.floats(1e-6, 1.0), st.integers(0, 2**32 - 1))
def test_logarithmic_derivative_identity(n, R, a_frac, beta, r_frac, seed):
    # phi'(r)/phi(r) == -2*beta*R * r / (r^2 + alpha_sq) on (0, R+a],
    # with r the distance realized by the sampled point
    m = _make_model(n, R, a_frac, beta)
    rng = np.random.default_rng(seed)
    x = rng.uniform(-R / np.sqrt(n), R / np.sqrt(n), size=n)
    d = x - m.geom.x0
    r = float(np.linalg.norm(d))
    if r == 0.0:
        return
    dphi_dr = float(grad_phi(m, x) @ d) / r
    lhs = dphi_dr / phi(m, x)
    rhs = -2.0 * beta * R * r / (r * r + m.alpha_sq)
    assert abs(lhs - rhs) <= 1e-12 * abs(rhs)


@given(dims, radius, offset_frac, beta_values)
def test_boundary_geometric_identity(n, R, a_frac, beta):
    # R^2 - x . x0 == (r^2 + alpha_sq)/2 for every boundary point
    m = _make_model(n, R, a_frac, beta)
    for d in unit_directions(n, 12):
        x = R * d
        r2 = float((x - m.geom.x0) @ (x - m.geom.x0))
        lhs = R * R - float(x @ m.geom.x0)
        rhs = 0.5 * (r2 + m.alpha_sq)
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))


@given(dims, radius, offset_frac, beta_values, st.floats(0.0, 1.0), st.floats(1e-6, 1.0))
def test_phi_positive_and_strictly_decreasing(n, R, a_frac, beta, r1_frac, gap_frac):
    m = _make_model(n, R, a_frac, beta)
    r1 = r1_frac * m.r_max
    r2 = min(m.r_max, r1 + max(1e-6, gap_frac * m.r_max))
    v1, v2 = float(phi_radial(m, r1)), float(phi_radial(m, r2))
    assert v1 > 0.0 and v2 > 0.0
    if r2 - r1 >= 1e-6:
        assert v1 > v2


@given(st.sampled_from([2, 3]), radius, offset_frac, beta_values, st.floats(0.01, 0.9))
def test_equidistant_points_share_phi_bitwise(n, R, a_frac, beta, t_frac):
    # mirroring across the x0 axis evaluates phi through the same arithmetic
    m = _make_model(n, R, a_frac, beta)
    a = a_frac * R
    t = t_frac * 0.9 * np.sqrt(m.alpha_sq)
    up = np.zeros(n)
    up[0], up[1] = a, t
    down = up.copy()
    down[1] = -t
    assert phi(m, up) == phi(m, down)


@given(st.sampled_from([2, 3]), radius, st.floats(0.05, 0.9), beta_values)
def test_offcenter_solution_is_not_radial_about_origin(n, R, a_frac, beta):
    m = _make_model(n, R, a_frac, beta)
    near = np.zeros(n)
    near[0] = R
    far = -near
    v_near, v_far = phi(m, near), phi(m, far)
    assert v_near > v_far
    a = m.geom.offset
    assert v_near == pytest.approx(((R - a) ** 2 + m.alpha_sq) ** -m.exponent, rel=1e-14)


@given(st.sampled_from([2, 3]), radius, offset_frac, st.floats(0.05, 1.0))
@settings(deadline=None, max_examples=50)
def test_guaranteed_region_is_sound(n, R, a_frac, beta_frac):
    # one-sided: the guarantee implies a nonnegative composition and lap <= 0
    x0 = np.zeros(n)
    x0[0] = a_frac * R
    geom = BallGeometry(n=n, R=R, x0=x0)
    beta = beta_frac * superharmonic_threshold(geom)
    if beta <= 0.0:
        return
    assert check_superharmonic_constraint(geom, beta) is NonnegativityClass.GUARANTEED_NONNEGATIVE
    model = derive_model(geom, beta)
    assert nonlinearity_min_scan(model, 2000) >= -1e-12
    r = np.linspace(0.0, model.r_max, 2000)
    assert float(np.max(laplacian_radial(model, r))) <= 1e-12


@given(st.sampled_from([3, 4, 5]), st.sampled_from([0.5, 1.0, 2.0]), st.floats(0.1, 3.0))
def test_quadratic_term_drops_exactly_at_critical_beta(n, R, t):
    # beta = (n-2)/(2R) with R a power of two makes c2 == 0 in floating point
    x0 = np.zeros(n)
    x0[0] = 0.25 * R
    m = derive_model(BallGeometry(n=n, R=R, x0=x0), (n - 2) / (2.0 * R))
    assert m.c2 == 0.0
    expected = m.c1 * m.c3 * t ** (1.0 + 2.0 * m.p)
    assert f_eval(m, t) == pytest.approx(expected, rel=1e-13)


@given(dims, radius, offset_frac, beta_values)
def test_derivation_is_deterministic(n, R, a_frac, beta):
    m1 = _make_model(n, R, a_frac, beta)
    m2 = _make_model(n, R, a_frac, beta)
    assert (m1.c1, m1.c2, m1.c3, m1.alpha_sq, m1.p) == (m2.c1, m2.c2, m2.c3, m2.alpha_sq, m2.p)
