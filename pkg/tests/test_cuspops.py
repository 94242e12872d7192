import math

import pytest
from oracles import central_difference

from cuspdet.asymptote import adaptive_gl
from cuspdet.cuspops import (CONVENTION_ABSOLUTE, CONVENTION_SCALED,
                             BoundaryCondition, CuspOperator,
                             HarmonicOperator, IntervalOperator, PoleError,
                             SubcomplexPair, dirichlet,
                             from_coclosed_eigenform, green_diag,
                             ik_product_uniform, kernel_check, neumann,
                             renorm_resolvent_trace_harmonic, resolvent_trace,
                             tail_trace_asymptotic)
from cuspdet.specfun import bessel_ik_log


def test_boundary_condition_conventions():
    bc = neumann(3.0, CONVENTION_SCALED)
    assert bc.alpha_absolute(2.0) == pytest.approx(1.5)
    bc = neumann(3.0, CONVENTION_ABSOLUTE)
    assert bc.alpha_absolute(2.0) == 3.0
    with pytest.raises(ValueError):
        BoundaryCondition(kind="Robin")
    with pytest.raises(ValueError):
        dirichlet().alpha_absolute(1.0)


def test_operator_validation():
    with pytest.raises(ValueError):
        CuspOperator(mu=0.0, shift=1.0, R=1.0, bc=dirichlet())
    with pytest.raises(ValueError):
        CuspOperator(mu=1.0, shift=-1.0, R=1.0, bc=dirichlet())
    with pytest.raises(ValueError):
        IntervalOperator(mu=1.0, shift=0.0, R=2.0, bc=dirichlet(), R_prime=1.0)
    with pytest.raises(ValueError):
        HarmonicOperator(mu_p=1.0, R=-1.0)


def test_from_coclosed_eigenform_shifts_and_bcs():
    pair = from_coclosed_eigenform(2, 0, 4.0, 1.0)
    assert isinstance(pair, SubcomplexPair)
    assert pair.delta0.mu == pytest.approx(2.0)
    assert pair.delta0.shift == pytest.approx(1.0)        # |n/2 - p|
    assert pair.delta0.bc.kind == "Dirichlet"
    assert pair.delta1.shift == pytest.approx(0.0)        # |n/2 - p - 1|
    assert pair.delta1.bc.kind == "GeneralizedNeumann"
    assert pair.delta1.bc.convention == CONVENTION_SCALED
    # scaled alpha = -((n-3)/2 - p) = 1/2 at (n, p) = (2, 0)
    assert pair.delta1.bc.alpha == pytest.approx(0.5)


def test_from_coclosed_top_degree_shifts():
    pair = from_coclosed_eigenform(2, 2, 3.0, 1.0)
    assert pair.delta0.shift == pytest.approx(1.0)
    assert pair.delta1.shift == pytest.approx(1.0)


def test_eta_scaling_only_changes_mu():
    a = from_coclosed_eigenform(4, 1, 2.0, 1.5)
    b = from_coclosed_eigenform(4, 1, 8.0, 1.5)
    assert b.delta0.mu == pytest.approx(2.0 * a.delta0.mu)
    assert b.delta0.shift == a.delta0.shift
    assert b.delta1.bc == a.delta1.bc


def test_twin_construction_swaps_shifts():
    n, p, eta = 4, 1, 5.0
    pair = from_coclosed_eigenform(n, p, eta, 1.0)
    twin = from_coclosed_eigenform(n, n - p - 1, eta, 1.0)
    assert twin.delta0.shift == pytest.approx(pair.delta1.shift)
    assert twin.delta1.shift == pytest.approx(pair.delta0.shift)


def test_green_diag_boundary_and_positivity():
    op = CuspOperator(mu=1.5, shift=0.0, R=1.2, bc=dirichlet())
    assert green_diag(op, 1.0, op.R) == pytest.approx(0.0, abs=1e-14)
    for x in (1.21, 1.5, 3.0, 10.0, 100.0):
        assert green_diag(op, 1.0, x) > 0.0
    with pytest.raises(ValueError):
        green_diag(op, 1.0, 1.0)


def test_green_diag_far_field():
    # 2 mu x^2 G_t(x) -> 1 (I_t K_t(s) -> 1/(2s))
    for mu in (0.7, 2.0):
        op = CuspOperator(mu=mu, shift=0.0, R=1.0, bc=dirichlet())
        x = 1e3 / mu
        assert 2.0 * mu * x * x * green_diag(op, 1.0, x) == \
            pytest.approx(1.0, abs=1e-2)


def test_green_diag_unit_normalization():
    # G(x) = phi(x) psi(x) with x^2 W(phi, psi) = 1; check against the
    # explicit solution product
    op = CuspOperator(mu=1.3, shift=0.0, R=1.1, bc=dirichlet())
    t, x = 0.8, 2.4
    qx = bessel_ik_log(t, op.mu * x)
    qr = bessel_ik_log(t, op.mu * op.R)
    rho = math.exp(qr.log_i - qr.log_k)
    phi = (math.exp(qx.log_i) - rho * math.exp(qx.log_k)) / math.sqrt(x)
    psi = math.exp(qx.log_k) / math.sqrt(x)
    assert green_diag(op, t, x) == pytest.approx(phi * psi, rel=1e-12)


def test_green_diag_smooth_in_t_and_x():
    op = CuspOperator(mu=1.0, shift=0.0, R=1.0, bc=dirichlet())
    h = 1e-4
    d2t = (green_diag(op, 1.0 + h, 2.0) - 2 * green_diag(op, 1.0, 2.0)
           + green_diag(op, 1.0 - h, 2.0)) / h ** 2
    assert abs(d2t) < 10.0
    d2x = (green_diag(op, 1.0, 2.0 + h) - 2 * green_diag(op, 1.0, 2.0)
           + green_diag(op, 1.0, 2.0 - h)) / h ** 2
    assert abs(d2x) < 10.0


def test_resolvent_trace_finite_positive_decreasing():
    op = CuspOperator(mu=1.0, shift=1.0, R=1.0, bc=dirichlet())
    tr1 = resolvent_trace(op, 1.0)
    tr2 = resolvent_trace(op, 2.0)
    assert tr1 > 0.0 and math.isfinite(tr1)
    assert tr2 < tr1


def test_resolvent_trace_scales():
    a = CuspOperator(mu=1.0, shift=0.0, R=2.0, bc=dirichlet())
    b = CuspOperator(mu=4.0, shift=0.0, R=0.5, bc=dirichlet())
    assert resolvent_trace(a, 1.3) == pytest.approx(resolvent_trace(b, 1.3),
                                                    rel=1e-11)


def test_trace_tail_consistency_with_fixed_order_expansion():
    # small order, large start: the three-term fixed-order tail agrees
    # with the uniform-product quadrature route
    op = CuspOperator(mu=1.0, shift=0.0, R=1.0, bc=dirichlet())
    t, X = 0.7, 80.0
    direct = adaptive_gl(
        lambda v: ik_product_uniform(t, op.mu * X / v) / (X / v) * X / (v * v),
        0.0, 1.0, atol=1e-14)
    assert tail_trace_asymptotic(op, t, X) == pytest.approx(direct, rel=1e-9)


def test_renorm_trace_closed_forms():
    # Dirichlet at mu_p = 1, z = 0, R = 1: -1/4
    op = HarmonicOperator(mu_p=1.0, R=1.0)
    assert renorm_resolvent_trace_harmonic(op, 0.0) == pytest.approx(-0.25)
    # Neumann at z = 0: -log R / (2 mu_p) exactly
    opn = HarmonicOperator(mu_p=2.0, R=3.0, bc="GeneralizedNeumann")
    assert renorm_resolvent_trace_harmonic(opn, 0.0) == \
        pytest.approx(-math.log(3.0) / 4.0, rel=1e-14)
    with pytest.raises(PoleError):
        renorm_resolvent_trace_harmonic(HarmonicOperator(mu_p=0.0, R=1.0), 0.0)


def test_renorm_trace_vs_quadrature_route():
    # integrate the explicit kernel diagonal over [log R, log R'] and
    # remove the log R' divergence by hand
    mu_p, R, z = 1.0, 2.0, 0.7
    k = math.hypot(mu_p, z)
    r0, r1 = math.log(R), math.log(R) + 40.0 / k
    body = adaptive_gl(
        lambda r: 1.0 / (2 * k) - math.exp(-2 * k * (r - r0)) / (2 * k),
        r0, r1, atol=1e-12)
    renorm = body - (r1) / (2 * k)
    op = HarmonicOperator(mu_p=mu_p, R=R)
    assert renorm_resolvent_trace_harmonic(op, z) == \
        pytest.approx(renorm, abs=1e-8)


def test_kernel_check():
    # large mu R: kernel always trivial
    op = CuspOperator(mu=50.0, shift=0.0, R=1.0, bc=neumann(0.4))
    assert kernel_check(op, 1.0) is False
    # solve for the alpha that forces a zero mode, feed it back
    mu, R, t = 1.0, 1.0, 1.0
    q = bessel_ik_log(t, mu * R)
    alpha = mu * math.exp(q.log_mkp - q.log_k) + 0.5 / R
    op = CuspOperator(mu=mu, shift=0.0, R=R, bc=neumann(alpha))
    assert kernel_check(op, t) is True
    # Dirichlet data never support a zero mode
    opd = CuspOperator(mu=mu, shift=0.0, R=R, bc=dirichlet())
    assert kernel_check(opd, t) is False
