r"""Zeta-regularized determinants of cusp and harmonic operators.

Definition route.  For the cusp family D_t the logarithmic determinant is

    log det D_t = -2 * reglim int_0^inf z Tr (D_t + z^2)^{-1} dz,

the regularized integral extracting the constant term of the partial
integrals.  Since D_t + z^2 belongs to the same family at order
u = sqrt(t^2 + z^2), the substitution u du = z dz turns the definition into

    log det D_t = -2 * reglim int_t^U  u Tr D_u^{-1} du,  U -> infinity,

which is how the pipeline evaluates it: the u-integrand has a clean
expansion u Tr D_u^{-1} = (1/2) log u + c_0 + c_1/u + ..., so the partial
integrals are fitted against {U log U, U, log U, log^2 U} plus a decaying
basis and the constant is extracted.

Closed route.  The t-derivative of the determinant obeys

    d/dt log det D_t = 2 t Tr D_t^{-1}
                     = -d/dt log ( I'_t - (I_t/K_t) K'_t )(mu R)
                     =  d/dt log K_t(mu R),

(the last equality by the Wronskian identity (I'K - IK')(s) = 1/s), and
the generalized Neumann analogue replaces the inner combination by
I_t - kappa_t K_t with the boundary ratio kappa of ``cuspops``.  The
test-suite closes the triangle definition-route / closed-form / derivative
numerically; the sign conventions here are the ones that triangle fixes.

The ratio of determinants under a shift of the order parameter is exposed
as ``t_function``: for z >= 0 and order c,

    t(-z^2) = -( log det D_{c(mu z)} - log det D_c ),
    c(mu z) = sqrt(c^2 + (mu z)^2),

with interval variants carrying the extra boundary-solution logarithms.
Interval determinants of the harmonic operators have closed forms through
the boundary-value Wronskian and are cross-checked against an independent
eigenvalue-sum oracle (binomial rearrangement into Riemann-zeta values).
"""

import math
from dataclasses import dataclass

from . import crosssection as _cs
from ._logspace import logaddexp, signed_sum
from .asymptote import reg_integral
from .cuspops import (DIRICHLET, GENERALIZED_NEUMANN, CuspOperator,
                      HarmonicOperator, NontrivialKernelError,
                      kernel_check, neumann, renorm_resolvent_trace_harmonic,
                      resolvent_trace)
from .spectra import SpectrumList
from .specfun.backend import ik_log

__all__ = [
    "ZetaValue", "SpectrumList", "logdet_resolvent", "ddt_logdet_dirichlet",
    "ddt_logdet_neumann", "t_function", "bfk_interval_logdet",
    "eigen_zeta_oracle", "harmonic_halfline_zeta_prime0",
    "harmonic_halfline_zeta_prime0_numeric", "neumann_dirichlet_diff",
    "neumann_dirichlet_diff_numeric", "comparison_limit", "riemann_zeta_em",
    "ConvergenceDomainError",
]

_ORDER_STEP = 1e-5


class ConvergenceDomainError(ValueError):
    """Oracle parameters outside its convergence domain."""


@dataclass(frozen=True)
class ZetaValue:
    """A zeta-side scalar together with how it was obtained.

    kind: 'zeta_at_s' | 'zeta_prime_at_0' | 'logdet'
    provenance: 'closed_form' | 'resolvent_pipeline' | 'eigen_oracle'
    (log det = -zeta'(0) relates the two kinds for the same operator.)
    """

    value: float
    kind: str
    provenance: str


def _w_dirichlet(t, s):
    """log( I'_t - (I_t/K_t) K'_t )(s); equals -log(s K_t(s))."""
    q = ik_log(t, s)
    return logaddexp(q[1], q[0] - q[2] + q[3])


def _w_neumann(t, mu, r, beta):
    """(log |I_t - kappa K_t|(mu r), sign), kappa the Neumann boundary ratio."""
    s = mu * r
    q = ik_log(t, s)
    lb = math.log(abs(beta)) if beta != 0.0 else -math.inf
    sb = math.copysign(1.0, beta) if beta != 0.0 else 0.0
    num = signed_sum([(math.log(mu) + q[1], 1.0), (lb + q[0], sb)])
    den = signed_sum([(math.log(mu) + q[3], -1.0), (lb + q[2], sb)])
    if den[1] == 0.0:
        raise NontrivialKernelError(
            "boundary data annihilate the decaying solution")
    lk_ratio = num[0] - den[0]
    sk = num[1] * den[1]
    return signed_sum([(q[0], 1.0), (lk_ratio + q[2], -sk)])


def logdet_resolvent(op, t):
    """log det of the cusp operator at order t by the definition route.

    Evaluates -2 times the regularized integral of u Tr D_u^{-1} over
    (t, infinity); see the module docstring for the substitution.  Heavy:
    a few thousand resolvent traces.
    """
    if not t >= 0.0:
        raise ValueError(f"order must satisfy t >= 0, got {t}")

    def f(u):
        return u * resolvent_trace(op, u, rel_tol=1e-12)

    val = -2.0 * reg_integral(
        f, float(t),
        tail_model=[(1, 1), (1, 0), (0, 1), (0, 2)],
        first_cut=40.0, z_max=800.0, n_cuts=24, n_decay=3,
        quad_atol=1e-11, f_noise_rel=3e-12)
    return ZetaValue(value=val, kind="logdet", provenance="resolvent_pipeline")


def ddt_logdet_dirichlet(mu, R, t, step=_ORDER_STEP):
    """d/dt log det for the Dirichlet cusp operator, by central differences
    of -log(I'_t - (I_t/K_t) K'_t)(mu R) in the order.

    The combination equals 1/(mu R K_t(mu R)) and is even in t, so the
    lower stencil point reflects through 0 when t < step.  Numerically
    equals +2 t Tr D_t^{-1}.
    """
    s = mu * R
    wp = _w_dirichlet(t + step, s)
    wm = _w_dirichlet(abs(t - step), s)
    return -(wp - wm) / (2.0 * step)


def ddt_logdet_neumann(mu, R, t, alpha_abs, step=_ORDER_STEP):
    """Generalized Neumann analogue of ``ddt_logdet_dirichlet``.

    Differences -log(I_t - kappa_t K_t)(mu R) with
    kappa = (mu I' + beta I)/(mu K' + beta K)(mu R), beta = alpha - 1/(2R)
    in the absolute convention.  Raises NontrivialKernelError when the
    boundary data support a zero mode (vanishing denominator).
    """
    op = CuspOperator(mu=mu, shift=t, R=R, bc=neumann(alpha_abs))
    if kernel_check(op, t):
        raise NontrivialKernelError(
            f"D_t has a zero mode at (mu={mu}, R={R}, t={t}, alpha={alpha_abs})")
    beta = alpha_abs - 0.5 / R
    wp, sp = _w_neumann(t + step, mu, R, beta)
    wm, sm = _w_neumann(abs(t - step), mu, R, beta)
    if sp != sm or sp == 0.0:
        raise NontrivialKernelError(
            "boundary combination changes sign across the stencil; "
            "kernel point between")
    return -(wp - wm) / (2.0 * step)


def _interval_dirichlet_log(t, mu, R, R_prime):
    """log( I_t(mu R') - (I_t(mu R)/K_t(mu R)) K_t(mu R') ); positive."""
    qr = ik_log(t, mu * R)
    qp = ik_log(t, mu * R_prime)
    # ratio (I/K)(mu R) * (K/I)(mu R') < 1 strictly for R' > R
    return qp[0] + math.log1p(-math.exp(qr[0] - qr[2] + qp[2] - qp[0]))


def _neumann_m_and_q(t, mu, S, alpha_scaled):
    """M = mu K'_t + beta_S K_t and Q = (mu I'_t + beta_S I_t)/M at mu S,
    with beta_S = (2 alpha_scaled - 1)/(2 S); both signed log values."""
    beta = (2.0 * alpha_scaled - 1.0) / (2.0 * S)
    q = ik_log(t, mu * S)
    lb = math.log(abs(beta)) if beta != 0.0 else -math.inf
    sb = math.copysign(1.0, beta) if beta != 0.0 else 0.0
    num = signed_sum([(math.log(mu) + q[1], 1.0), (lb + q[0], sb)])
    den = signed_sum([(math.log(mu) + q[3], -1.0), (lb + q[2], sb)])
    if den[1] == 0.0:
        raise NontrivialKernelError("interval boundary data support a zero mode")
    return den, (num[0] - den[0], num[1] * den[1])


def t_function(op, z, shift=None):
    """log-determinant ratio under the order shift c -> sqrt(c^2 + (mu z)^2).

    Returns t(-z^2) = -(log det D_{c(mu z)} - log det D_c) for the cusp
    operator (half-line) or its interval restriction, assembled from the
    boundary-solution logarithms in log space.  Exactly 0 at z = 0.
    """
    if not z >= 0.0:
        raise ValueError(f"z must be >= 0, got {z}")
    c = op.shift if shift is None else shift
    mu, R = op.mu, op.R
    u = math.hypot(c, mu * z)
    is_interval = getattr(op, "R_prime", None) is not None
    if op.bc.kind == DIRICHLET:
        val = _w_dirichlet(u, mu * R) - _w_dirichlet(c, mu * R)
        if is_interval:
            val -= _interval_dirichlet_log(u, mu, R, op.R_prime)
            val += _interval_dirichlet_log(c, mu, R, op.R_prime)
        return val
    # generalized Neumann; the displayed formula uses the scaled convention
    if op.bc.convention == "scaled":
        a_scaled = op.bc.alpha
    else:
        a_scaled = op.bc.alpha * R
    beta_r = (2.0 * a_scaled - 1.0) / (2.0 * R)
    wu, su = _w_neumann(u, mu, R, beta_r)
    wc, sc = _w_neumann(c, mu, R, beta_r)
    if su != sc:
        raise NontrivialKernelError("kernel point between the two orders")
    val = wu - wc
    if not is_interval:
        return val
    mu_u, q_u_rp = _neumann_m_and_q(u, mu, op.R_prime, a_scaled)
    mc_u, q_c_rp = _neumann_m_and_q(c, mu, op.R_prime, a_scaled)
    _, q_u_r = _neumann_m_and_q(u, mu, R, a_scaled)
    _, q_c_r = _neumann_m_and_q(c, mu, R, a_scaled)
    dq_u = signed_sum([(q_u_rp[0], q_u_rp[1]), (q_u_r[0], -q_u_r[1])])
    dq_c = signed_sum([(q_c_rp[0], q_c_rp[1]), (q_c_r[0], -q_c_r[1])])
    if 0.0 in (dq_u[1], dq_c[1]):
        raise NontrivialKernelError("interval boundary-ratio difference vanishes")
    sign = (mu_u[1] * mc_u[1]) * (dq_u[1] * dq_c[1])
    if sign != 1.0:
        raise NontrivialKernelError(
            "boundary-solution logarithms have inconsistent signs; "
            "a kernel point separates the two orders")
    val += -mu_u[0] + mc_u[0] - dq_u[0] + dq_c[0]
    return val


# Bernoulli numbers B_2, B_4, ..., B_16
_BERNOULLI = (1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0,
              5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0)


def riemann_zeta_em(s, cutoff=50, terms=8):
    """Riemann zeta for real s > 1 by Euler-Maclaurin summation."""
    if not s > 1.0:
        raise ValueError(f"requires s > 1, got {s}")
    if not 1 <= terms <= len(_BERNOULLI):
        raise ValueError(f"terms must lie in [1, {len(_BERNOULLI)}]")
    n = cutoff
    acc = sum(k ** (-s) for k in range(1, n))
    acc += 0.5 * n ** (-s)
    acc += n ** (1.0 - s) / (s - 1.0)
    factorial = 1.0
    for j in range(1, terms + 1):
        factorial *= (2 * j - 1) * (2 * j)
        prod = 1.0  # s (s+1) ... (s + 2j - 2)
        for i in range(2 * j - 1):
            prod *= (s + i)
        acc += _BERNOULLI[j - 1] / factorial * prod * n ** (-s - 2 * j + 1.0)
    return acc


_LOG_2PI = math.log(2.0 * math.pi)


def bfk_interval_logdet(op):
    """zeta'(0) of the interval harmonic operator, Dirichlet at both ends.

    Through the boundary-value Wronskian the determinant reduces to the
    boundary value of the normalized opposite-end solution, giving with
    m = |mu_p| and L = log(R'/R)

        zeta'(0) = log m - log((R'/R)^m - (R/R')^m),   m != 0,
        zeta'(0) = -log 2 - log L,                      m == 0.
    """
    if op.R_prime is None:
        raise ValueError("interval determinant needs R_prime")
    if op.bc != DIRICHLET or op.bc_prime != DIRICHLET:
        raise ValueError("closed form stated for Dirichlet conditions at both ends")
    m = abs(op.mu_p)
    L = math.log(op.R_prime / op.R)
    if m == 0.0:
        val = -math.log(2.0) - math.log(L)
    else:
        # log(e^{mL} - e^{-mL}) = m L + log1p(-e^{-2 m L})
        val = math.log(m) - (m * L + math.log1p(-math.exp(-2.0 * m * L)))
    return ZetaValue(value=val, kind="zeta_prime_at_0", provenance="closed_form")


def eigen_zeta_oracle(op, j_max=400, em_cutoff=50, em_terms=8):
    """zeta'(0) of the interval Dirichlet harmonic operator by eigenvalue
    summation: lambda_k = mu_p^2 + (k pi / L)^2, k >= 1.

    The zeta function is rearranged binomially,

        zeta(s) = (L/pi)^{2s} sum_j C(-s, j) a^{2j} zeta_R(2s + 2j),
        a = |mu_p| L / pi  (requires a < 1),

    and differentiated at s = 0 termwise:

        zeta'(0) = -log(L/pi) - log(2 pi)
                   + sum_{j>=1} (-1)^j a^{2j} zeta_R(2j) / j,

    using zeta_R(0) = -1/2 and zeta_R'(0) = -log(2 pi)/2, with the even
    zeta values from Euler-Maclaurin summation.
    """
    if op.R_prime is None:
        raise ValueError("oracle applies to interval operators")
    m = abs(op.mu_p)
    L = math.log(op.R_prime / op.R)
    a = m * L / math.pi
    if not a < 1.0:
        raise ConvergenceDomainError(
            f"binomial rearrangement requires |mu_p| log(R'/R) < pi; "
            f"got {m * L:.6g}")
    val = -math.log(L / math.pi) - _LOG_2PI
    if a > 0.0:
        a2 = a * a
        powj = 1.0
        for j in range(1, j_max + 1):
            powj *= a2
            term = ((-1.0) ** j) * powj * \
                riemann_zeta_em(2.0 * j, em_cutoff, em_terms) / j
            val += term
            if abs(term) < 1e-18 * max(1.0, abs(val)):
                break
    return ZetaValue(value=val, kind="zeta_prime_at_0", provenance="eigen_oracle")


def harmonic_halfline_zeta_prime0(mu_p, R):
    """zeta'(0) of the half-line Dirichlet harmonic operator (closed form):
    |mu_p| log R + (1/2) log |mu_p| for mu_p != 0, and 0 at mu_p = 0."""
    m = abs(mu_p)
    val = 0.0 if m == 0.0 else m * math.log(R) + 0.5 * math.log(m)
    return ZetaValue(value=val, kind="zeta_prime_at_0", provenance="closed_form")


def harmonic_halfline_zeta_prime0_numeric(mu_p, R):
    """Same value through the regularized-integral pipeline:
    zeta'(0) = 2 reglim int_0^inf z Tr_r (D + z^2)^{-1} dz with the
    renormalized trace of ``cuspops``."""
    op = HarmonicOperator(mu_p=mu_p, R=R, bc=DIRICHLET)

    def f(z):
        return z * renorm_resolvent_trace_harmonic(op, z)

    lower_model = [(0, 1)] if mu_p == 0.0 else None
    val = 2.0 * reg_integral(f, 0.0, tail_model=[(1, 0), (0, 1)],
                             lower_model=lower_model)
    return ZetaValue(value=val, kind="zeta_prime_at_0",
                     provenance="resolvent_pipeline")


def neumann_dirichlet_diff(mu_p):
    """zeta'(0) difference (Neumann minus Dirichlet) of the half-line
    harmonic operator: -log(2|mu_p|) for mu_p > 0, +log(2|mu_p|) for
    mu_p < 0, and 0 at mu_p = 0."""
    if mu_p == 0.0:
        return 0.0
    return -math.copysign(math.log(2.0 * abs(mu_p)), mu_p)


def neumann_dirichlet_diff_numeric(mu_p, R=1.0):
    """Neumann-minus-Dirichlet zeta'(0) via the trace-difference integral.

    The renormalized-trace difference is ((k - mu)/(k + mu) + 1)/(4 k^2)
    = 1/(2 k (k + mu_p)), integrated against 2 z dz as a regularized
    integral; the log R pieces cancel exactly, and for mu_p <= 0 the
    lower endpoint needs its own regularization.
    """
    def f(z):
        k = math.hypot(mu_p, z)
        return z / (k * (k + mu_p)) if k > 0 else 0.0

    lower_model = [(0, 1)] if mu_p <= 0.0 else None
    return reg_integral(f, 0.0, tail_model=[(0, 1)], lower_model=lower_model)


def comparison_limit(cs, p):
    """Large-truncation limit of the non-harmonic cylinder-vs-cusp zeta
    difference in degree p: -zeta(0) log 2 over the coclosed spectrum."""
    return -_cs.zeta0_ccl(cs, p) * math.log(2.0)
