r"""Self-contained numerical verification suites.

Each suite evaluates a family of identities at pinned tolerances and
returns one record per check: name, measured error, tolerance, verdict.
Everything is hermetic (generated data only, no files, no network).

Grid evaluations may fan out over processes; per-point results are
keyed, sorted, and reduced deterministically, so the report bytes do not
depend on the parallelism degree.
"""

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import anomaly as _an
from . import crosssection as _cs
from . import detzeta as _dz
from . import torsion as _to
from .asymptote import reg_integral
from .cuspops import CuspOperator, HarmonicOperator, dirichlet, resolvent_trace
from .specfun import bessel_ik_log, uniform_ik_log, wronskian_product

SUITES = ("specfun", "detzeta", "torsion", "anomaly", "crosssection")


@dataclass(frozen=True)
class Check:
    name: str
    error: float
    tolerance: float

    @property
    def passed(self):
        return bool(self.error <= self.tolerance)

    def to_dict(self):
        return {"name": self.name, "error": float(self.error),
                "tolerance": float(self.tolerance), "pass": self.passed}


def _map(fn, items, jobs):
    if jobs <= 1:
        pairs = [(it, fn(it)) for it in items]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            pairs = list(zip(items, pool.map(fn, items)))
    pairs.sort(key=lambda kv: repr(kv[0]))
    return [v for _, v in pairs]


def _wronskian_err(nu_x):
    nu, x = nu_x
    q = bessel_ik_log(nu, x)
    w = x * (math.exp(q.log_ip + q.log_k) + math.exp(q.log_i + q.log_mkp))
    return abs(w - 1.0)


def _uniform_err(args):
    nu, s, k_max = args
    direct = bessel_ik_log(nu, nu * s)
    uni = uniform_ik_log(nu, s, k_max)
    d = (direct.log_i, direct.log_ip, direct.log_k, direct.log_mkp)
    return max(abs(math.expm1(u - v)) for u, v in zip(uni, d))


def suite_specfun(jobs=1):
    grid = [(20.0 * i / 19.0, 0.1 + (50.0 - 0.1) * j / 9.0)
            for i in range(20) for j in range(10)]
    errs = _map(_wronskian_err, grid, jobs)
    checks = [Check("wronskian_grid_20x10", max(errs), 1e-10)]
    pts = [(nu, s) for nu in (50.0, 100.0, 200.0) for s in (0.2, 1.0, 5.0)]
    err4 = _map(_uniform_err, [(nu, s, 4) for nu, s in pts], jobs)
    err1 = _map(_uniform_err, [(nu, s, 1) for nu, s in pts], jobs)
    checks.append(Check("uniform_kmax4_rel", max(err4), 1e-6))
    checks.append(Check("uniform_improves_1_to_4",
                        max(e4 / e1 for e4, e1 in zip(err4, err1)), 1.0 - 1e-9))
    return checks


def _variation_err(args):
    mu, R, t = args
    op = CuspOperator(mu=mu, shift=0.0, R=R, bc=dirichlet())
    return abs(_dz.ddt_logdet_dirichlet(mu, R, t)
               - 2.0 * t * resolvent_trace(op, t))


def suite_detzeta(jobs=1):
    checks = []
    # interval determinant closed form vs eigenvalue oracle
    worst = 0.0
    worst0 = 0.0
    for m in (0.0, 0.5, 1.0, 2.0):
        for L in (0.5, 1.0, 2.0):
            if m * L >= math.pi:
                continue
            op = HarmonicOperator(mu_p=m, R=1.0, R_prime=math.exp(L))
            c = _dz.bfk_interval_logdet(op).value
            worst = max(worst, abs(c - _dz.eigen_zeta_oracle(op).value))
            if m == 0.0:
                worst0 = max(worst0, abs(c - (-math.log(2.0) - math.log(L))))
    checks.append(Check("interval_closed_vs_oracle", worst, 1e-6))
    checks.append(Check("interval_mu0_exact", worst0, 1e-12))
    # variation triangle
    grid = [(mu, R, t) for mu in (1.0, 2.0) for R in (1.0, 1.5)
            for t in (0.5, 1.0, 2.0)]
    checks.append(Check("variation_triangle",
                        max(_map(_variation_err, grid, jobs)), 1e-5))
    # determinant-ratio function: zero at z = 0, derivative identity
    op = CuspOperator(mu=1.5, shift=1.0, R=1.2, bc=dirichlet())
    checks.append(Check("tfunction_zero_at_0",
                        abs(_dz.t_function(op, 0.0)), 1e-12))
    worst = 0.0
    for z in (0.5, 1.0, 2.0):
        lam = -z * z
        h = 1e-4 * (1.0 + abs(lam))
        fd = (_dz.t_function(op, math.sqrt(-(lam + h)))
              - _dz.t_function(op, math.sqrt(-(lam - h)))) / (2.0 * h)
        quad = op.mu ** 2 * resolvent_trace(op, math.hypot(op.shift, op.mu * z))
        worst = max(worst, abs(fd - quad) / abs(quad))
    checks.append(Check("tfunction_dlambda_vs_trace", worst, 1e-4))
    # half-line harmonic determinant: pipeline vs closed form
    worst = 0.0
    for m in (0.5, 1.0, 2.0):
        for R in (1.0, math.e, 5.0):
            c = _dz.harmonic_halfline_zeta_prime0(m, R).value
            n = _dz.harmonic_halfline_zeta_prime0_numeric(m, R).value
            worst = max(worst, abs(c - n))
    checks.append(Check("harmonic_halfline_pipeline", worst, 1e-5))
    checks.append(Check("harmonic_halfline_mu0",
                        abs(_dz.harmonic_halfline_zeta_prime0(0.0, 2.0).value),
                        0.0))
    # Neumann-Dirichlet difference
    worst = 0.0
    for m in (0.5, 1.0, 2.0, -0.5, -1.0, -2.0):
        worst = max(worst, abs(_dz.neumann_dirichlet_diff(m)
                               - _dz.neumann_dirichlet_diff_numeric(m)))
    checks.append(Check("neumann_dirichlet_diff", worst, 1e-5))
    checks.append(Check("neumann_dirichlet_diff_mu0",
                        abs(_dz.neumann_dirichlet_diff(0.0)), 0.0))
    # regularized-integral closed forms (0, 1, 0)
    v1 = reg_integral(lambda z: z / (1.0 + z * z), 0.0, tail_model=[(0, 1)])
    v2 = reg_integral(lambda z: 1.0 / (1.0 + z) ** 2, 0.0)
    v3 = reg_integral(lambda z: 1.0 / (1.0 + z), 0.0, tail_model=[(0, 1)])
    checks.append(Check("reg_integral_closed_forms",
                        max(abs(v1), abs(v2 - 1.0), abs(v3)), 1e-8))
    return checks


def suite_crosssection(jobs=1):
    cs = _cs.generate_flat_torus_2d(1.0, 30)
    worst = 0.0
    for s in (2.0, 3.0, 4.0):
        alt = sum((-1) ** p * _cs.zeta_ccl(cs, p, s) for p in range(cs.n + 1))
        worst = max(worst, abs(alt))
    return [Check("torus_alternating_zeta", worst, 1e-8)]


def suite_anomaly(jobs=1):
    checks = [Check("vanishes_flat_product",
                    abs(_an.b_secondary_class(_an.AnomalyInput(n=4, fprime0=0.0))),
                    0.0)]
    # flat case scales like fprime0^n, even in the sign
    err = 0.0
    for n in (2, 4):
        base = _an.b_secondary_class(_an.AnomalyInput(n=n, fprime0=1.0))
        for lam in (0.5, -1.0, 2.0):
            got = _an.b_secondary_class(_an.AnomalyInput(n=n, fprime0=lam))
            err = max(err, abs(got - base * lam ** n))
    checks.append(Check("flat_case_power_law", err, 1e-12))
    # hatted degree below n is annihilated
    worst = 0.0
    rng = random.Random(99)
    for _ in range(200):
        n = rng.randint(2, 5)
        a = rng.getrandbits(n)
        h = rng.getrandbits(n)
        if h == (1 << n) - 1:
            continue
        el = _an.GradedElement(n, {(a, h): rng.uniform(-2, 2)})
        if _an.berezin(el):
            worst = 1.0
    checks.append(Check("berezin_subtop_annihilates", worst, 0.0))
    # product signs against the transposition-counting oracle
    bad = 0
    for _ in range(1000):
        n = rng.randint(1, 6)
        a1, h1 = rng.getrandbits(n), rng.getrandbits(n)
        a2, h2 = rng.getrandbits(n), rng.getrandbits(n)
        x = _an.GradedElement(n, {(a1, h1): 1.0})
        y = _an.GradedElement(n, {(a2, h2): 1.0})
        prod = _an.graded_mul(x, y)
        if a1 & a2 or h1 & h2:
            if not prod.is_zero():
                bad += 1
            continue
        seq = [i for i in range(n) if a1 >> i & 1]
        seq += [n + i for i in range(n) if h1 >> i & 1]
        seq += [i for i in range(n) if a2 >> i & 1]
        seq += [n + i for i in range(n) if h2 >> i & 1]
        inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq))
                  if seq[i] > seq[j])
        want = {(a1 | a2, h1 | h2): -1.0 if inv % 2 else 1.0}
        if prod.terms != want:
            bad += 1
    checks.append(Check("graded_mul_sign_oracle_1000", float(bad), 0.0))
    return checks


def suite_torsion(jobs=1):
    rng = random.Random(20260810)
    worst = 0.0
    cancel = 0.0
    for _ in range(20):
        n = rng.choice([2, 4, 6])
        b = [0] * (n + 1)
        for p in range(n // 2):
            b[p] = rng.randint(0, 5)
            b[n - p] = b[p]
        cs = _cs.CrossSection(n=n, betti=tuple(b), rank_e=rng.randint(1, 3),
                              volume=1.0)
        tau = rng.uniform(-2.0, 2.0)
        R = rng.uniform(0.5, 5.0)
        a1, a2 = rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)
        d0 = _to.cone_defect(cs, tau).total
        d1 = _to.cone_defect_composed(cs, tau, R, a1).total
        d2 = _to.cone_defect_composed(cs, tau, R, a2).total
        worst = max(worst, abs(d0 - d1))
        cancel = max(cancel, abs(d1 - d2))
    return [Check("two_route_defect_20", worst, 1e-12),
            Check("anomaly_input_cancels", cancel, 1e-12)]


_SUITE_FNS = {
    "specfun": suite_specfun,
    "detzeta": suite_detzeta,
    "torsion": suite_torsion,
    "anomaly": suite_anomaly,
    "crosssection": suite_crosssection,
}


def run_suites(which="all", jobs=1):
    names = SUITES if which == "all" else (which,)
    report = {}
    ok = True
    for name in names:
        checks = _SUITE_FNS[name](jobs=jobs)
        report[name] = [c.to_dict() for c in checks]
        ok = ok and all(c.passed for c in checks)
    return {"suites": report, "pass": ok}
