"""Command-line front end.

Subcommands: bessel, detzeta (halfline | interval), tfunction, model-cusp,
defect, glue, anomaly, verify.  Results print as a single JSON object on
stdout with deterministic key order and 17-significant-digit floats;
``--csv PATH`` additionally writes flat name,value rows.

Exit codes: 0 success, 2 validation error, 3 numerical-tolerance failure
in ``verify``.
"""

import argparse
import math
import sys

from . import crosssection as _cs
from . import detzeta as _dz
from . import torsion as _to
from ._serialize import canonical_json, flat_rows
from .anomaly import AnomalyInput, b_secondary_class
from .cuspops import (CONVENTION_ABSOLUTE, CONVENTION_SCALED, CuspOperator,
                      HarmonicOperator, IntervalOperator, dirichlet,
                      kernel_check, neumann, resolvent_trace)
from .specfun import bessel_ik_log, uniform_ik_log
from .verify import SUITES, run_suites

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_TOLERANCE = 3


def _finite(text):
    value = float(text)
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"value must be finite, got {text}")
    return value


def _build_parser():
    top = argparse.ArgumentParser(
        prog="cuspdet",
        description="determinants, traces and torsion assembly for cusp operators")
    top.add_argument("--csv", metavar="PATH",
                     help="additionally write flat name,value rows")
    top.add_argument("--jobs", type=int, default=1,
                     help="parallelism degree (grid evaluations in verify)")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bessel", help="modified Bessel quad at (nu, x)")
    p.add_argument("--nu", type=_finite, required=True)
    p.add_argument("--x", type=_finite, required=True)
    p.add_argument("--uniform", type=int, metavar="K",
                   help="also evaluate the large-order uniform expansion "
                        "with K correction terms at s = x/nu")

    p = sub.add_parser("detzeta", help="determinant-side quantities")
    dz = p.add_subparsers(dest="detzeta_command", required=True)
    ph = dz.add_parser("halfline", help="cusp operator on (R, infinity)")
    ph.add_argument("--mu", type=_finite, required=True)
    ph.add_argument("--c", type=_finite, required=True)
    ph.add_argument("--R", type=_finite, required=True)
    ph.add_argument("--neumann", type=_finite, metavar="ALPHA",
                    help="generalized Neumann data (default Dirichlet)")
    ph.add_argument("--convention", choices=("scaled", "absolute"),
                    default="absolute")
    pi = dz.add_parser("interval", help="harmonic operator on (R, R')")
    pi.add_argument("--mu_p", type=_finite, required=True)
    pi.add_argument("--R", type=_finite, required=True)
    pi.add_argument("--Rprime", type=_finite, required=True)

    p = sub.add_parser("tfunction", help="determinant ratio under order shift")
    p.add_argument("--z", type=_finite, required=True)
    p.add_argument("--c", type=_finite, required=True)
    p.add_argument("--mu", type=_finite, required=True)
    p.add_argument("--R", type=_finite, required=True)
    p.add_argument("--Rprime", type=_finite)

    p = sub.add_parser("model-cusp", help="renormalized model-cusp torsion")
    p.add_argument("--cross-section", required=True, metavar="FILE")
    p.add_argument("--R", type=_finite, required=True)
    p.add_argument("--anomaly", type=_finite, required=True,
                   metavar="VALUE", help="integrated boundary anomaly")

    p = sub.add_parser("defect", help="torsion-norm defect of the cone")
    p.add_argument("--cross-section", required=True, metavar="FILE")
    p.add_argument("--tau-cone", type=_finite, required=True)
    p.add_argument("--basis", required=True, choices=("hN",),
                   help="basis in which tau-cone is stated (must be hN)")

    p = sub.add_parser("glue", help="gluing-law assembly")
    p.add_argument("--logT-K", type=_finite, required=True)
    p.add_argument("--logT-U", type=_finite, required=True)
    p.add_argument("--log-tau", type=_finite, required=True)
    p.add_argument("--chi", type=_finite, required=True)

    p = sub.add_parser("anomaly", help="integrated boundary anomaly")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--fprime0", type=_finite, required=True)
    p.add_argument("--volume", type=_finite, default=1.0)
    p.add_argument("--rank", type=int, default=1)

    p = sub.add_parser("verify", help="run the numerical verification suites")
    p.add_argument("--suite", choices=("all",) + SUITES, default="all")

    return top


def _quad_dict(q):
    return {"log_i": q[0], "log_i_prime": q[1],
            "log_k": q[2], "log_neg_k_prime": q[3]}


def _cmd_bessel(args):
    q = bessel_ik_log(args.nu, args.x)
    out = {"nu": args.nu, "x": args.x,
           "log_scaled": _quad_dict((q.log_i, q.log_ip, q.log_k, q.log_mkp))}
    wronskian = args.x * (math.exp(q.log_ip + q.log_k)
                          + math.exp(q.log_i + q.log_mkp))
    out["wronskian_product"] = wronskian
    try:
        lin = q.to_linear()
        out["linear"] = {"i": lin.i_val, "k": lin.k_val,
                         "i_prime": lin.i_prime, "k_prime": lin.k_prime}
    except OverflowError:
        out["linear"] = None
    if args.uniform is not None:
        s = args.x / args.nu
        out["uniform"] = _quad_dict(uniform_ik_log(args.nu, s, args.uniform))
    return out, EXIT_OK


def _cmd_detzeta(args):
    if args.detzeta_command == "halfline":
        if args.neumann is None:
            bc = dirichlet()
        else:
            conv = (CONVENTION_SCALED if args.convention == "scaled"
                    else CONVENTION_ABSOLUTE)
            bc = neumann(args.neumann, conv)
        op = CuspOperator(mu=args.mu, shift=args.c, R=args.R, bc=bc)
        out = {"mu": args.mu, "c": args.c, "R": args.R,
               "bc": bc.kind, "kernel_nontrivial": kernel_check(op, args.c),
               "resolvent_trace": resolvent_trace(op, args.c)}
        if bc.kind == "Dirichlet":
            out["ddt_logdet"] = _dz.ddt_logdet_dirichlet(args.mu, args.R, args.c)
        else:
            out["ddt_logdet"] = _dz.ddt_logdet_neumann(
                args.mu, args.R, args.c, bc.alpha_absolute(args.R))
        return out, EXIT_OK
    op = HarmonicOperator(mu_p=args.mu_p, R=args.R, R_prime=args.Rprime)
    out = {"mu_p": args.mu_p, "R": args.R, "R_prime": args.Rprime,
           "zeta_prime_0": _dz.bfk_interval_logdet(op).value}
    try:
        out["zeta_prime_0_oracle"] = _dz.eigen_zeta_oracle(op).value
    except _dz.ConvergenceDomainError:
        out["zeta_prime_0_oracle"] = None
    return out, EXIT_OK


def _cmd_tfunction(args):
    if args.Rprime is None:
        op = CuspOperator(mu=args.mu, shift=args.c, R=args.R, bc=dirichlet())
    else:
        op = IntervalOperator(mu=args.mu, shift=args.c, R=args.R,
                              bc=dirichlet(), R_prime=args.Rprime)
    return {"z": args.z, "c": args.c, "mu": args.mu, "R": args.R,
            "R_prime": args.Rprime,
            "t_value": _dz.t_function(op, args.z)}, EXIT_OK


def _cmd_model_cusp(args):
    cs = _cs.load(args.cross_section)
    rep = _to.model_cusp_torsion(cs, args.R, args.anomaly)
    return rep.to_dict(), EXIT_OK


def _cmd_defect(args):
    cs = _cs.load(args.cross_section)
    rep = _to.cone_defect(cs, args.tau_cone, basis=args.basis)
    return rep.to_dict(), EXIT_OK


def _cmd_glue(args):
    total = _to.glue_assemble(args.logT_K, args.logT_U, args.log_tau, args.chi)
    return {"logT_K": args.logT_K, "logT_U_relN": args.logT_U,
            "log_tau_H": args.log_tau, "chi_N_E": args.chi,
            "logT_M": total}, EXIT_OK


def _cmd_anomaly(args):
    inp = AnomalyInput(n=args.n, fprime0=args.fprime0,
                       volume=args.volume, rank_e=args.rank)
    b = b_secondary_class(inp)
    return {"n": args.n, "fprime0": args.fprime0, "volume": args.volume,
            "rank_e": args.rank, "b_integral": b,
            "rank_weighted": args.rank / (-2.0) * b}, EXIT_OK


def _cmd_verify(args):
    report = run_suites(args.suite, jobs=max(1, args.jobs))
    return report, EXIT_OK if report["pass"] else EXIT_TOLERANCE


_HANDLERS = {
    "bessel": _cmd_bessel,
    "detzeta": _cmd_detzeta,
    "tfunction": _cmd_tfunction,
    "model-cusp": _cmd_model_cusp,
    "defect": _cmd_defect,
    "glue": _cmd_glue,
    "anomaly": _cmd_anomaly,
    "verify": _cmd_verify,
}


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on bad flags already
        return int(exc.code) if exc.code else EXIT_OK
    try:
        out, code = _HANDLERS[args.command](args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    text = canonical_json(out)
    sys.stdout.write(text + "\n")
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write("name,value\n")
            for name, value in flat_rows(out):
                fh.write(f"{name},{value}\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
