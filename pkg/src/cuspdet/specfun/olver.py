r"""Large-order uniform asymptotics of the modified Bessel functions.

For nu -> infinity, uniformly in s > 0,

    I_nu(nu s) ~ e^{nu eta} / (sqrt(2 pi nu) (1+s^2)^{1/4}) * sum_k U_k(p)/nu^k
    K_nu(nu s) ~ sqrt(pi/(2 nu)) e^{-nu eta} / (1+s^2)^{1/4} * sum_k U_k(p)/(-nu)^k

with the derivative expansions carrying (1+s^2)^{+1/4}/s and the companion
polynomials V_k,

    eta(s) = sqrt(1+s^2) + log(s / (1 + sqrt(1+s^2))),   p(s) = 1/sqrt(1+s^2).

U_k and V_k are generated exactly (rational arithmetic) by

    U_0 = 1,
    U_{k+1}(p) = p^2 (1-p^2)/2 * U_k'(p) + 1/8 * int_0^p (1-5t^2) U_k(t) dt,
    V_{k+1}(p) = U_{k+1}(p) - p(1-p^2)/2 * U_k(p) - p^2 (1-p^2) U_k'(p),

with the integration constant fixed to zero at p = 0 for every k.  This
normalisation yields deg U_k = 3k and the monomial-exponent set
{k + 2b : 0 <= b <= k}.
"""

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

from .errors import SpecfunDomainError

_K_MAX_LIMIT = 12


@dataclass(frozen=True)
class OlverVariables:
    """The substitution variables of the uniform expansion at a given s."""

    s: float
    nu_s: float  # eta(s)
    p_s: float   # p(s)


@dataclass(frozen=True)
class OlverPolyTable:
    """Coefficient vectors (index = degree in p) of U_k and V_k, k = 0..k_max."""

    u_polys: tuple
    v_polys: tuple

    @property
    def k_max(self):
        return len(self.u_polys) - 1


def olver_variables(s):
    if not (s > 0.0) or not math.isfinite(s):
        raise SpecfunDomainError(f"s must be positive and finite, got {s}")
    root = math.sqrt(1.0 + s * s)
    return OlverVariables(s=s, nu_s=root + math.log(s / (1.0 + root)),
                          p_s=1.0 / root)


def _poly_derivative(c):
    return tuple(c[d] * d for d in range(1, len(c)))


def _olver_tables_exact(k_max):
    u = [(Fraction(1),)]
    v = [(Fraction(1),)]
    for k in range(k_max):
        uk = u[k]
        duk = _poly_derivative(uk)
        nxt = [Fraction(0)] * (3 * (k + 1) + 1)
        # p^2 (1-p^2)/2 * U_k'
        for d, c in enumerate(duk):
            nxt[d + 2] += c / 2
            nxt[d + 4] -= c / 2
        # 1/8 * int_0^p (1 - 5 t^2) U_k(t) dt
        for d, c in enumerate(uk):
            nxt[d + 1] += c / (8 * (d + 1))
            nxt[d + 3] -= 5 * c / (8 * (d + 3))
        del nxt[3 * (k + 1) + 1:]
        u.append(tuple(nxt))
        # V_{k+1} = U_{k+1} - p(1-p^2)/2 U_k - p^2(1-p^2) U_k'
        vk = list(nxt)
        for d, c in enumerate(uk):
            vk[d + 1] -= c / 2
            vk[d + 3] += c / 2
        for d, c in enumerate(duk):
            vk[d + 2] -= c
            vk[d + 4] += c
        v.append(tuple(vk))
    return u, v


_table_lock = threading.Lock()
_table_cache = {}


def olver_table(k_max):
    """Float coefficient table for U_0..U_{k_max}, V_0..V_{k_max}.

    The cache is write-once/read-many; concurrent callers are safe.
    """
    if not isinstance(k_max, int) or k_max < 0 or k_max > _K_MAX_LIMIT:
        raise SpecfunDomainError(
            f"k_max must be an integer in [0, {_K_MAX_LIMIT}], got {k_max}")
    with _table_lock:
        table = _table_cache.get(k_max)
        if table is None:
            u, v = _olver_tables_exact(k_max)
            table = OlverPolyTable(
                u_polys=tuple(tuple(float(c) for c in poly) for poly in u),
                v_polys=tuple(tuple(float(c) for c in poly) for poly in v),
            )
            _table_cache[k_max] = table
    return table


def _poly_eval(c, p):
    acc = 0.0
    for coeff in reversed(c):
        acc = acc * p + coeff
    return acc


def uniform_ik_log(nu, s, k_max=4):
    """Truncated uniform expansion of (log I, log I', log K, log(-K')).

    Evaluated at order nu and argument x = nu*s, with k_max correction
    terms.  Requires nu >= 10; below that the direct kernel is
    authoritative.
    """
    if not (nu >= 10.0) or not math.isfinite(nu):
        raise SpecfunDomainError(f"uniform expansion needs nu >= 10, got {nu}")
    var = olver_variables(s)
    table = olver_table(k_max)
    p = var.p_s
    su_p = su_m = sv_p = sv_m = 0.0
    sign = 1.0
    scale = 1.0
    for k in range(k_max + 1):
        uk = _poly_eval(table.u_polys[k], p) * scale
        vk = _poly_eval(table.v_polys[k], p) * scale
        su_p += uk
        sv_p += vk
        su_m += sign * uk
        sv_m += sign * vk
        sign = -sign
        scale /= nu
    if min(su_p, su_m, sv_p, sv_m) <= 0.0:
        raise SpecfunDomainError(
            "uniform expansion correction sum is not positive; "
            "outside the usable (nu, s, k_max) range")
    ls2 = math.log1p(s * s)
    e = nu * var.nu_s
    li = e - 0.5 * math.log(2.0 * math.pi * nu) - 0.25 * ls2 + math.log(su_p)
    lk = -e + 0.5 * math.log(math.pi / (2.0 * nu)) - 0.25 * ls2 + math.log(su_m)
    lip = (e - 0.5 * math.log(2.0 * math.pi * nu) + 0.25 * ls2 - math.log(s)
           + math.log(sv_p))
    lkp = (-e + 0.5 * math.log(math.pi / (2.0 * nu)) + 0.25 * ls2 - math.log(s)
           + math.log(sv_m))
    return li, lip, lk, lkp
