r"""Modified Bessel functions I_nu, K_nu and derivatives for real order.

Public surface:

* ``bessel_ik(nu, x)``       -> BesselQuad of linear values (may overflow)
* ``bessel_ik_log(nu, x)``   -> BesselLogQuad of log-scaled values
* ``olver_table(k_max)``     -> exact Olver correction polynomials U_k, V_k
* ``uniform_ik(nu, s, k_max)`` / ``uniform_ik_log`` -> large-order uniform
  approximation of (I_nu(nu s), K_nu(nu s)) and derivatives
* ``backend_name()``         -> which kernel implementation is active

Only real order nu >= 0 and argument x > 0 are supported; purely imaginary
order (continuous-spectrum regimes) is explicitly out of scope.  All
operations are pure functions and safe for unrestricted concurrent use.
"""

import math
from dataclasses import dataclass

from .backend import backend_name, i_series_log, i_wronskian_log, ik_log
from .errors import BesselOverflowError, SpecfunDomainError
from .olver import (OlverPolyTable, OlverVariables, olver_table,
                    olver_variables, uniform_ik_log)

__all__ = [
    "BesselQuad", "BesselLogQuad", "bessel_ik", "bessel_ik_log",
    "uniform_ik", "uniform_ik_log", "olver_table", "olver_variables",
    "OlverPolyTable", "OlverVariables", "backend_name",
    "SpecfunDomainError", "BesselOverflowError", "wronskian_product",
]

_EXP_LIMIT = 709.0  # log of the largest representable double, rounded down


@dataclass(frozen=True)
class BesselQuad:
    """I_nu(x), K_nu(x) and their x-derivatives at one (nu, x)."""

    i_val: float
    k_val: float
    i_prime: float
    k_prime: float


@dataclass(frozen=True)
class BesselLogQuad:
    """Log-scaled quad: (log I, log I', log K, log(-K')).

    K' < 0 throughout the domain, so its magnitude is stored; the sign is
    part of the field name.
    """

    log_i: float
    log_ip: float
    log_k: float
    log_mkp: float

    def to_linear(self):
        m = max(self.log_i, self.log_ip, self.log_k, self.log_mkp)
        if m > _EXP_LIMIT:
            raise BesselOverflowError(
                f"linear value exp({m:.3g}) exceeds double range; "
                "use the log-scaled form")
        return BesselQuad(
            i_val=math.exp(self.log_i),
            k_val=math.exp(self.log_k),
            i_prime=math.exp(self.log_ip),
            k_prime=-math.exp(self.log_mkp),
        )


def _validate(nu, x):
    if not (isinstance(nu, (int, float)) and isinstance(x, (int, float))):
        raise SpecfunDomainError("nu and x must be real numbers")
    if not math.isfinite(nu) or not math.isfinite(x):
        raise SpecfunDomainError(f"non-finite input (nu={nu}, x={x})")
    if nu < 0.0:
        raise SpecfunDomainError(f"order must satisfy nu >= 0, got {nu}")
    if x <= 0.0:
        raise SpecfunDomainError(f"argument must satisfy x > 0, got {x}")


def bessel_ik_log(nu, x):
    """Log-scaled I, I', K, -K' at (nu, x); never overflows."""
    _validate(nu, x)
    li, lip, lk, lkp = ik_log(float(nu), float(x))
    return BesselLogQuad(log_i=li, log_ip=lip, log_k=lk, log_mkp=lkp)


def bessel_ik(nu, x):
    """Linear-scale I, I', K, K' at (nu, x).

    Raises BesselOverflowError instead of saturating when any of the four
    values exceeds double range.
    """
    return bessel_ik_log(nu, x).to_linear()


def uniform_ik(nu, s, k_max=4):
    """Uniform large-order approximation as a linear BesselQuad."""
    _validate(nu, s)
    li, lip, lk, lkp = uniform_ik_log(float(nu), float(s), k_max)
    return BesselLogQuad(li, lip, lk, lkp).to_linear()


def wronskian_product(quad, x):
    """x * (I' K - I K'), which equals 1 for the true functions."""
    return x * (quad.i_prime * quad.k_val - quad.i_val * quad.k_prime)
