r"""Graded exterior algebra with hatted generators and the boundary anomaly.

The algebra has 2n odd generators: unhatted e_1..e_n and hatted
ê_1..ê_n, all mutually anticommuting, with the canonical total order
e_1 < ... < e_n < ê_1 < ... < ê_n.  Elements are stored sparsely as
{(unhatted bitmask, hatted bitmask): coefficient}; every sign is derived
from transposition counting against the canonical order.

The Berezin integral extracts, for each unhatted monomial, the
coefficient of the full hatted top monomial ê_1 ∧ ... ∧ ê_n (increasing
index order) times a declared normalization constant kappa; it vanishes
on anything of hatted degree below n.

The boundary anomaly of a metric that deviates from a product structure
only through a conformal factor with normal derivative f'(0) at the
boundary is built from

    S = (f'(0)/4) sum_k e_k ê_k,
    B-density = Berezin[ exp(-R/2) sum_{k>=1} (-S^2)^k / (4 k k!) ],

where R is the (constant-coefficient) curvature element; the series is
finite because degrees exceed n.  The integrated anomaly multiplies the
top unhatted coefficient by the volume.  The normalization kappa and the
orientation convention are configuration, not derivation: every check
shipped here (vanishing at f'(0) = 0, parity and degree structure,
sub-top hatted degree annihilation) is independent of them.
"""

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "GradedElement", "AnomalyInput", "graded_mul", "graded_add",
    "graded_scale", "unit", "generator", "sdot", "rdot_element", "berezin",
    "b_secondary_class", "cusp_fprime",
]


@dataclass(frozen=True)
class GradedElement:
    """Sparse element of the 2n-generator graded algebra."""

    n: int
    terms: dict

    def __post_init__(self):
        full = (1 << self.n) - 1
        for (a, h), c in self.terms.items():
            if a & ~full or h & ~full:
                raise ValueError("generator index outside 1..n")

    def is_zero(self):
        return not self.terms


@dataclass(frozen=True)
class AnomalyInput:
    """Constant-coefficient boundary data for the integrated anomaly.

    fprime0 is the normal derivative of the conformal factor at the
    boundary; rdot, when present, is an antisymmetric n x n array of
    constant curvature coefficients (absent means flat); volume and
    rank_e are carried along for the assembly layer.
    """

    n: int
    fprime0: float
    volume: float = 1.0
    rank_e: int = 1
    rdot: object = None

    def __post_init__(self):
        if self.n % 2 != 0 or self.n < 2:
            raise ValueError(f"n must be even >= 2, got {self.n}")
        if self.rdot is not None:
            r = np.asarray(self.rdot, dtype=float)
            if r.shape != (self.n, self.n):
                raise ValueError(f"rdot must be {self.n} x {self.n}")
            if not np.allclose(r, -r.T, atol=1e-12):
                raise ValueError("rdot must be antisymmetric")


def unit(n):
    return GradedElement(n, {(0, 0): 1.0})


def zero(n):
    return GradedElement(n, {})


def generator(n, index, hatted=False):
    """The generator e_index (or ê_index), index in 1..n."""
    if not 1 <= index <= n:
        raise ValueError(f"index must lie in 1..{n}")
    bit = 1 << (index - 1)
    return GradedElement(n, {(0, bit) if hatted else (bit, 0): 1.0})


def _cross_inversions(xmask, ymask):
    """#{(x, y) : x in X, y in Y, x > y} for sorted bitmask blocks."""
    count = 0
    y = ymask
    while y:
        low = y & -y
        count += bin(xmask >> low.bit_length()).count("1")
        y ^= low
    return count


def _mul_monomials(a1, h1, a2, h2):
    """Product of canonical monomials; returns (a, h, sign) or None."""
    if a1 & a2 or h1 & h2:
        return None
    # word [A1][H1][A2][H2] -> canonical [A1 u A2][H1 u H2]; hatted
    # generators rank above all unhatted ones, so the inversions are the
    # |H1| |A2| block swaps plus in-block merges
    inv = bin(h1).count("1") * bin(a2).count("1")
    inv += _cross_inversions(a1, a2)
    inv += _cross_inversions(h1, h2)
    return a1 | a2, h1 | h2, -1.0 if inv & 1 else 1.0


def graded_mul(x, y):
    """Sign-correct product in the graded algebra."""
    if x.n != y.n:
        raise ValueError(f"dimension mismatch: {x.n} != {y.n}")
    out = {}
    for (a1, h1), c1 in x.terms.items():
        for (a2, h2), c2 in y.terms.items():
            m = _mul_monomials(a1, h1, a2, h2)
            if m is None:
                continue
            a, h, s = m
            key = (a, h)
            v = out.get(key, 0.0) + s * c1 * c2
            if v == 0.0:
                out.pop(key, None)
            else:
                out[key] = v
    return GradedElement(x.n, out)


def graded_add(x, y, cy=1.0):
    if x.n != y.n:
        raise ValueError(f"dimension mismatch: {x.n} != {y.n}")
    out = dict(x.terms)
    for key, c in y.terms.items():
        v = out.get(key, 0.0) + cy * c
        if v == 0.0:
            out.pop(key, None)
        else:
            out[key] = v
    return GradedElement(x.n, out)


def graded_scale(x, lam):
    if lam == 0.0:
        return zero(x.n)
    return GradedElement(x.n, {k: lam * c for k, c in x.terms.items()})


def sdot(n, fprime0):
    """(fprime0/4) sum_k e_k ê_k."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if fprime0 == 0.0:
        return zero(n)
    c = fprime0 / 4.0
    return GradedElement(n, {(1 << k, 1 << k): c for k in range(n)})


def rdot_element(n, rdot):
    """Curvature element sum_{k<j} r_kj e_k e_j ê_k ê_j for antisymmetric r."""
    r = np.asarray(rdot, dtype=float)
    terms = {}
    for k in range(n):
        for j in range(k + 1, n):
            if r[k, j] != 0.0:
                mask = (1 << k) | (1 << j)
                terms[(mask, mask)] = r[k, j]
    return GradedElement(n, terms)


def berezin(x, kappa=1.0):
    """Top-hatted coefficient extraction.

    Returns {unhatted mask: kappa * coefficient} over the terms whose
    hatted part is the full monomial ê_1 ∧ ... ∧ ê_n; every term of
    hatted degree below n is annihilated.
    """
    full = (1 << x.n) - 1
    return {a: kappa * c for (a, h), c in x.terms.items() if h == full}


def _exp_nilpotent(x):
    """exp of a nilpotent even element: finite sum 1 + x + x^2/2! + ..."""
    acc = unit(x.n)
    power = unit(x.n)
    fact = 1.0
    for k in range(1, 2 * x.n + 1):
        power = graded_mul(power, x)
        if power.is_zero():
            break
        fact *= k
        acc = graded_add(acc, power, 1.0 / fact)
    return acc


def b_secondary_class(inp, kappa=1.0):
    """Integrated boundary anomaly for constant-coefficient data.

    Evaluates exp(-R/2) sum_{k>=1} (-S^2)^k/(4 k k!) in the graded
    algebra (the sum terminates once degrees pass n), applies the Berezin
    functional, and multiplies the top unhatted coefficient by the
    volume.  Vanishes identically when fprime0 = 0 and the curvature is
    flat in the normal directions (product metric).
    """
    n = inp.n
    s = sdot(n, inp.fprime0)
    s2 = graded_mul(s, s)
    series = zero(n)
    power = unit(n)
    sign = 1.0
    fact = 1.0
    for k in range(1, n + 1):
        power = graded_mul(power, s2)
        sign = -sign
        fact *= k
        if power.is_zero():
            break
        series = graded_add(series, power, sign / (4.0 * k * fact))
    if inp.rdot is None:
        total = series
    else:
        expr = _exp_nilpotent(graded_scale(rdot_element(n, inp.rdot), -0.5))
        total = graded_mul(expr, series)
    top = berezin(total, kappa).get((1 << n) - 1, 0.0)
    return top * inp.volume


def cusp_fprime(R):
    """Normal derivative of the rescaled cusp conformal factor: -2/R."""
    if not R > 0.0:
        raise ValueError(f"R must be positive, got {R}")
    return -2.0 / R
