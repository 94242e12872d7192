r"""Finite polyhomogeneous expansions and the two renormalization primitives.

An ``AsymptoticSeries`` is a finite sum of terms ``coeff * Z^gamma * log^k Z``
understood either as Z -> infinity or Z -> 0.  The *regularized limit* of a
function admitting such an expansion is the coefficient of the constant term
(gamma = 0, k = 0); the *regularized integral* of an integrand f over
(lower, infinity) is the regularized limit of the partial integrals

    F(Z) = int_lower^Z f(z) dz,   Z -> infinity,

and, when f diverges non-integrably at a lower endpoint 0, additionally the
regularized limit of int_eps^c f as eps -> 0.

Regularized integrals are computed numerically: partial integrals are
evaluated at geometrically spaced cuts with adaptive composite
Gauss-Legendre quadrature, the declared divergent model terms (plus a
decaying basis, which cannot shift the constant term) are fitted by least
squares, and the constant is extracted.  A fit whose relative residual
exceeds the acceptance threshold raises ``UnresolvedExpansionError`` rather
than returning a hallucinated constant.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

TO_ZERO = "to_zero"
TO_INFINITY = "to_infinity"

FIT_RTOL_DEFAULT = 1e-6


class DirectionMismatchError(ValueError):
    """Ring operation on series with different directions."""


class UnresolvedExpansionError(RuntimeError):
    """Tail fit residual above tolerance; the declared model is inadequate."""


class FitRankError(ValueError):
    """Rank-deficient least-squares design matrix."""


@dataclass(frozen=True)
class AsymptoticSeries:
    """terms: tuple of (exponent gamma, log power k, coefficient)."""

    terms: tuple
    direction: str
    remainder_order: float = float("nan")

    def coeff(self, gamma, k):
        for g, kk, c in self.terms:
            if g == gamma and kk == k:
                return c
        return 0.0


def _dominance_key(direction):
    if direction == TO_INFINITY:
        return lambda t: (-t[0], -t[1])
    return lambda t: (t[0], -t[1])


def series(terms, direction, remainder_order=float("nan")):
    """Canonicalized series: merged keys, zero coefficients dropped, sorted."""
    if direction not in (TO_ZERO, TO_INFINITY):
        raise ValueError(f"unknown direction {direction!r}")
    merged = {}
    for gamma, k, c in terms:
        if k < 0 or k != int(k):
            raise ValueError(f"log power must be a non-negative integer, got {k}")
        key = (float(gamma), int(k))
        merged[key] = merged.get(key, 0.0) + float(c)
    out = [(g, k, c) for (g, k), c in merged.items() if c != 0.0]
    out.sort(key=_dominance_key(direction))
    return AsymptoticSeries(tuple(out), direction, remainder_order)


def lim_extract(s):
    """Regularized limit: the coefficient of (gamma=0, k=0), or 0 if absent."""
    return s.coeff(0.0, 0)


def series_add(a, b):
    if a.direction != b.direction:
        raise DirectionMismatchError(
            f"cannot add series with directions {a.direction!r} and {b.direction!r}")
    rem = min(a.remainder_order, b.remainder_order) \
        if not (math.isnan(a.remainder_order) or math.isnan(b.remainder_order)) \
        else float("nan")
    return series(a.terms + b.terms, a.direction, rem)


def series_scale(a, lam):
    return series(tuple((g, k, lam * c) for g, k, c in a.terms),
                  a.direction, a.remainder_order)


@dataclass(frozen=True)
class FitDiagnostics:
    rel_residual: float
    max_abs_residual: float
    rank: int
    n_samples: int


def _design_column(z, gamma, k):
    col = np.ones_like(z)
    if gamma != 0.0:
        col = z ** gamma
    if k:
        col = col * np.log(z) ** k
    return col


def fit_tail(samples, model, direction=TO_INFINITY):
    """Least-squares fit of samples (Z, f(Z)) to the model terms + constant.

    ``model`` is a sequence of (gamma, k) pairs; the constant (0, 0) is always
    included and need not be listed.  Requires at least 2x(model size + 1)
    samples spanning at least one decade in Z.  Returns the fitted series and
    residual diagnostics.
    """
    pts = [(float(z), float(y)) for z, y in samples]
    if not pts:
        raise ValueError("no samples")
    zs = np.array([p[0] for p in pts])
    ys = np.array([p[1] for p in pts])
    if np.any(zs <= 0.0):
        raise ValueError("sample abscissae must be positive")
    keys = []
    for gamma, k in model:
        key = (float(gamma), int(k))
        if key not in keys and key != (0.0, 0):
            keys.append(key)
    keys.append((0.0, 0))
    if len(pts) < 2 * len(keys):
        raise ValueError(
            f"need at least {2 * len(keys)} samples for a model of size "
            f"{len(keys)}, got {len(pts)}")
    if zs.max() / zs.min() < 10.0 - 1e-9:
        raise ValueError("samples must span at least one decade")
    cols = [_design_column(zs, g, k) for g, k in keys]
    design = np.column_stack(cols)
    scale = np.linalg.norm(design, axis=0)
    scale[scale == 0.0] = 1.0
    coeffs, _, rank, _ = np.linalg.lstsq(design / scale, ys, rcond=None)
    if rank < len(keys):
        raise FitRankError(
            f"design matrix rank {rank} < {len(keys)}; model terms are "
            "numerically dependent on this sample set")
    coeffs = [float(c) for c in coeffs / scale]
    resid = design @ coeffs - ys
    ynorm = float(np.linalg.norm(ys))
    rnorm = float(np.linalg.norm(resid))
    diag = FitDiagnostics(
        rel_residual=rnorm / max(ynorm, 1e-300),
        max_abs_residual=float(np.max(np.abs(resid))),
        rank=int(rank),
        n_samples=len(pts),
    )
    fitted = series([(g, k, c) for (g, k), c in zip(keys, coeffs)], direction)
    return fitted, diag


@lru_cache(maxsize=None)
def _gl_nodes(n=20):
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def _gl_panel(f, a, b):
    """(integral estimate, max |f| over the nodes) on one panel."""
    x, w = _gl_nodes()
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    acc = 0.0
    fmax = 0.0
    for xi, wi in zip(x, w):
        v = f(mid + half * xi)
        acc += wi * v
        av = abs(v)
        if av > fmax:
            fmax = av
    return acc * half, fmax


def adaptive_gl(f, a, b, atol=1e-10, rtol=0.0, max_depth=12,
                f_noise_rel=1e-13):
    """Adaptive composite 20-point Gauss-Legendre on [a, b].

    A panel is accepted when bisection changes it by less than its share
    of ``atol`` (proportional to panel length), than ``rtol`` times the
    panel value, or than the noise floor ``f_noise_rel * max|f| * len``;
    the floor stops the recursion from chasing evaluation noise when the
    integrand is itself computed to finite accuracy.
    """
    if a == b:
        return 0.0
    total_len = abs(b - a)
    i0, m0 = _gl_panel(f, a, b)
    total = 0.0
    stack = [(a, b, i0, m0, 0)]
    while stack:
        lo, hi, coarse, mcoarse, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        left, ml = _gl_panel(f, lo, mid)
        right, mr = _gl_panel(f, mid, hi)
        fine = left + right
        mmax = max(mcoarse, ml, mr)
        err = abs(fine - coarse)
        tol = max(atol * (hi - lo) / total_len, rtol * abs(fine),
                  f_noise_rel * mmax * (hi - lo))
        if err <= tol or depth >= max_depth:
            total += fine
            continue
        stack.append((lo, mid, left, ml, depth + 1))
        stack.append((mid, hi, right, mr, depth + 1))
    return total


def _augmented_model(model, n_decay, with_logs):
    aug = [(float(g), int(k)) for g, k in model]
    logs_present = with_logs or any(k > 0 for _, k in aug)
    for j in range(1, n_decay + 1):
        aug.append((-float(j), 0))
        if logs_present and j <= 2:
            aug.append((-float(j), 1))
    return aug


def _shrinking_model(model, n_decay, with_logs):
    aug = [(float(g), int(k)) for g, k in model]
    logs_present = with_logs or any(k > 0 for _, k in aug)
    for j in range(1, n_decay + 1):
        aug.append((float(j), 0))
        if logs_present and j <= 2:
            aug.append((float(j), 1))
    return aug


def reg_integral(f, lower, tail_model=(), *, lower_model=None,
                 z_max=800.0, first_cut=40.0, n_cuts=20,
                 split=1.0, eps_min=1e-4, eps_cuts=16,
                 quad_atol=1e-10, fit_rtol=FIT_RTOL_DEFAULT,
                 n_decay=4, f_noise_rel=1e-13):
    """Regularized integral of f over (lower, infinity).

    ``tail_model``: divergent terms (gamma, k) of the partial integral as
    Z -> infinity, supplied by the caller from the known expansion of f.
    ``lower_model``: divergent terms of int_eps^split f as eps -> 0; only
    allowed with lower == 0 and needed when f is not integrable at 0.

    Partial integrals are sampled at geometric cuts, fitted (model plus a
    decaying basis plus the constant), and the constant term is returned.
    """
    if lower_model is not None and lower != 0.0:
        raise ValueError("lower_model is only meaningful for lower == 0")
    if z_max <= first_cut:
        raise ValueError("z_max must exceed first_cut")

    start = split if lower_model is not None else lower
    cuts = list(np.geomspace(first_cut, z_max, n_cuts))
    partial = []
    acc = 0.0
    prev = start
    for z in cuts:
        acc += adaptive_gl(f, prev, z, atol=quad_atol, f_noise_rel=f_noise_rel)
        partial.append((z, acc))
        prev = z
    fitted, diag = fit_tail(partial,
                            _augmented_model(tail_model, n_decay, False),
                            TO_INFINITY)
    if diag.rel_residual > fit_rtol:
        raise UnresolvedExpansionError(
            f"upper tail fit residual {diag.rel_residual:.3e} exceeds "
            f"{fit_rtol:.1e}; expansion unresolved")
    value = lim_extract(fitted)

    if lower_model is not None:
        eps = list(np.geomspace(split / 10.0, eps_min, eps_cuts))
        partial_lo = []
        acc = 0.0
        prev = split
        for e in eps:
            acc += adaptive_gl(f, e, prev, atol=quad_atol, f_noise_rel=f_noise_rel)
            partial_lo.append((e, acc))
            prev = e
        fitted_lo, diag_lo = fit_tail(partial_lo,
                                      _shrinking_model(lower_model, n_decay, False),
                                      TO_ZERO)
        if diag_lo.rel_residual > fit_rtol:
            raise UnresolvedExpansionError(
                f"lower tail fit residual {diag_lo.rel_residual:.3e} exceeds "
                f"{fit_rtol:.1e}; expansion unresolved")
        value += lim_extract(fitted_lo)
    return value
