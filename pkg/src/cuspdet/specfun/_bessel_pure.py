r"""Log-scaled modified Bessel kernel, pure-Python backend.

``ik_log(nu, x)`` returns the tuple

    (log I_nu(x),  log I'_nu(x),  log K_nu(x),  log(-K'_nu(x)))

for real order ``nu >= 0`` and argument ``x > 0``.  All four quantities are
logarithms of strictly positive numbers: I and I' are positive, K is
positive and strictly decreasing, so -K' > 0.  Working in log space keeps
ratios such as I_nu/K_nu representable for arguments of several hundred,
where the linear values overflow double precision.

Algorithm regions
-----------------
* ``I`` by its ascending power series when ``x <= max(10, nu/2)``.  The
  series has positive terms only, so there is no cancellation and the
  region is limited only by term count.
* ``I`` by the continued fraction for I'_nu/I_nu plus Wronskian
  normalisation ``I_nu (f K_nu - K'_nu) = 1/x`` otherwise.
* ``K`` by Temme's series at a reduced order ``|nu0| <= 1/2`` for
  ``x <= 2`` and by Steed's continued fraction (CF2) beyond, followed by
  the stable upward recurrence ``K_{m+1} = (2m/x) K_m + K_{m-1}`` with
  explicit exponent tracking.

The regions overlap (the I series remains valid past its threshold and
Temme's series past x = 2), which the test-suite uses for cross-checks.

This module intentionally mirrors ``_bessel_core.pyx`` statement for
statement; keep the two in sync.
"""

import math

_MAXIT = 40000
_SER_EPS = 1e-18
_CF_EPS = 4e-17
_BIG = 1e270
_LOG_BIG = math.log(_BIG)

# Taylor coefficients of 1/Gamma(1+t) around t = 0.
_G1 = 0.57721566490153286061
_G2 = -0.65587807152025388108
_G3 = -0.042002635034095235529
_G4 = 0.1665386113822914895
_G5 = -0.042197734555544336748
_G6 = -0.0096219715278769735621


def _chepolis_gam(nu0):
    """(gam1, gam2, 1/Gamma(1+nu0), 1/Gamma(1-nu0)) for |nu0| <= 1/2.

    gam1 = (1/Gamma(1-nu0) - 1/Gamma(1+nu0)) / (2 nu0), continued through
    nu0 = 0, where it equals -euler_gamma; gam2 is the even counterpart.
    """
    gampl = 1.0 / math.gamma(1.0 + nu0)
    gammi = 1.0 / math.gamma(1.0 - nu0)
    if abs(nu0) >= 1e-4:
        gam1 = (gammi - gampl) / (2.0 * nu0)
    else:
        nu2 = nu0 * nu0
        gam1 = -(_G1 + _G3 * nu2 + _G5 * nu2 * nu2)
    gam2 = 0.5 * (gammi + gampl)
    return gam1, gam2, gampl, gammi


def _temme_k(nu0, x):
    """(K_nu0(x), K_{nu0+1}(x)) by Temme's series; |nu0| <= 1/2, x <= 2."""
    x2 = 0.5 * x
    pimu = math.pi * nu0
    fact = pimu / math.sin(pimu) if abs(pimu) > 1e-15 else 1.0
    d = -math.log(x2)
    e = nu0 * d
    if abs(e) > 1e-4:
        fact2 = math.sinh(e) / e
    else:
        e2 = e * e
        fact2 = 1.0 + e2 / 6.0 + e2 * e2 / 120.0
    gam1, gam2, gampl, gammi = _chepolis_gam(nu0)
    ff = fact * (gam1 * math.cosh(e) + gam2 * fact2 * d)
    ksum = ff
    ee = math.exp(e)
    p = 0.5 * ee / gampl
    q = 0.5 / (ee * gammi)
    c = 1.0
    d2 = x2 * x2
    ksum1 = p
    i = 1
    while i <= _MAXIT:
        ff = (i * ff + p + q) / (i * i - nu0 * nu0)
        c *= d2 / i
        p /= (i - nu0)
        q /= (i + nu0)
        dl = c * ff
        ksum += dl
        dl1 = c * (p - i * ff)
        ksum1 += dl1
        if abs(dl) < abs(ksum) * _SER_EPS:
            break
        i += 1
    return ksum, ksum1 * (2.0 / x)


def _cf2_k_scaled(nu0, x):
    """(e^x K_nu0(x), e^x K_{nu0+1}(x)) by Steed's CF2; |nu0| <= 1/2, x > 2."""
    b = 2.0 * (1.0 + x)
    d = 1.0 / b
    h = d
    delh = d
    q1 = 0.0
    q2 = 1.0
    a1 = 0.25 - nu0 * nu0
    q = a1
    c = a1
    a = -a1
    s = 1.0 + q * delh
    i = 2
    while i <= _MAXIT:
        a -= 2.0 * (i - 1)
        c = -a * c / i
        qnew = (q1 - b * q2) / a
        q1 = q2
        q2 = qnew
        q += c * qnew
        b += 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h += delh
        dels = q * delh
        s += dels
        if abs(dels / s) < _CF_EPS:
            break
        i += 1
    h = a1 * h
    k0 = math.sqrt(math.pi / (2.0 * x)) / s
    k1 = k0 * (nu0 + x + 0.5 - h) / x
    return k0, k1


def _k_log(nu, x):
    """(log K_nu(x), log(-K'_nu(x))) via order reduction + upward recurrence."""
    nl = int(nu + 0.5)
    nu0 = nu - nl
    if x <= 2.0:
        k0, k1 = _temme_k(nu0, x)
        lscale = 0.0
    else:
        k0, k1 = _cf2_k_scaled(nu0, x)
        lscale = -x
    for j in range(1, nl + 1):
        knew = (2.0 * (nu0 + j) / x) * k1 + k0
        k0 = k1
        k1 = knew
        if k1 > _BIG:
            k0 /= _BIG
            k1 /= _BIG
            lscale += _LOG_BIG
    # now k0 = K_nu, k1 = K_{nu+1} (times exp(-lscale))
    lk = math.log(k0) + lscale
    # -K'_nu = K_{nu+1} - (nu/x) K_nu; the subtraction loses at most one bit
    lkp = math.log(k1 - (nu / x) * k0) + lscale
    return lk, lkp


def _i_series_log_single(nu, x):
    """log I_nu(x) by the ascending series (positive terms only)."""
    lpre = nu * math.log(0.5 * x) - math.lgamma(nu + 1.0)
    q = 0.25 * x * x
    term = 1.0
    s = 1.0
    k = 1
    while k <= _MAXIT:
        term *= q / (k * (nu + k))
        s += term
        if term < s * _SER_EPS:
            break
        k += 1
    return lpre + math.log(s)


def _cf1(nu, x):
    """f = I'_nu(x)/I_nu(x) by the standard continued fraction."""
    h = nu / x
    if h < 1e-300:
        h = 1e-300
    b = 2.0 * nu / x
    d = 0.0
    c = h
    i = 1
    while i <= _MAXIT:
        b += 2.0 / x
        d = 1.0 / (b + d)
        c = b + 1.0 / c
        dl = c * d
        h *= dl
        if abs(dl - 1.0) < _CF_EPS:
            break
        i += 1
    return h


def _logaddexp(a, b):
    if a < b:
        a, b = b, a
    return a + math.log1p(math.exp(b - a))


def ik_log(nu, x):
    """(log I, log I', log K, log(-K')) at (nu, x); nu >= 0, x > 0."""
    lk, lkp = _k_log(nu, x)
    if x <= 10.0 or x <= 0.5 * nu:
        li = _i_series_log_single(nu, x)
        li1 = _i_series_log_single(nu + 1.0, x)
        # I'_nu = I_{nu+1} + (nu/x) I_nu
        if nu == 0.0:
            lip = li1
        else:
            lip = _logaddexp(li1, math.log(nu / x) + li)
    else:
        f = _cf1(nu, x)
        lf = math.log(f)
        # Wronskian I_nu (f K_nu - K'_nu) = 1/x
        li = -math.log(x) - _logaddexp(lf + lk, lkp)
        lip = lf + li
    return li, lip, lk, lkp


def k_log(nu, x):
    """(log K_nu(x), log(-K'_nu(x))) alone; cheaper than the full quad."""
    return _k_log(nu, x)


def i_series_log(nu, x):
    """Series evaluation of (log I_nu, log I'_nu), exposed for cross-tests."""
    li = _i_series_log_single(nu, x)
    li1 = _i_series_log_single(nu + 1.0, x)
    if nu == 0.0:
        return li, li1
    return li, _logaddexp(li1, math.log(nu / x) + li)


def i_wronskian_log(nu, x):
    """CF1 + Wronskian evaluation of (log I_nu, log I'_nu), for cross-tests."""
    lk, lkp = _k_log(nu, x)
    f = _cf1(nu, x)
    lf = math.log(f)
    li = -math.log(x) - _logaddexp(lf + lk, lkp)
    return li, lf + li
