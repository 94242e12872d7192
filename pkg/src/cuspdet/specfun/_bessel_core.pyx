# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
r"""Log-scaled modified Bessel kernel, compiled backend.

Statement-for-statement twin of ``_bessel_pure``; see that module for the
algorithm notes.  Exposes ``ik_log`` plus the two cross-test entry points.
"""

from libc.math cimport (M_PI, cosh, exp, fabs, lgamma, log, log1p, sin,
                        sinh, sqrt, tgamma)

cdef int _MAXIT = 40000
cdef double _SER_EPS = 1e-18
cdef double _CF_EPS = 4e-17
cdef double _BIG = 1e270
cdef double _LOG_BIG = log(1e270)

cdef double _G1 = 0.57721566490153286061
cdef double _G3 = -0.042002635034095235529
cdef double _G5 = -0.042197734555544336748


cdef inline double _logaddexp(double a, double b) nogil:
    cdef double t
    if a < b:
        t = a; a = b; b = t
    return a + log1p(exp(b - a))


cdef void _temme_k(double nu0, double x, double* kout, double* k1out) nogil:
    cdef double x2 = 0.5 * x
    cdef double pimu = M_PI * nu0
    cdef double fact = pimu / sin(pimu) if fabs(pimu) > 1e-15 else 1.0
    cdef double d = -log(x2)
    cdef double e = nu0 * d
    cdef double fact2, e2, gam1, gam2, gampl, gammi, nu2
    if fabs(e) > 1e-4:
        fact2 = sinh(e) / e
    else:
        e2 = e * e
        fact2 = 1.0 + e2 / 6.0 + e2 * e2 / 120.0
    gampl = 1.0 / tgamma(1.0 + nu0)
    gammi = 1.0 / tgamma(1.0 - nu0)
    if fabs(nu0) >= 1e-4:
        gam1 = (gammi - gampl) / (2.0 * nu0)
    else:
        nu2 = nu0 * nu0
        gam1 = -(_G1 + _G3 * nu2 + _G5 * nu2 * nu2)
    gam2 = 0.5 * (gammi + gampl)
    cdef double ff = fact * (gam1 * cosh(e) + gam2 * fact2 * d)
    cdef double ksum = ff
    cdef double ee = exp(e)
    cdef double p = 0.5 * ee / gampl
    cdef double q = 0.5 / (ee * gammi)
    cdef double c = 1.0
    cdef double d2 = x2 * x2
    cdef double ksum1 = p
    cdef double dl, dl1
    cdef int i = 1
    while i <= _MAXIT:
        ff = (i * ff + p + q) / (i * i - nu0 * nu0)
        c *= d2 / i
        p /= (i - nu0)
        q /= (i + nu0)
        dl = c * ff
        ksum += dl
        dl1 = c * (p - i * ff)
        ksum1 += dl1
        if fabs(dl) < fabs(ksum) * _SER_EPS:
            break
        i += 1
    kout[0] = ksum
    k1out[0] = ksum1 * (2.0 / x)


cdef void _cf2_k_scaled(double nu0, double x, double* kout, double* k1out) nogil:
    cdef double b = 2.0 * (1.0 + x)
    cdef double d = 1.0 / b
    cdef double h = d
    cdef double delh = d
    cdef double q1 = 0.0
    cdef double q2 = 1.0
    cdef double a1 = 0.25 - nu0 * nu0
    cdef double q = a1
    cdef double c = a1
    cdef double a = -a1
    cdef double s = 1.0 + q * delh
    cdef double qnew, dels, k0
    cdef int i = 2
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
        if fabs(dels / s) < _CF_EPS:
            break
        i += 1
    h = a1 * h
    k0 = sqrt(M_PI / (2.0 * x)) / s
    kout[0] = k0
    k1out[0] = k0 * (nu0 + x + 0.5 - h) / x


cdef void _k_log(double nu, double x, double* lk, double* lkp) nogil:
    cdef int nl = <int>(nu + 0.5)
    cdef double nu0 = nu - nl
    cdef double k0, k1, knew, lscale
    if x <= 2.0:
        _temme_k(nu0, x, &k0, &k1)
        lscale = 0.0
    else:
        _cf2_k_scaled(nu0, x, &k0, &k1)
        lscale = -x
    cdef int j
    for j in range(1, nl + 1):
        knew = (2.0 * (nu0 + j) / x) * k1 + k0
        k0 = k1
        k1 = knew
        if k1 > _BIG:
            k0 /= _BIG
            k1 /= _BIG
            lscale += _LOG_BIG
    lk[0] = log(k0) + lscale
    lkp[0] = log(k1 - (nu / x) * k0) + lscale


cdef double _i_series_log_single(double nu, double x) nogil:
    cdef double lpre = nu * log(0.5 * x) - lgamma(nu + 1.0)
    cdef double q = 0.25 * x * x
    cdef double term = 1.0
    cdef double s = 1.0
    cdef int k = 1
    while k <= _MAXIT:
        term *= q / (k * (nu + k))
        s += term
        if term < s * _SER_EPS:
            break
        k += 1
    return lpre + log(s)


cdef double _cf1(double nu, double x) nogil:
    cdef double h = nu / x
    if h < 1e-300:
        h = 1e-300
    cdef double b = 2.0 * nu / x
    cdef double d = 0.0
    cdef double c = h
    cdef double dl
    cdef int i = 1
    while i <= _MAXIT:
        b += 2.0 / x
        d = 1.0 / (b + d)
        c = b + 1.0 / c
        dl = c * d
        h *= dl
        if fabs(dl - 1.0) < _CF_EPS:
            break
        i += 1
    return h


cdef void _ik_log_c(double nu, double x, double* out) nogil:
    cdef double lk, lkp, li, lip, li1, f, lf
    _k_log(nu, x, &lk, &lkp)
    if x <= 10.0 or x <= 0.5 * nu:
        li = _i_series_log_single(nu, x)
        li1 = _i_series_log_single(nu + 1.0, x)
        if nu == 0.0:
            lip = li1
        else:
            lip = _logaddexp(li1, log(nu / x) + li)
    else:
        f = _cf1(nu, x)
        lf = log(f)
        li = -log(x) - _logaddexp(lf + lk, lkp)
        lip = lf + li
    out[0] = li
    out[1] = lip
    out[2] = lk
    out[3] = lkp


def ik_log(double nu, double x):
    """(log I, log I', log K, log(-K')) at (nu, x); nu >= 0, x > 0."""
    cdef double out[4]
    _ik_log_c(nu, x, out)
    return out[0], out[1], out[2], out[3]


def k_log(double nu, double x):
    """(log K_nu(x), log(-K'_nu(x))) alone; cheaper than the full quad."""
    cdef double lk, lkp
    _k_log(nu, x, &lk, &lkp)
    return lk, lkp


def i_series_log(double nu, double x):
    """Series evaluation of (log I_nu, log I'_nu), exposed for cross-tests."""
    cdef double li = _i_series_log_single(nu, x)
    cdef double li1 = _i_series_log_single(nu + 1.0, x)
    if nu == 0.0:
        return li, li1
    return li, _logaddexp(li1, log(nu / x) + li)


def i_wronskian_log(double nu, double x):
    """CF1 + Wronskian evaluation of (log I_nu, log I'_nu), for cross-tests."""
    cdef double lk, lkp, f, lf, li
    _k_log(nu, x, &lk, &lkp)
    f = _cf1(nu, x)
    lf = log(f)
    li = -log(x) - _logaddexp(lf + lk, lkp)
    return li, lf + li
