"""Independent reference computations used by the tests.

Everything here is deliberately built along routes the library does not
take: ascending power series summed term by term, elementary closed
forms at half-integer order, brute-force lattice sums, and
transposition-counting for graded signs.
"""

import math

import numpy as np


def i_power_series(nu, x, terms=60):
    """I_nu(x) = sum_k (x/2)^{nu+2k} / (k! Gamma(nu+k+1)), summed directly."""
    acc = 0.0
    lx = math.log(0.5 * x)
    for k in range(terms):
        acc += math.exp((nu + 2 * k) * lx
                        - math.lgamma(k + 1) - math.lgamma(nu + k + 1))
    return acc


def half_integer_quad(half_odd, x):
    """(I, K, I', K') at order half_odd/2 for half_odd in {1, 3}.

    K_{1/2}(x) = sqrt(pi/(2x)) e^{-x}
    K_{3/2}(x) = sqrt(pi/(2x)) e^{-x} (1 + 1/x)
    I_{1/2}(x) = sqrt(2/(pi x)) sinh x
    I_{3/2}(x) = sqrt(2/(pi x)) (cosh x - sinh x / x)
    derivatives via I'_nu = I_{nu-1} - (nu/x) I_nu, K'_nu = -K_{nu-1} - (nu/x) K_nu.
    """
    spx = math.sqrt(math.pi / (2.0 * x))
    s2x = math.sqrt(2.0 / (math.pi * x))
    k12 = spx * math.exp(-x)
    k32 = spx * math.exp(-x) * (1.0 + 1.0 / x)
    i12 = s2x * math.sinh(x)
    i32 = s2x * (math.cosh(x) - math.sinh(x) / x)
    im12 = s2x * math.cosh(x)
    km12 = k12
    if half_odd == 1:
        i, k = i12, k12
        ip = im12 - 0.5 / x * i12
        kp = -km12 - 0.5 / x * k12
    elif half_odd == 3:
        i, k = i32, k32
        ip = i12 - 1.5 / x * i32
        kp = -k12 - 1.5 / x * k32
    else:
        raise ValueError("only orders 1/2 and 3/2 are provided")
    return i, k, ip, kp


def lattice_zeta_bruteforce(s, scale, j_max=3000):
    """sum over (j,k) != (0,0) of (scale*(j^2+k^2))^{-s}, truncated at
    |j|, |k| <= j_max (adequate down to ~1e-7 relative at s = 2)."""
    acc = 0.0
    js = np.arange(-j_max, j_max + 1, dtype=float)
    for block in np.array_split(js, 40):
        jj, kk = np.meshgrid(block, js, indexing="ij")
        m = jj * jj + kk * kk
        m[m == 0.0] = np.inf
        acc += float(np.sum(m ** (-s)))
    return scale ** (-s) * acc


def graded_sign_bruteforce(n, a1, h1, a2, h2):
    """Sign of the product of two canonical monomials by bubble-sorting
    the concatenated generator word; None when the product vanishes."""
    if a1 & a2 or h1 & h2:
        return None
    seq = [i for i in range(n) if a1 >> i & 1]
    seq += [n + i for i in range(n) if h1 >> i & 1]
    seq += [i for i in range(n) if a2 >> i & 1]
    seq += [n + i for i in range(n) if h2 >> i & 1]
    swaps = 0
    arr = list(seq)
    for i in range(len(arr)):
        for j in range(len(arr) - 1 - i):
            if arr[j] > arr[j + 1]:
                arr[j], arr[j + 1] = arr[j + 1], arr[j]
                swaps += 1
    return -1.0 if swaps % 2 else 1.0


def central_difference(f, x, h):
    return (f(x + h) - f(x - h)) / (2.0 * h)
