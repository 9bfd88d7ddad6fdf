"""Pure NumPy fallbacks for the compiled kernels.

Each function mirrors its Cython twin in `_ext` with the same summation
order (ascending divisor order); integer outputs are identical, float
outputs agree to a few ulps.
"""

import numpy as np


def sieve_spf_omega(limit):
    """Smallest prime factor and Omega(n) for n <= limit, vectorized.

    SPF via an Eratosthenes-style masked fill; Omega via repeated gathers of
    omega[n // spf[n]] + 1, which resolves one factorization level per pass
    (at most log2(limit) passes).
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")
    spf = np.zeros(limit + 1, dtype=np.uint32)
    omega = np.zeros(limit + 1, dtype=np.uint8)
    if limit < 2:
        return spf, omega
    for i in range(2, int(limit**0.5) + 1):
        if spf[i] == 0:
            sl = spf[i * i :: i]
            sl[sl == 0] = i
    n = np.arange(limit + 1, dtype=np.uint32)
    unset = spf[2:] == 0
    spf[2:][unset] = n[2:][unset]
    quot = (n[2:] // spf[2:]).astype(np.int64)
    passes = int(np.log2(limit)) + 1
    for _ in range(passes):
        omega[2:] = omega[quot] + 1
    return spf, omega


def dirichlet_convolve(f, g, n_out):
    """(f*g)_n = sum_{d|n} f_d g_{n/d} for n <= n_out; index 0 unused."""
    out = np.zeros(n_out + 1, dtype=np.complex128)
    for d in range(1, n_out + 1):
        fd = f[d]
        if fd == 0:
            continue
        cnt = n_out // d
        out[d::d] += fd * g[1 : cnt + 1]
    return out


def _divisor_lists(n_max):
    # divisors 2 <= d <= m of every m <= n_max, ascending per m
    divs = [[] for _ in range(n_max + 1)]
    for d in range(2, n_max + 1):
        for m in range(d, n_max + 1, d):
            divs[m].append(d)
    return divs


def exp_series(a):
    """Exponential of a truncated Dirichlet series, coefficient recursion."""
    n_max = len(a) - 1
    g = np.zeros(n_max + 1, dtype=np.complex128)
    g[1] = np.exp(a[1])
    if n_max == 1:
        return g
    logs = np.concatenate(([0.0, 0.0], np.log(np.arange(2, n_max + 1))))
    divs = _divisor_lists(n_max)
    for n in range(2, n_max + 1):
        s = 0j
        for d in divs[n]:
            s = s + a[d] * logs[d] * g[n // d]
        g[n] = s / logs[n]
    return g


def log_series(f):
    """Inverse of exp_series; requires f_1 != 0 (checked by the caller)."""
    n_max = len(f) - 1
    la = np.zeros(n_max + 1, dtype=np.complex128)
    la[1] = np.log(complex(f[1]))
    if n_max == 1:
        return la
    logs = np.concatenate(([0.0, 0.0], np.log(np.arange(2, n_max + 1))))
    divs = _divisor_lists(n_max)
    f1 = f[1]
    for n in range(2, n_max + 1):
        s = 0j
        for d in divs[n]:
            if d == n:
                continue
            s = s + la[d] * logs[d] * f[n // d]
        la[n] = (f[n] * logs[n] - s) / (logs[n] * f1)
    return la


def completely_multiplicative(spf, prime_values):
    """Fill v[n] = prod over prime factors (with multiplicity) of prime_values[p]."""
    n_max = len(spf) - 1
    v = np.zeros(n_max + 1, dtype=np.complex128)
    if n_max < 1:
        return v
    v[1] = 1
    if n_max < 2:
        return v
    n = np.arange(2, n_max + 1, dtype=np.int64)
    spf_n = spf[2:].astype(np.int64)
    quot = n // spf_n
    pv = np.asarray(prime_values)[spf_n]
    passes = int(np.log2(n_max)) + 1
    for _ in range(passes):
        v[2:] = v[quot] * pv
    return v
