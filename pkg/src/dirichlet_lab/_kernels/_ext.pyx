# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: linear sieve and coefficient recursions.

Summation orders match the pure NumPy fallback (ascending divisor order);
integer outputs are identical across implementations, float outputs agree
to a few ulps.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport log


def sieve_spf_omega(Py_ssize_t limit):
    """Linear sieve: smallest prime factor and Omega(n) for n <= limit.

    Returns (spf, omega) as arrays of length limit+1; index 0 and 1 hold 0.
    Each composite is struck exactly once by its smallest prime factor.
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")
    spf_arr = np.zeros(limit + 1, dtype=np.uint32)
    omega_arr = np.zeros(limit + 1, dtype=np.uint8)
    cdef cnp.uint32_t[::1] spf = spf_arr
    cdef cnp.uint8_t[::1] omega = omega_arr
    cdef Py_ssize_t cap
    if limit >= 17:
        cap = <Py_ssize_t>(1.3 * limit / log(limit)) + 16
    else:
        cap = 16
    primes_arr = np.empty(cap, dtype=np.uint32)
    cdef cnp.uint32_t[::1] primes = primes_arr
    cdef Py_ssize_t i, j, n_primes = 0
    cdef Py_ssize_t p
    for i in range(2, limit + 1):
        if spf[i] == 0:
            spf[i] = <cnp.uint32_t>i
            omega[i] = 1
            primes[n_primes] = <cnp.uint32_t>i
            n_primes += 1
        for j in range(n_primes):
            p = primes[j]
            if p > spf[i] or i > limit // p:
                break
            spf[i * p] = <cnp.uint32_t>p
            omega[i * p] = omega[i] + 1
    return spf_arr, omega_arr


def dirichlet_convolve(const double complex[::1] f, const double complex[::1] g, Py_ssize_t n_out):
    """(f*g)_n = sum_{d|n} f_d g_{n/d} for n <= n_out; index 0 unused."""
    out_arr = np.zeros(n_out + 1, dtype=np.complex128)
    cdef double complex[::1] out = out_arr
    cdef Py_ssize_t d, q
    cdef double complex fd
    for d in range(1, n_out + 1):
        fd = f[d]
        if fd == 0:
            continue
        for q in range(1, n_out // d + 1):
            out[d * q] = out[d * q] + fd * g[q]
    return out_arr


cdef _divisor_csr(Py_ssize_t n_max):
    # CSR layout of the divisors 2 <= d <= m of every m <= n_max, ascending.
    cdef cnp.int64_t[::1] counts = np.zeros(n_max + 2, dtype=np.int64)
    cdef Py_ssize_t d, m
    for d in range(2, n_max + 1):
        for m in range(d, n_max + 1, d):
            counts[m + 1] += 1
    offsets_arr = np.cumsum(counts, dtype=np.int64)
    cdef cnp.int64_t[::1] offsets = offsets_arr
    cdef cnp.int64_t total = offsets[n_max + 1]
    divs_arr = np.empty(total, dtype=np.uint32)
    quots_arr = np.empty(total, dtype=np.uint32)
    cdef cnp.uint32_t[::1] divs = divs_arr
    cdef cnp.uint32_t[::1] quots = quots_arr
    fill_arr = offsets_arr.copy()
    cdef cnp.int64_t[::1] fill = fill_arr
    for d in range(2, n_max + 1):
        for m in range(d, n_max + 1, d):
            divs[fill[m]] = <cnp.uint32_t>d
            quots[fill[m]] = <cnp.uint32_t>(m // d)
            fill[m] += 1
    return offsets_arr, divs_arr, quots_arr


def exp_series(const double complex[::1] a):
    """Exponential of a truncated Dirichlet series, coefficient recursion.

    g_1 = exp(a_1); for n >= 2: g_n = (1/log n) sum_{d|n, d>1} a_d log(d) g_{n/d}.
    """
    cdef Py_ssize_t n_max = a.shape[0] - 1
    out_arr = np.zeros(n_max + 1, dtype=np.complex128)
    cdef double complex[::1] g = out_arr
    out_arr[1] = np.exp(complex(a[1]))
    if n_max == 1:
        return out_arr
    offsets_arr, divs_arr, quots_arr = _divisor_csr(n_max)
    cdef cnp.int64_t[::1] offsets = offsets_arr
    cdef cnp.uint32_t[::1] divs = divs_arr
    cdef cnp.uint32_t[::1] quots = quots_arr
    logs_arr = np.log(np.arange(n_max + 1, dtype=np.float64), where=np.arange(n_max + 1) > 0,
                      out=np.zeros(n_max + 1))
    cdef double[::1] logs = logs_arr
    cdef Py_ssize_t n, k
    cdef double complex s
    for n in range(2, n_max + 1):
        s = 0
        for k in range(offsets[n], offsets[n + 1]):
            s = s + a[divs[k]] * logs[divs[k]] * g[quots[k]]
        g[n] = s / logs[n]
    return out_arr


def log_series(const double complex[::1] f):
    """Inverse of exp_series; requires f_1 != 0 (checked by the caller)."""
    cdef Py_ssize_t n_max = f.shape[0] - 1
    out_arr = np.zeros(n_max + 1, dtype=np.complex128)
    cdef double complex[::1] la = out_arr
    out_arr[1] = np.log(complex(f[1]))
    if n_max == 1:
        return out_arr
    offsets_arr, divs_arr, quots_arr = _divisor_csr(n_max)
    cdef cnp.int64_t[::1] offsets = offsets_arr
    cdef cnp.uint32_t[::1] divs = divs_arr
    cdef cnp.uint32_t[::1] quots = quots_arr
    logs_arr = np.log(np.arange(n_max + 1, dtype=np.float64), where=np.arange(n_max + 1) > 0,
                      out=np.zeros(n_max + 1))
    cdef double[::1] logs = logs_arr
    cdef double complex f1 = f[1]
    cdef Py_ssize_t n, k, d
    cdef double complex s
    for n in range(2, n_max + 1):
        s = 0
        for k in range(offsets[n], offsets[n + 1]):
            d = divs[k]
            if d == n:
                continue
            s = s + la[d] * logs[d] * f[quots[k]]
        la[n] = (f[n] * logs[n] - s) / (logs[n] * f1)
    return out_arr


def completely_multiplicative(const cnp.uint32_t[::1] spf, const double complex[::1] prime_values):
    """Fill v[n] = prod over prime factors (with multiplicity) of prime_values[p]."""
    cdef Py_ssize_t n_max = spf.shape[0] - 1
    out_arr = np.zeros(n_max + 1, dtype=np.complex128)
    cdef double complex[::1] v = out_arr
    if n_max < 1:
        return out_arr
    v[1] = 1
    cdef Py_ssize_t n, p
    for n in range(2, n_max + 1):
        p = spf[n]
        v[n] = v[n // p] * prime_values[p]
    return out_arr
