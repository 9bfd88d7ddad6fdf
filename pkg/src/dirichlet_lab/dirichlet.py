"""Truncated Dirichlet-series algebra.

Coefficient vectors are 1-indexed (slot 0 is kept zero).  All operations
are exact truncations: coefficient n of a result depends only on input
coefficients with index <= n, except composition, whose constant term
mixes the whole outer series (see compose_zero_slope).
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .arith import FactorTable, primes_upto, small_spf

KAPPA_INV_MAX = 2**63 - 1

#: Unimodularity tolerance for character phases.
PHASE_TOL = 1e-12


class TruncationError(ValueError):
    """Requested output length not supported by the inputs."""


class SingularInputError(ValueError):
    """Operation undefined for a vanishing leading coefficient."""


class GhMembershipWarning(UserWarning):
    """Composition symbol may fall outside the admissible class."""


class DirichletPoly:
    """Truncated Dirichlet series sum_{n<=N} a_n n^{-s}."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: np.ndarray):
        coeffs = np.ascontiguousarray(coeffs, dtype=np.complex128)
        if coeffs.ndim != 1 or len(coeffs) < 2:
            raise ValueError("need a 1-d coefficient array with length >= 2 (slot 0 unused)")
        if not np.all(np.isfinite(coeffs.view(np.float64))):
            raise ValueError("coefficients must be finite")
        coeffs = coeffs.copy()
        coeffs[0] = 0
        coeffs.flags.writeable = False
        self.coeffs = coeffs

    @classmethod
    def from_coeffs(cls, values) -> "DirichletPoly":
        """Build from a_1, a_2, ... (1-indexed input sequence)."""
        arr = np.zeros(len(values) + 1, dtype=np.complex128)
        arr[1:] = values
        return cls(arr)

    @property
    def length(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, n: int) -> complex:
        if not 1 <= n <= self.length:
            raise IndexError(f"coefficient index {n} outside 1..{self.length}")
        return complex(self.coeffs[n])

    def padded(self, n: int) -> np.ndarray:
        """Coefficient array zero-extended (or cut) to slots 0..n."""
        out = np.zeros(n + 1, dtype=np.complex128)
        m = min(n, self.length)
        out[: m + 1] = self.coeffs[: m + 1]
        return out

    def __eq__(self, other):
        return isinstance(other, DirichletPoly) and np.array_equal(self.coeffs, other.coeffs)

    def __repr__(self):
        return f"DirichletPoly(N={self.length})"


def delta() -> DirichletPoly:
    """The identity element 1 = 1^{-s}."""
    return DirichletPoly.from_coeffs([1.0])


def zeta_poly(n: int) -> DirichletPoly:
    """Truncation of the zeta series: a_k = 1 for k <= n."""
    return DirichletPoly.from_coeffs(np.ones(n))


def single_term(n: int, value: complex = 1.0, length: int | None = None) -> DirichletPoly:
    """value * n^{-s}, optionally embedded in a longer zero vector."""
    length = n if length is None else length
    if length < n:
        raise ValueError("length must be >= n")
    arr = np.zeros(length + 1, dtype=np.complex128)
    arr[n] = value
    return DirichletPoly(arr)


def convolve(f: DirichletPoly, g: DirichletPoly, n_out: int) -> DirichletPoly:
    """Dirichlet product (f*g)_n = sum_{d|n} f_d g_{n/d}, n <= n_out.

    Exact truncation requires every needed input coefficient, so n_out may
    not exceed either input length.
    """
    if n_out < 1:
        raise TruncationError("n_out must be >= 1")
    if n_out > min(f.length, g.length):
        raise TruncationError(
            f"n_out={n_out} exceeds input lengths ({f.length}, {g.length}); "
            "coefficients beyond a truncated input are unknown"
        )
    return DirichletPoly(_kernels.dirichlet_convolve(f.coeffs, g.coeffs, n_out))


def exp_series(f: DirichletPoly) -> DirichletPoly:
    """Coefficient exponential: g_1 = e^{a_1},
    g_n = (1/log n) sum_{d|n, d>1} a_d log(d) g_{n/d}."""
    return DirichletPoly(_kernels.exp_series(f.coeffs))


def log_series(f: DirichletPoly) -> DirichletPoly:
    """Coefficient logarithm, inverse of exp_series; needs a_1 != 0."""
    if f.coeffs[1] == 0:
        raise SingularInputError("log_series requires a_1 != 0")
    return DirichletPoly(_kernels.log_series(f.coeffs))


def evaluate(f: DirichletPoly, s: complex) -> complex:
    """sum_{n<=N} a_n n^{-s} with compensated (fsum) summation."""
    n = np.arange(1, f.length + 1, dtype=np.float64)
    terms = f.coeffs[1:] * np.exp(-s * np.log(n))
    return complex(math.fsum(terms.real), math.fsum(terms.imag))


def evaluate_array(f: DirichletPoly, s: np.ndarray) -> np.ndarray:
    """Elementwise evaluation on an array of points (plain pairwise sums)."""
    s = np.asarray(s, dtype=np.complex128)
    out = np.full(s.shape, complex(f.coeffs[1]), dtype=np.complex128)
    for n in range(2, f.length + 1):
        a = f.coeffs[n]
        if a != 0:
            out += a * np.exp(-math.log(n) * s)
    return out


# -- Bohr lift ---------------------------------------------------------------

_PRIME_CACHE = primes_upto(1 << 10)


def _primes_at_least(count: int, up_to: int | None = None) -> np.ndarray:
    global _PRIME_CACHE
    bound = int(_PRIME_CACHE[-1])
    while len(_PRIME_CACHE) < count or (up_to is not None and bound < up_to):
        bound *= 2
        if up_to is not None:
            bound = max(bound, up_to)
        _PRIME_CACHE = primes_upto(bound)
    return _PRIME_CACHE


def kappa(n: int) -> tuple[int, ...]:
    """Multi-index of prime exponents (k_1, ..., k_r), trailing zeros trimmed.

    kappa(12) = (2, 1) since 12 = 2^2 * 3.
    """
    if n < 1:
        raise ValueError(f"kappa needs n >= 1, got {n}")
    if n == 1:
        return ()
    exps = []
    m = n
    i = 0
    while m > 1:
        primes = _primes_at_least(i + 1)
        p = int(primes[i])
        if p * p > m:
            break
        k = 0
        while m % p == 0:
            m //= p
            k += 1
        exps.append(k)
        i += 1
    if m > 1:
        # m is prime; locate its index to place the final exponent
        primes = _primes_at_least(1, up_to=m)
        idx = int(np.searchsorted(primes, m))
        exps.extend([0] * (idx - len(exps)))
        exps.append(1)
    while exps and exps[-1] == 0:
        exps.pop()
    return tuple(exps)


def kappa_inv(index: tuple[int, ...]) -> int:
    """Integer with the given prime-exponent multi-index; inverse of kappa."""
    if any(k < 0 for k in index):
        raise ValueError("exponents must be nonnegative")
    primes = _primes_at_least(len(index)) if index else ()
    n = 1
    for p, k in zip(primes, index):
        for _ in range(k):
            n *= int(p)
            if n > KAPPA_INV_MAX:
                raise OverflowError("kappa_inv result exceeds the 63-bit range")
    return n


@dataclass
class Character:
    """Point of the polytorus: unimodular phases for the first m primes,
    implicit phase 1 beyond.  Induces the completely multiplicative chi(n)."""

    phases: np.ndarray

    def __post_init__(self):
        phases = np.ascontiguousarray(self.phases, dtype=np.complex128)
        if np.any(np.abs(np.abs(phases) - 1.0) > PHASE_TOL):
            raise ValueError("character phases must be unimodular within 1e-12")
        phases.flags.writeable = False
        object.__setattr__(self, "phases", phases)

    def value(self, n: int) -> complex:
        out = 1 + 0j
        for i, k in enumerate(kappa(n)):
            if k and i < len(self.phases):
                out *= self.phases[i] ** k
        return out

    def values_upto(self, n_max: int) -> np.ndarray:
        """chi(1..n_max) as an array (slot 0 zero)."""
        spf = small_spf(n_max)
        prime_values = np.ones(n_max + 1, dtype=np.complex128)
        primes = primes_upto(n_max)
        m = min(len(self.phases), len(primes))
        prime_values[primes[:m]] = self.phases[:m]
        return _kernels.completely_multiplicative(spf, prime_values)


def twist(f: DirichletPoly, chi: Character) -> DirichletPoly:
    """Vertical-limit twist: a_n -> a_n chi(n)."""
    values = chi.values_upto(f.length)
    return DirichletPoly(f.coeffs * values)


def lambda_twist(
    f: DirichletPoly, lam: complex, table: FactorTable, threshold: int = 0
) -> DirichletPoly:
    """a_n -> a_n lambda^{Omega(n)}, with an optional Omega threshold.

    threshold = 0: plain twist on every n (0^0 := 1, so a_1 survives at
    lambda = 0).  threshold > 0: additionally zero out every n with
    Omega(n) <= threshold.
    """
    if f.length > table.limit:
        raise ValueError(f"series length {f.length} exceeds table limit {table.limit}")
    if threshold < 0:
        raise ValueError("threshold must be >= 0")
    om = table.omega[: f.length + 1].astype(np.int64)
    factors = np.power(complex(lam), om)
    out = f.coeffs * factors
    if threshold > 0:
        out[om <= threshold] = 0
    return DirichletPoly(out)


def compose_zero_slope(f: DirichletPoly, phi: DirichletPoly, n_out: int) -> DirichletPoly:
    """Coefficients of F(phi(s)) for a zero-slope symbol phi = c_1 + phi_0.

    Uses the rearrangement F(phi) = sum_m (phi_0^m / m!) * sum_k a_k k^{-c_1}
    (-log k)^m; only m <= log2(n_out) contribute because phi_0 is supported
    on indices >= 2.  Exact at truncation n_out when F and phi are taken as
    the finite polynomials given (the fixture regime: coefficients beyond
    their lengths are genuinely zero, not unknown tails).

    Warns (does not fail) when Re c_1 <= 1/2; admissibility of the symbol
    is checked separately by the harness.
    """
    if n_out < 1:
        raise TruncationError("n_out must be >= 1")
    c1 = complex(phi.coeffs[1])
    if c1.real <= 0.5:
        warnings.warn(
            f"symbol has Re c_1 = {c1.real:.4g} <= 1/2; composition may leave "
            "the admissible class",
            GhMembershipWarning,
            stacklevel=2,
        )
    phi0 = phi.padded(n_out)
    phi0[1] = 0

    k = np.arange(1, f.length + 1, dtype=np.float64)
    log_k = np.log(k)
    base = f.coeffs[1:] * np.exp(-c1 * log_k)

    m_max = int(math.log2(n_out)) if n_out > 1 else 0
    out = np.zeros(n_out + 1, dtype=np.complex128)
    power = np.zeros(n_out + 1, dtype=np.complex128)
    power[1] = 1.0  # phi_0^0 = delta
    sign_logs = np.ones_like(log_k)
    factorial = 1.0
    for m in range(m_max + 1):
        if m > 0:
            power = _kernels.dirichlet_convolve(power, phi0, n_out)
            sign_logs = sign_logs * (-log_k)
            factorial *= m
        weight = complex(np.sum(base * sign_logs)) / factorial
        out += weight * power
    return DirichletPoly(out)


def prime_fixture(n_max: int) -> DirichletPoly:
    """The prime series with a_p = 1/(sqrt(p) log p), zero elsewhere."""
    if n_max < 2:
        raise ValueError("need n_max >= 2")
    arr = np.zeros(n_max + 1, dtype=np.complex128)
    p = primes_upto(n_max).astype(np.float64)
    arr[primes_upto(n_max)] = 1.0 / (np.sqrt(p) * np.log(p))
    return DirichletPoly(arr)


# -- serialization -----------------------------------------------------------


def poly_to_json(f: DirichletPoly) -> str:
    """JSON array of [re, im] pairs for a_1..a_N."""
    pairs = [[c.real, c.imag] for c in f.coeffs[1:]]
    return json.dumps(pairs)


def poly_from_json(text: str) -> DirichletPoly:
    pairs = json.loads(text)
    return DirichletPoly.from_coeffs([complex(re, im) for re, im in pairs])
