"""Arithmetic-function sieves: Omega(n), smallest prime factors, generalized
divisor values d_alpha(n), Omega-class histograms, and a binary disk cache.
"""

from __future__ import annotations

import functools
import hashlib
import math
import struct
from dataclasses import dataclass, field

import numpy as np

from . import _kernels

#: Hard ceiling for sieve size.  A table costs about 5 bytes per integer
#: (uint32 spf + uint8 omega), so 10^8 stays near 500 MB.
LIMIT_CEILING = 10**8

CACHE_MAGIC = b"DLAB"
CACHE_VERSION = 1


class CapacityError(ValueError):
    """Sieve limit outside the supported range."""


class CacheError(ValueError):
    """Base class for factor-table cache problems."""


class CacheMagicError(CacheError):
    """File does not start with the DLAB magic bytes."""


class CacheVersionError(CacheError):
    """Unsupported cache format version."""


class CacheTruncatedError(CacheError):
    """File shorter than its header promises."""


class CacheChecksumError(CacheError):
    """Payload checksum mismatch."""


@dataclass
class FactorTable:
    """Sieve output for 1..limit.

    ``omega[n]`` is Omega(n), the number of prime factors counted with
    multiplicity (omega[0] is an unused 0).  ``spf[n]`` is the smallest
    prime factor of n (0 at indices 0 and 1); it may be None for tables
    loaded from cache and is rebuilt on first use.  Arrays are read-only.
    """

    limit: int
    omega: np.ndarray
    spf: np.ndarray | None = field(default=None, repr=False)

    def require_spf(self) -> np.ndarray:
        if self.spf is None:
            spf, _ = _kernels.sieve_spf_omega(self.limit)
            spf.flags.writeable = False
            self.spf = spf
        return self.spf


@dataclass
class OmegaHistogram:
    """Counts N_k = #{n <= limit : Omega(n) = k} for k = 0..floor(log2 limit)."""

    limit: int
    counts: np.ndarray


def build_factor_table(limit: int, *, ceiling: int = LIMIT_CEILING) -> FactorTable:
    """Sieve smallest prime factors and Omega up to ``limit``.

    Output is deterministic; the table is immutable once built.
    Raises CapacityError for limit < 1 or limit > ceiling.
    """
    if limit < 1:
        raise CapacityError(f"sieve limit must be >= 1, got {limit}")
    if limit > ceiling:
        raise CapacityError(f"sieve limit {limit} exceeds the ceiling {ceiling}")
    spf, omega = _kernels.sieve_spf_omega(limit)
    spf.flags.writeable = False
    omega.flags.writeable = False
    return FactorTable(limit=limit, omega=omega, spf=spf)


@functools.lru_cache(maxsize=8)
def small_spf(limit: int) -> np.ndarray:
    """Memoized smallest-prime-factor array for light internal uses."""
    spf, _ = _kernels.sieve_spf_omega(limit)
    spf.flags.writeable = False
    return spf


def primes_upto(limit: int) -> np.ndarray:
    """Ascending primes <= limit as int64."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    isp = np.ones(limit + 1, dtype=bool)
    isp[:2] = False
    for i in range(2, int(limit**0.5) + 1):
        if isp[i]:
            isp[i * i :: i] = False
    return np.flatnonzero(isp).astype(np.int64)


def factorize(n: int, table: FactorTable) -> list[tuple[int, int]]:
    """Prime factorization [(p, multiplicity), ...] of n <= table.limit."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > table.limit:
        raise ValueError(f"n={n} exceeds table limit {table.limit}")
    spf = table.require_spf()
    out = []
    while n > 1:
        p = int(spf[n])
        k = 0
        while n % p == 0:
            n //= p
            k += 1
        out.append((p, k))
    return out


def d_alpha(n: int, alpha: float, table: FactorTable) -> float:
    """Generalized divisor function: the n-th coefficient of zeta(s)^alpha.

    Multiplicative; on a prime power p^k the value is the generalized
    binomial C(k + alpha - 1, k), computed as the running product
    prod_{i=1..k} (alpha - 1 + i)/i so integer alpha stays exact.
    """
    if n == 0:
        raise ValueError("d_alpha is undefined at n = 0")
    if alpha <= 0:
        raise ValueError(f"alpha must be > 0, got {alpha}")
    value = 1.0
    for _, k in factorize(n, table):
        c = 1.0
        for i in range(1, k + 1):
            c *= (alpha - 1 + i) / i
        value *= c
    return value


def count_omega_classes(table: FactorTable) -> OmegaHistogram:
    """Histogram of Omega values over 1..limit."""
    k_max = int(math.log(table.limit) / math.log(2)) if table.limit > 1 else 0
    counts = np.bincount(table.omega[1:], minlength=k_max + 1).astype(np.int64)
    counts.flags.writeable = False
    return OmegaHistogram(limit=table.limit, counts=counts)


def sum_omega_power(table: FactorTable, alpha: float) -> float:
    """S(X) = sum_{n<=X} Omega(n)^alpha, evaluated as sum_k k^alpha N_k."""
    if alpha <= 0:
        raise ValueError(f"alpha must be > 0, got {alpha}")
    hist = count_omega_classes(table)
    k = np.arange(len(hist.counts), dtype=np.float64)
    powers = np.zeros_like(k)
    powers[1:] = k[1:] ** alpha
    return float(powers @ hist.counts.astype(np.float64))


#: Smallest admissible start for Erdos-Kac samples: log log n must exceed 1,
#: which holds from n = 16 on (log log 16 = 1.02).
EK_N_MIN = 16


def erdos_kac_samples(table: FactorTable, n_min: int = EK_N_MIN) -> np.ndarray:
    """Normalized values (Omega(n) - log log n)/sqrt(log log n), n_min..limit.

    Uses log log of the sample point n itself, not of the limit.
    """
    if n_min < EK_N_MIN:
        raise ValueError(f"n_min must be >= {EK_N_MIN}, got {n_min}")
    if n_min > table.limit:
        raise ValueError(f"n_min={n_min} exceeds table limit {table.limit}")
    n = np.arange(n_min, table.limit + 1, dtype=np.float64)
    ll = np.log(np.log(n))
    return (table.omega[n_min:].astype(np.float64) - ll) / np.sqrt(ll)


def _payload_checksum(payload: bytes) -> bytes:
    return hashlib.sha256(payload).digest()[:8]


def save_cache(table: FactorTable, path) -> None:
    """Write the Omega table in the DLAB binary format.

    Layout (little-endian): magic "DLAB", u32 version, u64 limit, then
    limit bytes of Omega(1..limit), then the first 8 bytes of the SHA-256
    of that payload.  The spf array is not cached; require_spf() rebuilds
    it after a load.
    """
    payload = table.omega[1:].tobytes()
    with open(path, "wb") as fh:
        fh.write(CACHE_MAGIC)
        fh.write(struct.pack("<I", CACHE_VERSION))
        fh.write(struct.pack("<Q", table.limit))
        fh.write(payload)
        fh.write(_payload_checksum(payload))


def load_cache(path) -> FactorTable:
    """Read a DLAB cache written by save_cache.

    Raises CacheMagicError / CacheVersionError / CacheTruncatedError /
    CacheChecksumError for the respective malformations.
    """
    with open(path, "rb") as fh:
        data = fh.read()
    if len(data) < 16:
        raise CacheTruncatedError(f"cache file is {len(data)} bytes, header needs 16")
    if data[:4] != CACHE_MAGIC:
        raise CacheMagicError(f"bad magic {data[:4]!r}, expected {CACHE_MAGIC!r}")
    (version,) = struct.unpack_from("<I", data, 4)
    if version != CACHE_VERSION:
        raise CacheVersionError(f"cache version {version}, supported {CACHE_VERSION}")
    (limit,) = struct.unpack_from("<Q", data, 8)
    expected = 16 + limit + 8
    if len(data) != expected:
        raise CacheTruncatedError(
            f"cache file is {len(data)} bytes, expected {expected} for limit {limit}"
        )
    payload = data[16 : 16 + limit]
    if _payload_checksum(payload) != data[16 + limit :]:
        raise CacheChecksumError("payload checksum mismatch")
    omega = np.empty(limit + 1, dtype=np.uint8)
    omega[0] = 0
    omega[1:] = np.frombuffer(payload, dtype=np.uint8)
    omega.flags.writeable = False
    return FactorTable(limit=int(limit), omega=omega, spf=None)
