"""Iterated-log utilities, the singular weight integral and its asymptotic,
the nu Euler product, the Sathe-Selberg predictor, the average-order
prediction, the top-range bound, and the Kolmogorov-Smirnov statistic.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.special import erfc, gamma as complex_gamma

from .arith import primes_upto

#: Deepest exponential tower representable in a double: e_3 ~ 3.8e6,
#: e_4 overflows.
MAX_E_LEVEL = 3


class ToleranceNotMetError(RuntimeError):
    """Adaptive quadrature could not certify the requested tolerance.

    Carries the achieved estimate and its reported error bound.
    """

    def __init__(self, message: str, estimate: float, abserr: float):
        super().__init__(message)
        self.estimate = estimate
        self.abserr = abserr


@functools.lru_cache(maxsize=None)
def e_tower(j: int) -> tuple[float, ...]:
    """(e_0, ..., e_j) with e_0 = 1 and e_l = exp(e_{l-1})."""
    if j < 0:
        raise ValueError("tower level must be >= 0")
    if j > MAX_E_LEVEL:
        raise ValueError(f"e_{j} overflows float64 (max level {MAX_E_LEVEL})")
    vals = [1.0]
    for _ in range(j):
        vals.append(math.exp(vals[-1]))
    return tuple(vals)


@dataclass(frozen=True)
class IterLogParams:
    """Exponent alpha and log depth j, with the matching constant tower."""

    j: int
    alpha: float

    def __post_init__(self):
        if self.j < 0:
            raise ValueError("j must be >= 0")
        if self.alpha <= 0:
            raise ValueError("alpha must be > 0")

    @property
    def e(self) -> tuple[float, ...]:
        return e_tower(min(self.j, MAX_E_LEVEL))


def iter_log_plus(j: int, x):
    """j-fold truncated logarithm: clip at 0 before and after every log.

    log_0^+ x = max(x, 0); each further stage takes log where positive and
    0 otherwise.  Accepts scalars or arrays.
    """
    if j < 0:
        raise ValueError("j must be >= 0")
    arr = np.asarray(x, dtype=np.float64)
    v = np.maximum(arr, 0.0)
    for _ in range(j):
        positive = v > 0.0
        v = np.where(positive, np.log(np.where(positive, v, 1.0)), 0.0)
        v = np.maximum(v, 0.0)
    if arr.ndim == 0:
        return float(v)
    return v


# -- the singular weight integral ---------------------------------------------


def _log_iterated(k: int, x: float) -> float:
    for _ in range(k):
        x = math.log(x)
    return x


def _y_of_t(t: float, alpha: float, j: int, e: tuple[float, ...]) -> float:
    # y = (log_{j-1}(e_{j-1}/t))^{-alpha}, the uniformizing variable
    return _log_iterated(j - 1, e[j - 1] / t) ** (-alpha)


def _log_weight_integrand(y: float, l_value: float, alpha: float, j: int,
                       e: tuple[float, ...]) -> float:
    t_big = y ** (-1.0 / alpha)  # log_{j-1}(e_{j-1}/t)
    val = t_big
    for _ in range(j - 2):
        if val > 700.0:
            # t underflows entirely: e^{-tL} = 1 and corr -> 1
            return 1.0
        val = math.exp(val)
    lam = val - e[j - 2]  # log(1/t)
    decay = math.exp(-l_value * math.exp(-lam)) if lam < 745.0 else 1.0
    corr = 1.0
    for lev in range(1, j - 1):
        corr *= _log_iterated(lev - 1, lam + e[j - 2]) / _log_iterated(lev - 1, lam + e[lev - 1])
    return decay * corr


def log_weight_integral(
    l_value: float,
    alpha: float,
    j: int,
    *,
    rel_tol: float = 1e-10,
    t_min: float = 0.0,
    t_max: float = 1.0,
) -> float:
    """integral over (t_min, t_max] of e^{-t L} times the iterated-log weight
    (prod_{l<=j-2} log_l(e_l/t))^{-1} (log_{j-1}(e_{j-1}/t))^{-(alpha+1)} dt/t.

    Parametrized by L = log n so that astronomically large n stay
    representable.  The substitution y = (log_{j-1}(e_{j-1}/t))^{-alpha}
    maps (0, 1] onto (0, 1] and flattens both the t -> 0 singularity and
    the decay tail (it is exact for j = 2, where the transformed measure is
    Lebesgue); Gauss-Kronrod adaptive panels then integrate a bounded
    smooth function.  Raises ToleranceNotMetError when the reported error
    exceeds the target.
    """
    if l_value <= 0:
        raise ValueError("need L = log n > 0")
    if alpha <= 0:
        raise ValueError("alpha must be > 0")
    if j < 2:
        raise ValueError("the weight integral is defined for j >= 2")
    if not 0.0 <= t_min < t_max <= 1.0:
        raise ValueError("need 0 <= t_min < t_max <= 1")
    e = e_tower(j - 1)
    y_lo = _y_of_t(t_min, alpha, j, e) if t_min > 0 else 0.0
    y_hi = _y_of_t(t_max, alpha, j, e)
    value, abserr = quad(
        _log_weight_integrand,
        y_lo,
        y_hi,
        args=(l_value, alpha, j, e),
        epsabs=1e-30,
        epsrel=rel_tol,
        limit=500,
    )
    value /= alpha
    abserr /= alpha
    if abserr > max(rel_tol * abs(value), 1e-30):
        raise ToleranceNotMetError(
            f"quadrature error {abserr:.3g} exceeds tolerance for value {value:.6g}",
            estimate=value,
            abserr=abserr,
        )
    return value


def log_weight_asymptotic(l_value: float, alpha: float, j: int) -> float:
    """Leading term (1/alpha) (log_j^+ n)^{-alpha} with L = log n."""
    if alpha <= 0:
        raise ValueError("alpha must be > 0")
    if j < 2:
        raise ValueError("j must be >= 2")
    inner = iter_log_plus(j - 1, l_value)
    if inner <= 0:
        raise ValueError(f"degenerate L: log_{j}^+ n = 0 for L = {l_value}")
    return inner ** (-alpha) / alpha


# -- the nu Euler product -------------------------------------------------------


@dataclass(frozen=True)
class NuProductConfig:
    """Truncation cutoff for the Euler product and the optional second-order
    tail correction exp((z^2 - z)/2 * sum_{p > P} p^{-2})."""

    prime_cutoff: int = 10**6
    tail_correction: bool = True

    def __post_init__(self):
        if self.prime_cutoff < 2:
            raise ValueError("prime cutoff must be >= 2")


@functools.lru_cache(maxsize=8)
def _primes_f64(cutoff: int) -> np.ndarray:
    p = primes_upto(cutoff).astype(np.float64)
    p.flags.writeable = False
    return p


def _prime_square_tail(cutoff: float) -> float:
    # sum_{p > P} p^{-2} ~ 1/(P log P), first-order prime-counting estimate
    return 1.0 / (cutoff * math.log(cutoff))


def nu(z: complex, cfg: NuProductConfig = NuProductConfig()) -> complex:
    """nu(z) = Gamma(z+1)^{-1} prod_p (1 - z/p)^{-1} (1 - 1/p)^z for |z| < 2.

    Log-domain product over p <= cutoff; the optional tail correction adds
    the m = 2 term of the factor logarithms for p > cutoff.
    """
    z = complex(z)
    if abs(z) >= 2:
        raise ValueError(f"nu is defined for |z| < 2, got |z| = {abs(z):.4g}")
    p = _primes_f64(cfg.prime_cutoff)
    logs = -np.log(1.0 - z / p) + z * np.log1p(-1.0 / p)
    total = complex(math.fsum(logs.real), math.fsum(logs.imag))
    if cfg.tail_correction:
        total += (z * z - z) / 2.0 * _prime_square_tail(float(cfg.prime_cutoff))
    return complex(np.exp(total) / complex_gamma(z + 1.0))


def nu_tail_residual_bound(z: complex, cfg: NuProductConfig = NuProductConfig()) -> float:
    """Crude geometric bound on the neglected tail terms of log nu."""
    z = complex(z)
    p_cut = float(cfg.prime_cutoff)
    m3 = (abs(z) ** 3 + abs(z)) / (3.0 * (1.0 - abs(z) / 2.0)) / (p_cut**2 * math.log(p_cut))
    m2_err = abs(z * z - z) / 2.0 * 2.0 / (p_cut * math.log(p_cut) ** 2)
    if not cfg.tail_correction:
        m2_err = abs(z * z - z) / 2.0 * _prime_square_tail(p_cut) + m2_err
    return m3 + m2_err


# -- counting predictions -------------------------------------------------------


def sathe_selberg_Nk(x: float, k: int, cfg: NuProductConfig = NuProductConfig()) -> float:
    """Main-term prediction for #{n <= X : Omega(n) = k}:
    X/log X * (log_2 X)^{k-1}/(k-1)! * nu((k-1)/log_2 X).

    The neglected relative error term scales like k/(log_2 X)^2; see
    sathe_selberg_error_scale.
    """
    if x < 16:
        raise ValueError("need X >= 16")
    if k < 1:
        raise ValueError("need k >= 1")
    ll = math.log(math.log(x))
    z = (k - 1) / ll
    if z >= 2:
        raise ValueError(f"(k-1)/loglog X = {z:.3g} outside the nu domain |z| < 2")
    main = x / math.log(x) * ll ** (k - 1) / math.factorial(k - 1)
    return main * nu(z, cfg).real


def sathe_selberg_error_scale(x: float, k: int) -> float:
    """The formula's stated relative error scale k/(log_2 X)^2."""
    if x < 16:
        raise ValueError("need X >= 16")
    return k / math.log(math.log(x)) ** 2


@dataclass(frozen=True)
class AvgOrderPrediction:
    main: float
    error_scale: float


def avg_order_prediction(x: float, alpha: float, *, exploratory: bool = False) -> AvgOrderPrediction:
    """Predicted sum_{n<=X} Omega(n)^alpha: main X (log_2 X)^alpha with error
    scale X (log_2 X)^{alpha-1}.

    Stated for alpha >= 1; pass exploratory=True to evaluate the same
    expressions for 0 < alpha < 1 without the error-term claim.
    """
    if x < 16:
        raise ValueError("need X >= 16")
    if alpha < 1 and not exploratory:
        raise ValueError("the average-order statement needs alpha >= 1 "
                         "(use exploratory=True to evaluate anyway)")
    if alpha <= 0:
        raise ValueError("alpha must be > 0")
    ll = math.log(math.log(x))
    return AvgOrderPrediction(main=x * ll**alpha, error_scale=x * ll ** (alpha - 1.0))


def nicolas_range_bound(x: float, k: int, c: float) -> float:
    """Top-range bound (C X / 2^k) log(X / 2^k); needs 2^k <= X, C > 0."""
    if c <= 0:
        raise ValueError("C must be > 0")
    if k * math.log(2.0) > math.log(x) * (1.0 + 1e-12) + 1e-12:
        raise ValueError(f"2^{k} exceeds X = {x:g}")
    ratio = x / 2.0**k
    return c * ratio * math.log(max(ratio, 1.0))


# -- distribution comparison ----------------------------------------------------


def normal_cdf(x):
    """Standard normal CDF via the double-precision complementary error
    function (far below the 1e-7 accuracy contract)."""
    return 0.5 * erfc(-np.asarray(x, dtype=np.float64) / math.sqrt(2.0))


def ks_statistic(samples) -> float:
    """Sup distance between the empirical CDF and the standard normal CDF."""
    s = np.sort(np.asarray(samples, dtype=np.float64))
    n = len(s)
    if n == 0:
        raise ValueError("need at least one sample")
    cdf = normal_cdf(s)
    i = np.arange(1, n + 1, dtype=np.float64)
    upper = np.max(np.abs(i / n - cdf))
    lower = np.max(np.abs((i - 1.0) / n - cdf))
    return float(max(upper, lower))
