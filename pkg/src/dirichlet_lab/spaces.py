"""Weight families, coefficient-weighted norms, and iterated-log Bergman
measures on the unit disk and the half-plane Re s > 1/2.

Area measure is normalized to total mass 1 (dA = area/pi), which makes the
j = 1 radial measure alpha (1-|z|^2)^{alpha-1} a probability measure; the
same constant tower e_0 = 1, e_{l} = exp(e_{l-1}) keeps every j >= 2
measure finite with mass exactly 1 at j = 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import roots_jacobi, roots_legendre

from .arith import FactorTable, d_alpha
from .asymptotics import e_tower, iter_log_plus
from .dirichlet import DirichletPoly, evaluate_array

#: Largest supported iterated-log index: densities for level j need e_{j-1},
#: and e_4 already overflows a double.
MAX_J = 4

#: Radial positions are kept strictly inside the disk; measure mass below
#: this distance-to-boundary is assigned to the floor ring, which perturbs
#: |f|^2 of a degree-d polynomial by O(d * 1e-14).
U_FLOOR = 1e-14


class MappingViolationError(ValueError):
    """A claimed self-map of the disk left the disk at a grid node."""


class EvaluationError(ValueError):
    """Non-finite value met while evaluating an integrand on the grid."""


# -- weight families ----------------------------------------------------------


@dataclass(frozen=True)
class WeightFamily:
    """Tagged coefficient weight w_n.

    kinds: unit (w = 1); divisor_pow (d(n)^alpha); generalized_divisor
    (d_{alpha+1}(n)); omega_pow ((1+Omega(n))^alpha); iter_log_omega
    ((1 + log_j^+ Omega(n))^alpha).
    """

    kind: str
    alpha: float = 1.0
    j: int = 0

    _KINDS = ("unit", "divisor_pow", "generalized_divisor", "omega_pow", "iter_log_omega")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown weight kind {self.kind!r}")
        if self.kind != "unit" and self.alpha <= 0:
            raise ValueError("alpha must be > 0")
        if self.kind == "iter_log_omega" and self.j < 1:
            raise ValueError("iter_log_omega needs j >= 1")

    @classmethod
    def unit(cls):
        return cls("unit")

    @classmethod
    def divisor_pow(cls, alpha):
        return cls("divisor_pow", alpha)

    @classmethod
    def generalized_divisor(cls, alpha):
        return cls("generalized_divisor", alpha)

    @classmethod
    def omega_pow(cls, alpha):
        return cls("omega_pow", alpha)

    @classmethod
    def iter_log_omega(cls, j, alpha):
        return cls("iter_log_omega", alpha, j)

    def label(self) -> str:
        if self.kind == "unit":
            return "unit"
        if self.kind == "iter_log_omega":
            return f"iter_log_omega(j={self.j},alpha={self.alpha:g})"
        return f"{self.kind}(alpha={self.alpha:g})"


def weight_value(fam: WeightFamily, n: int, table: FactorTable) -> float:
    """The single weight w_n of the tagged family."""
    if not 1 <= n <= table.limit:
        raise ValueError(f"n={n} outside table range 1..{table.limit}")
    if fam.kind == "unit":
        return 1.0
    if fam.kind == "divisor_pow":
        return d_alpha(n, 2, table) ** fam.alpha
    if fam.kind == "generalized_divisor":
        return d_alpha(n, fam.alpha + 1, table)
    omega = float(table.omega[n])
    if fam.kind == "omega_pow":
        return (1.0 + omega) ** fam.alpha
    return (1.0 + iter_log_plus(fam.j, omega)) ** fam.alpha


def weight_array(fam: WeightFamily, n_max: int, table: FactorTable) -> np.ndarray:
    """w_1..w_n_max as a float array (slot 0 unused, set to 1)."""
    if n_max > table.limit:
        raise ValueError(f"n_max={n_max} exceeds table limit {table.limit}")
    out = np.ones(n_max + 1, dtype=np.float64)
    if fam.kind == "unit":
        return out
    if fam.kind in ("divisor_pow", "generalized_divisor"):
        for n in range(1, n_max + 1):
            out[n] = weight_value(fam, n, table)
        return out
    omega = table.omega[1 : n_max + 1].astype(np.float64)
    if fam.kind == "omega_pow":
        out[1:] = (1.0 + omega) ** fam.alpha
    else:
        out[1:] = (1.0 + iter_log_plus(fam.j, omega)) ** fam.alpha
    return out


def hw_norm_sq(f: DirichletPoly, fam: WeightFamily, table: FactorTable) -> float:
    """Squared coefficient norm sum |a_n|^2 / w_n."""
    w = weight_array(fam, f.length, table)
    terms = (f.coeffs[1:].real ** 2 + f.coeffs[1:].imag ** 2) / w[1:]
    return math.fsum(terms)


# -- Bergman measures on the disk ---------------------------------------------


@dataclass(frozen=True)
class BergmanSpec:
    """Parameters of the iterated-log Bergman measure: exponent alpha > 0,
    log depth j >= 1, and the domain the norm lives on."""

    alpha: float
    j: int
    domain: str = "disk"

    def __post_init__(self):
        if self.alpha <= 0:
            raise ValueError("alpha must be > 0")
        if not 1 <= self.j <= MAX_J:
            raise ValueError(f"j must be in 1..{MAX_J}")
        if self.domain not in ("disk", "halfplane"):
            raise ValueError("domain must be 'disk' or 'halfplane'")

    @property
    def e(self) -> tuple[float, ...]:
        return e_tower(self.j - 1)


def _iter_log(k: int, x: float) -> float:
    for _ in range(k):
        x = math.log(x)
    return x


def disk_density(z: complex, spec: BergmanSpec) -> float:
    """Density of the level-j measure against normalized area measure.

    j = 1: alpha (1-|z|^2)^{alpha-1}.  j > 1: alpha/(1-|z|^2) times
    (prod_{l=1}^{j-2} log_l(e_l/(1-|z|^2)))^{-1} times
    (log_{j-1}(e_{j-1}/(1-|z|^2)))^{-(alpha+1)}.
    """
    u = 1.0 - abs(z) ** 2
    if u <= 0:
        raise ValueError(f"|z| must be < 1, got |z| = {abs(z)}")
    a, j, e = spec.alpha, spec.j, spec.e
    if j == 1:
        return a * u ** (a - 1.0)
    value = a / u
    for lev in range(1, j - 1):
        value /= _iter_log(lev, e[lev] / u)
    return value * _iter_log(j - 1, e[j - 1] / u) ** (-(a + 1.0))


@dataclass(frozen=True)
class DiskGrid:
    """Product quadrature for the level-j radial measure times the uniform
    angular rule (exact for trigonometric polynomials of degree < T/2)."""

    spec: BergmanSpec
    radial_nodes: np.ndarray
    radial_weights: np.ndarray
    angular_count: int

    def nodes(self) -> np.ndarray:
        theta = 2.0 * np.pi * np.arange(self.angular_count) / self.angular_count
        return self.radial_nodes[:, None] * np.exp(1j * theta)[None, :]

    def radial_moments(self, max_degree: int) -> np.ndarray:
        """m_n = sum_i w_i r_i^{2n} for n = 0..max_degree.

        Combined with the exact angular rule this is the same quadrature as
        the node-wise evaluation, reduced algebraically: the angular mean of
        |sum c_n z^n|^2 with degree < T/2 is sum |c_n|^2 r^{2n}.
        """
        r2 = self.radial_nodes**2
        powers = r2[None, :] ** np.arange(max_degree + 1)[:, None]
        return powers @ self.radial_weights


def _radial_rule(spec: BergmanSpec, count: int) -> tuple[np.ndarray, np.ndarray]:
    a, j = spec.alpha, spec.j
    e = e_tower(max(j - 1, 0))
    if j == 1:
        # Gauss-Jacobi in u = 1-r^2 absorbs the u^{alpha-1} endpoint factor;
        # exact for polynomial angular means, total mass exactly 1.
        x, w = roots_jacobi(count, 0.0, a - 1.0)
        u = (1.0 + x) / 2.0
        weights = a * 2.0 ** (-a) * w
    else:
        # Substitute v = (log_{j-1}(e_{j-1}/u))^{-alpha}: exact for j = 2;
        # for j >= 3 the leftover factor corr -> 1 stays in the weights.
        x, w = roots_legendre(count)
        v = (1.0 + x) / 2.0
        t_big = v ** (-1.0 / a)
        lam = np.empty_like(t_big)  # log(1/u)
        corr = np.ones_like(t_big)
        for i, t in enumerate(t_big):
            val = t
            overflow = False
            for _ in range(j - 2):
                if val > 700.0:
                    overflow = True
                    break
                val = math.exp(val)
            if overflow:
                lam[i] = math.inf
                corr[i] = 1.0
                continue
            lam[i] = val - e[j - 2]
            c = 1.0
            for lev in range(1, j - 1):
                num = _iter_log(lev - 1, lam[i] + e[j - 2]) if lev > 1 else lam[i] + e[j - 2]
                den = _iter_log(lev - 1, lam[i] + e[lev - 1]) if lev > 1 else lam[i] + e[lev - 1]
                c *= num / den
            corr[i] = c
        u = np.exp(-lam)
        weights = 0.5 * w * corr
    u = np.maximum(u, U_FLOOR)
    order = np.argsort(u)[::-1]  # radii ascending
    return np.sqrt(1.0 - u[order]), weights[order]


def build_disk_grid(spec: BergmanSpec, radial: int = 256, angular: int = 512) -> DiskGrid:
    r, w = _radial_rule(spec, radial)
    r.flags.writeable = False
    w.flags.writeable = False
    return DiskGrid(spec=spec, radial_nodes=r, radial_weights=w, angular_count=angular)


def _quad_mean_sq(values: np.ndarray, grid: DiskGrid) -> float:
    sq = values.real**2 + values.imag**2
    angular_mean = np.add.reduce(sq, axis=1) / grid.angular_count
    return float(grid.radial_weights @ angular_mean)


def _evaluate_on_grid(f, grid: DiskGrid, points: np.ndarray) -> np.ndarray:
    values = np.asarray(f(points), dtype=np.complex128)
    if values.shape != points.shape:
        raise EvaluationError(f"integrand returned shape {values.shape}, expected {points.shape}")
    finite = np.isfinite(values.real) & np.isfinite(values.imag)
    if not finite.all():
        idx = np.argwhere(~finite)[0]
        raise EvaluationError(
            f"non-finite value at grid node z = {points[tuple(idx)]:.6g} "
            f"(radial index {idx[0]}, angular index {idx[1]})"
        )
    return values


def disk_norm_sq(f, spec: BergmanSpec, grid: DiskGrid) -> float:
    """Quadrature of |f|^2 against the level-j disk measure.

    f must accept a complex ndarray and evaluate elementwise.
    """
    if grid.spec != spec:
        raise ValueError("grid was built for a different BergmanSpec")
    points = grid.nodes()
    return _quad_mean_sq(_evaluate_on_grid(f, grid, points), grid)


def coeff_norm_sq(c, spec: BergmanSpec) -> float:
    """sum_n |c_n|^2 / (1 + log_{j-1}^+ n)^alpha for Taylor coefficients
    c_0..c_M (log_0 x = x, so j = 1 weights are (1+n)^alpha)."""
    if spec.domain != "disk":
        raise ValueError("coefficient norm is defined on the disk side")
    c = np.asarray(c, dtype=np.complex128)
    n = np.arange(len(c), dtype=np.float64)
    w = (1.0 + iter_log_plus(spec.j - 1, n)) ** spec.alpha
    return math.fsum((c.real**2 + c.imag**2) / w)


# -- half-plane side ----------------------------------------------------------


def tau(s: complex) -> complex:
    """Conformal map (s - 3/2)/(s + 1/2) from Re s > 1/2 onto the disk."""
    if s == -0.5:
        raise ValueError("tau has a pole at s = -1/2")
    return (s - 1.5) / (s + 0.5)


def tau_inv(z: complex) -> complex:
    """Inverse of tau: (3 + z)/(2(1 - z))."""
    if np.isscalar(z) and z == 1:
        raise ValueError("tau_inv has a pole at z = 1")
    return (3.0 + z) / (2.0 * (1.0 - z))


def halfplane_norm_sq(f: DirichletPoly, spec: BergmanSpec, grid: DiskGrid) -> float:
    """Half-plane Bergman norm, by definition the disk norm of F(tau_inv(z))."""
    return disk_norm_sq(lambda z: evaluate_array(f, tau_inv(z)), spec, grid)


def mu_star_density(sigma: float, spec: BergmanSpec) -> float:
    """Density of the sigma-marginal measure used in the local embedding.

    For j >= 2 this is the displayed alpha/(sigma-1/2) *
    prod_{l<=j-2}(log_l^+(e_l/(sigma-1/2)))^{-1} *
    (log_{j-1}^+(e_{j-1}/(sigma-1/2)))^{-(alpha+1)}.  For j = 1 we take the
    (sigma-1/2)-profile of the level-1 half-plane measure,
    alpha (sigma-1/2)^{alpha-1}; that convention is specific to this
    package and is flagged in reports.
    """
    x = sigma - 0.5
    if not 0.0 < x <= 0.5:
        raise ValueError(f"sigma must lie in (1/2, 1], got {sigma}")
    a, j, e = spec.alpha, spec.j, spec.e
    if j == 1:
        return a * x ** (a - 1.0)
    value = a / x
    for lev in range(1, j - 1):
        value /= _iter_log(lev, e[lev] / x)
    return value * _iter_log(j - 1, e[j - 1] / x) ** (-(a + 1.0))


def subordination_pair(f, omega, spec: BergmanSpec, grid: DiskGrid) -> tuple[float, float]:
    """(integral of |f(omega(z))|^2, integral of |f(z)|^2) against the grid.

    omega must map every grid node strictly inside the disk; violations
    raise MappingViolationError naming the node.
    """
    if grid.spec != spec:
        raise ValueError("grid was built for a different BergmanSpec")
    points = grid.nodes()
    mapped = np.asarray(omega(points), dtype=np.complex128)
    if mapped.shape != points.shape:
        raise MappingViolationError(f"omega returned shape {mapped.shape}, expected {points.shape}")
    mod = np.abs(mapped)
    if np.any(mod >= 1.0):
        idx = np.argwhere(mod >= 1.0)[0]
        raise MappingViolationError(
            f"|omega(z)| = {mod[tuple(idx)]:.6g} >= 1 at node z = {points[tuple(idx)]:.6g}"
        )
    lhs = _quad_mean_sq(_evaluate_on_grid(f, grid, mapped), grid)
    rhs = _quad_mean_sq(_evaluate_on_grid(f, grid, points), grid)
    return lhs, rhs
