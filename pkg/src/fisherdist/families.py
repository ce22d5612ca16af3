"""One-parameter families of real, nodeless wavefunctions and their Fisher information.

Each family is defined through its probability density ``P_alpha(x)``; the
wavefunction is the positive square root, evaluated in log space so that
far tails do not underflow before the density does.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import log_ndtr

from ._validation import check_finite_scalar, check_open_unit, check_positive
from .exceptions import DomainCoverageError, InvalidArgumentError
from .grid import DENSITY_FLOOR, DensityVector, WaveVector, density_from_wavefunction, integrate

KINDS = ("gaussian_location", "gaussian_scale", "two_gaussian_mixture")

DEFAULT_FD_STEP = 1e-5
MAX_TAIL_MASS = 1e-12

_LOG_2PI = math.log(2.0 * math.pi)


def _normal_logpdf(x, mean, sd):
    z = (x - mean) / sd
    return -0.5 * z * z - math.log(sd) - 0.5 * _LOG_2PI


def _normal_tail(x_min, x_max, mean, sd):
    """Probability mass of N(mean, sd^2) outside ``[x_min, x_max]``."""
    lo = math.exp(log_ndtr((x_min - mean) / sd))
    hi = math.exp(log_ndtr(-(x_max - mean) / sd))
    return lo + hi


@dataclass(frozen=True)
class FamilySpec:
    """A named one-parameter family ``alpha -> psi_alpha``.

    Only the shape parameters of the chosen ``kind`` are used:

    * ``gaussian_location``: ``sigma``; density N(alpha, sigma^2).
    * ``gaussian_scale``: ``mu``; density N(mu, alpha^2), alpha > 0.
    * ``two_gaussian_mixture``: ``separation``, ``sigma``, ``weight``; density
      ``w N(alpha - s/2, sigma^2) + (1 - w) N(alpha + s/2, sigma^2)``.
    """

    kind: str = "gaussian_location"
    sigma: float = 1.0
    mu: float = 0.0
    separation: float = 1.0
    weight: float = 0.3

    def __post_init__(self):
        kind = str(self.kind).replace("-", "_")
        if kind not in KINDS:
            raise InvalidArgumentError(f"unknown family kind {self.kind!r}; expected one of {KINDS}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "sigma", check_positive(self.sigma, "sigma"))
        object.__setattr__(self, "mu", check_finite_scalar(self.mu, "mu"))
        object.__setattr__(self, "separation", check_positive(self.separation, "separation"))
        object.__setattr__(self, "weight", check_open_unit(self.weight, "weight"))

    @classmethod
    def gaussian_location(cls, sigma=1.0):
        return cls("gaussian_location", sigma=sigma)

    @classmethod
    def gaussian_scale(cls, mu=0.0):
        return cls("gaussian_scale", mu=mu)

    @classmethod
    def two_gaussian_mixture(cls, separation=1.0, sigma=1.0, weight=0.3):
        return cls("two_gaussian_mixture", sigma=sigma, separation=separation, weight=weight)

    def params(self):
        """Shape parameters relevant to ``kind``."""
        if self.kind == "gaussian_location":
            return {"sigma": self.sigma}
        if self.kind == "gaussian_scale":
            return {"mu": self.mu}
        return {"separation": self.separation, "sigma": self.sigma, "weight": self.weight}

    def check_alpha(self, alpha):
        alpha = check_finite_scalar(alpha, "alpha")
        if self.kind == "gaussian_scale" and alpha <= 0:
            raise InvalidArgumentError(f"gaussian_scale needs alpha > 0, got {alpha!r}")
        return alpha

    def _components(self, alpha):
        """(log weight, mean, sd) of each normal component."""
        if self.kind == "gaussian_location":
            return [(0.0, alpha, self.sigma)]
        if self.kind == "gaussian_scale":
            return [(0.0, self.mu, alpha)]
        half = 0.5 * self.separation
        return [
            (math.log(self.weight), alpha - half, self.sigma),
            (math.log1p(-self.weight), alpha + half, self.sigma),
        ]

    def log_density(self, x, alpha):
        alpha = self.check_alpha(alpha)
        x = np.asarray(x, dtype=float)
        terms = [lw + _normal_logpdf(x, m, s) for lw, m, s in self._components(alpha)]
        if len(terms) == 1:
            return terms[0]
        return np.logaddexp(*terms)

    def tail_mass(self, alpha, x_min, x_max):
        alpha = self.check_alpha(alpha)
        return sum(
            math.exp(lw) * _normal_tail(x_min, x_max, m, s)
            for lw, m, s in self._components(alpha)
        )


def evaluate_wavefunction(family, alpha, grid):
    """Sample ``psi_alpha`` on ``grid``, renormalized on the grid."""
    alpha = family.check_alpha(alpha)
    tail = family.tail_mass(alpha, grid.x_min, grid.x_max)
    if tail >= MAX_TAIL_MASS:
        raise DomainCoverageError(
            f"grid [{grid.x_min}, {grid.x_max}] leaves tail mass {tail:.3g} "
            f"outside for {family.kind} at alpha={alpha}"
        )
    psi = np.exp(0.5 * family.log_density(grid.points, alpha))
    norm = integrate(grid, psi * psi)
    return WaveVector(grid, psi / math.sqrt(norm))


def evaluate_density(family, alpha, grid):
    return density_from_wavefunction(evaluate_wavefunction(family, alpha, grid))


def alpha_derivative_density(family, alpha, grid, h=DEFAULT_FD_STEP):
    """Central difference ``(P_{alpha+h} - P_{alpha-h}) / 2h`` at each grid point."""
    alpha = check_finite_scalar(alpha, "alpha")
    h = check_positive(h, "h")
    p_plus = evaluate_density(family, alpha + h, grid).values
    p_minus = evaluate_density(family, alpha - h, grid).values
    return (p_plus - p_minus) / (2.0 * h)


@dataclass(frozen=True)
class FisherValue:
    value: float
    method: str  # "quadrature" or "analytic"

    def __post_init__(self):
        if self.method not in ("quadrature", "analytic"):
            raise InvalidArgumentError(f"unknown Fisher method {self.method!r}")
        if not self.value >= 0:
            raise InvalidArgumentError(f"Fisher information must be >= 0, got {self.value!r}")


def score_squared_integrand(density, dp):
    """``P (dP/P)^2`` with points below the density floor contributing zero."""
    p = density.values if isinstance(density, DensityVector) else np.asarray(density)
    out = np.zeros_like(p)
    keep = p >= DENSITY_FLOOR
    out[keep] = dp[keep] ** 2 / p[keep]
    return out


def fisher_information(family, alpha, grid, h=DEFAULT_FD_STEP):
    """Fisher information by quadrature of ``P (d ln P / d alpha)^2``."""
    p = evaluate_density(family, alpha, grid)
    dp = alpha_derivative_density(family, alpha, grid, h)
    value = integrate(grid, score_squared_integrand(p, dp))
    return FisherValue(value, "quadrature")


def analytic_fisher(family, alpha) -> Optional[FisherValue]:
    """Closed-form Fisher information, or ``None`` when the family has none."""
    if family.kind == "gaussian_location":
        return FisherValue(1.0 / family.sigma**2, "analytic")
    if family.kind == "gaussian_scale":
        alpha = family.check_alpha(alpha)
        return FisherValue(2.0 / alpha**2, "analytic")
    return None

