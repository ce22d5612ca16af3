"""Monte-Carlo check of the Cramer-Rao bound for additive Gaussian noise.

Data follow ``x = alpha + y`` with ``y ~ N(0, sigma^2)``. The sample mean is
unbiased and efficient here, so its mean-square error should sit on the bound
``1 / (N I)`` with ``I = 1 / sigma^2``.

Random numbers
--------------
Trial ``k`` draws from its own ``PCG64`` stream seeded with
``SeedSequence([seed, k])``. Each normal variate is produced by inverse CDF:
a 53-bit integer ``b`` becomes ``u = (b + 0.5) / 2**53`` in ``(0, 1)`` and
``z = ndtri(u)``. Per-trial means are summed in trial order, so a given
configuration reproduces bit for bit.
"""

import math
import numbers
from dataclasses import asdict, dataclass

import numpy as np
from scipy.special import ndtri

from ._validation import check_finite_scalar
from .exceptions import InvalidArgumentError
from .families import FamilySpec, analytic_fisher

MIN_TRIALS = 100
_MANTISSA = 2**53


@dataclass(frozen=True)
class EstimationConfig:
    family: FamilySpec = FamilySpec()
    alpha_true: float = 0.0
    samples_per_trial: int = 1000
    trials: int = 10_000
    seed: int = 0

    def __post_init__(self):
        if not isinstance(self.family, FamilySpec) or self.family.kind != "gaussian_location":
            raise InvalidArgumentError(
                "only the gaussian_location family has the sample mean as efficient estimator"
            )
        object.__setattr__(self, "alpha_true", check_finite_scalar(self.alpha_true, "alpha_true"))
        for name, low in (("samples_per_trial", 1), ("trials", MIN_TRIALS)):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, numbers.Integral) or v < low:
                raise InvalidArgumentError(f"{name} must be an integer >= {low}, got {v!r}")
            object.__setattr__(self, name, int(v))
        seed = self.seed
        if isinstance(seed, bool) or not isinstance(seed, numbers.Integral) or not 0 <= seed < 2**64:
            raise InvalidArgumentError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
        object.__setattr__(self, "seed", int(seed))


@dataclass(frozen=True)
class EstimationReport:
    mean_estimate: float
    mean_square_error: float
    fisher_per_sample: float
    cramer_rao_bound: float
    efficiency: float

    def to_dict(self):
        return asdict(self)


def trial_normals(seed, trial, size):
    """Standard normal variates for one trial (see module docstring)."""
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, trial])))
    bits = rng.integers(0, _MANTISSA, size=size, dtype=np.uint64)
    return ndtri((bits.astype(np.float64) + 0.5) / _MANTISSA)


def _sample_means(config):
    sigma = config.family.sigma
    means = np.empty(config.trials)
    for k in range(config.trials):
        y = sigma * trial_normals(config.seed, k, config.samples_per_trial)
        means[k] = np.mean(config.alpha_true + y)
    return means


def _report(estimates, config):
    fisher = analytic_fisher(config.family, config.alpha_true).value
    errors = estimates - config.alpha_true
    mse = float(np.mean(errors * errors))
    bound = 1.0 / (config.samples_per_trial * fisher)
    return EstimationReport(
        mean_estimate=float(np.mean(estimates)),
        mean_square_error=mse,
        fisher_per_sample=fisher,
        cramer_rao_bound=bound,
        efficiency=bound / mse if mse > 0 else math.inf,
    )


def simulate_estimation(config):
    """Mean-square error of the sample-mean estimator against the Cramer-Rao bound."""
    if not isinstance(config, EstimationConfig):
        raise InvalidArgumentError(f"expected an EstimationConfig, got {type(config).__name__}")
    return _report(_sample_means(config), config)


def biased_estimator_comparison(config, shrink):
    """Reports for the sample mean and for ``shrink * sample mean`` on the same draws.

    The shrunken estimator is biased, so its efficiency may exceed one.
    """
    if not isinstance(config, EstimationConfig):
        raise InvalidArgumentError(f"expected an EstimationConfig, got {type(config).__name__}")
    shrink = check_finite_scalar(shrink, "shrink")
    if not 0.0 < shrink <= 1.0:
        raise InvalidArgumentError(f"shrink must lie in (0, 1], got {shrink}")
    means = _sample_means(config)
    return _report(means, config), _report(shrink * means, config)
