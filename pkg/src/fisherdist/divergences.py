"""Differential Shannon entropy and the Kullback-Leibler / Jensen-Shannon family.

All quantities are continuum versions computed by Simpson quadrature on the
shared grid of the two densities, with natural logarithms. Points where a
density falls below ``DENSITY_FLOOR`` are treated as outside its support.

Divergences are clamped at zero; use the ``raw_*`` helpers (or
``return_raw=True``) to see the unclamped quadrature value.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._validation import check_open_unit
from .exceptions import InvalidArgumentError, SupportError
from .grid import DENSITY_FLOOR, DensityVector

WEIGHT_TOL = 1e-12


@dataclass(frozen=True)
class WeightPair:
    pi1: float = 0.5
    pi2: float = 0.5

    def __post_init__(self):
        pi1 = check_open_unit(self.pi1, "pi1")
        pi2 = check_open_unit(self.pi2, "pi2")
        if abs(pi1 + pi2 - 1.0) > WEIGHT_TOL:
            raise InvalidArgumentError(f"weights must sum to 1, got {pi1} + {pi2}")
        object.__setattr__(self, "pi1", pi1)
        object.__setattr__(self, "pi2", pi2)

    @classmethod
    def from_first(cls, pi1):
        return cls(pi1, 1.0 - pi1)

    def swapped(self):
        return WeightPair(self.pi2, self.pi1)


EQUAL_WEIGHTS = WeightPair(0.5, 0.5)


def _shared_grid(p, q):
    for d in (p, q):
        if not isinstance(d, DensityVector):
            raise InvalidArgumentError(f"expected a DensityVector, got {type(d).__name__}")
    if p.grid != q.grid:
        raise InvalidArgumentError(f"densities live on different grids: {p.grid} vs {q.grid}")
    return p.grid


def _xlogx_ratio(p, q):
    """Pointwise ``p ln(p/q)``; zero where p is below the floor."""
    out = np.zeros_like(p)
    keep = p >= DENSITY_FLOOR
    bad = keep & (q < DENSITY_FLOOR)
    if np.any(bad):
        raise SupportError(
            f"reference density vanishes at {int(bad.sum())} points where the other does not"
        )
    out[keep] = p[keep] * (np.log(p[keep]) - np.log(q[keep]))
    return out


def _clamp(raw, return_raw):
    value = max(raw, 0.0)
    return (value, raw) if return_raw else value


def shannon_entropy(p):
    """``-∫ p ln p dx``."""
    if not isinstance(p, DensityVector):
        raise InvalidArgumentError(f"expected a DensityVector, got {type(p).__name__}")
    return _entropy_of(p.values, p.grid)


def _entropy_of(values, grid):
    integrand = np.zeros_like(values)
    keep = values >= DENSITY_FLOOR
    integrand[keep] = -values[keep] * np.log(values[keep])
    return float(np.dot(grid.weights, integrand))


def raw_kl(p, q):
    grid = _shared_grid(p, q)
    return float(np.dot(grid.weights, _xlogx_ratio(p.values, q.values)))


def kl_divergence(p, q, return_raw=False):
    """``K[p|q] = ∫ p ln(p/q) dx``.

    Raises :class:`SupportError` if ``q`` vanishes where ``p`` does not.
    """
    return _clamp(raw_kl(p, q), return_raw)


def symmetrized_kl(p, q, return_raw=False):
    """``K[p|q] + K[q|p]``; needs mutual support."""
    grid = _shared_grid(p, q)
    integrand = _xlogx_ratio(p.values, q.values) + _xlogx_ratio(q.values, p.values)
    raw = float(np.dot(grid.weights, integrand))
    return _clamp(raw, return_raw)


def _kl_to_mixture(p_vals, q_vals, pi2, grid):
    """``K[p | (1 - pi2) p + pi2 q]``; the mixture dominates p so no support check is needed."""
    out = np.zeros_like(p_vals)
    keep = p_vals >= DENSITY_FLOOR
    pk = p_vals[keep]
    # m = p + pi2 (q - p), so ln(p/m) = -log1p(pi2 (q - p) / p); accurate when p ~ q
    out[keep] = -pk * np.log1p(pi2 * (q_vals[keep] - pk) / pk)
    return float(np.dot(grid.weights, out))


def j0(p, q, return_raw=False):
    """``K[p | (p + q)/2]``; not symmetric in its arguments."""
    grid = _shared_grid(p, q)
    raw = _kl_to_mixture(p.values, q.values, 0.5, grid)
    return _clamp(raw, return_raw)


def j1(p, q, return_raw=False):
    """``J0[p, q] + J0[q, p]``."""
    grid = _shared_grid(p, q)
    raw = _kl_to_mixture(p.values, q.values, 0.5, grid) + _kl_to_mixture(q.values, p.values, 0.5, grid)
    return _clamp(raw, return_raw)


def j1_entropy_form(p, q):
    """``2 S[(p + q)/2] - S[p] - S[q]``; equal to :func:`j1` up to rounding."""
    grid = _shared_grid(p, q)
    mid = 0.5 * (p.values + q.values)
    return 2.0 * _entropy_of(mid, grid) - _entropy_of(p.values, grid) - _entropy_of(q.values, grid)


def jsd_weighted(p, q, weights=EQUAL_WEIGHTS, return_raw=False):
    """Weighted Jensen-Shannon divergence ``S[pi1 p + pi2 q] - pi1 S[p] - pi2 S[q]``.

    Evaluated as ``pi1 K[p|m] + pi2 K[q|m]`` with ``m`` the mixture, which is
    the same quantity without the cancellation between three entropies of
    order one (see :func:`jsd_weighted_entropy_form`).
    """
    if not isinstance(weights, WeightPair):
        raise InvalidArgumentError(f"weights must be a WeightPair, got {type(weights).__name__}")
    grid = _shared_grid(p, q)
    pi1, pi2 = weights.pi1, weights.pi2
    raw = pi1 * _kl_to_mixture(p.values, q.values, pi2, grid) + pi2 * _kl_to_mixture(
        q.values, p.values, pi1, grid
    )
    return _clamp(raw, return_raw)


def jsd_weighted_entropy_form(p, q, weights=EQUAL_WEIGHTS):
    grid = _shared_grid(p, q)
    pi1, pi2 = weights.pi1, weights.pi2
    mix = pi1 * p.values + pi2 * q.values
    return _entropy_of(mix, grid) - pi1 * _entropy_of(p.values, grid) - pi2 * _entropy_of(q.values, grid)


def jsd_metric(p, q):
    """Square root of the equal-weight JSD; a metric bounded by ``sqrt(ln 2)``."""
    return math.sqrt(jsd_weighted(p, q, EQUAL_WEIGHTS))
