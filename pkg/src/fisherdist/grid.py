"""Uniform 1-D grids, composite Simpson quadrature and wave/density vectors."""

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ._validation import check_finite_scalar, check_samples, frozen
from .exceptions import DegenerateInputError, InvalidArgumentError, InvalidStateError

NORM_TOL = 1e-9
# densities below this are treated as outside the support
DENSITY_FLOOR = 1e-300


@dataclass(frozen=True)
class Grid:
    """Uniform grid on ``[x_min, x_max]`` with an odd number of points."""

    x_min: float
    x_max: float
    n_points: int

    def __post_init__(self):
        x_min = check_finite_scalar(self.x_min, "x_min")
        x_max = check_finite_scalar(self.x_max, "x_max")
        if not x_min < x_max:
            raise InvalidArgumentError(f"need x_min < x_max, got [{x_min}, {x_max}]")
        n = self.n_points
        if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
            raise InvalidArgumentError(f"n_points must be an integer, got {n!r}")
        if n < 3 or n % 2 == 0:
            raise InvalidArgumentError(f"n_points must be odd and >= 3, got {n}")
        object.__setattr__(self, "x_min", x_min)
        object.__setattr__(self, "x_max", x_max)
        object.__setattr__(self, "n_points", int(n))

    @property
    def spacing(self):
        return (self.x_max - self.x_min) / (self.n_points - 1)

    @cached_property
    def points(self):
        # offsets from the midpoint keep symmetric grids exactly symmetric
        half = (self.n_points - 1) // 2
        centre = 0.5 * (self.x_min + self.x_max)
        return frozen(centre + np.arange(-half, half + 1) * self.spacing)

    @cached_property
    def weights(self):
        """Composite Simpson weights, ``h/3 * [1, 4, 2, 4, ..., 2, 4, 1]``."""
        w = np.full(self.n_points, 2.0)
        w[1::2] = 4.0
        w[0] = w[-1] = 1.0
        return frozen(w * (self.spacing / 3.0))

    def is_symmetric(self):
        return self.x_min == -self.x_max


def make_grid(x_min, x_max, n_points):
    return Grid(x_min, x_max, n_points)


def default_grid():
    """``[-12, 12]`` with 4801 points (spacing 0.005); ample for unit-scale Gaussians."""
    return Grid(-12.0, 12.0, 4801)


def integrate(grid, samples):
    """Composite Simpson approximation of the integral of ``samples`` over ``grid``."""
    arr = check_samples(samples, grid.n_points)
    return float(np.dot(grid.weights, arr))


def _check_grid(grid):
    if not isinstance(grid, Grid):
        raise InvalidArgumentError(f"expected a Grid, got {type(grid).__name__}")


@dataclass(frozen=True, eq=False)
class WaveVector:
    """Real wavefunction samples with unit L2 norm on ``grid``."""

    grid: Grid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        _check_grid(self.grid)
        vals = check_samples(self.values, self.grid.n_points, "values")
        norm = float(np.dot(self.grid.weights, vals * vals))
        if abs(norm - 1.0) > NORM_TOL:
            raise InvalidStateError(f"wavefunction norm is {norm!r}, expected 1")
        object.__setattr__(self, "values", frozen(vals))

    def __neg__(self):
        return WaveVector(self.grid, -self.values)


@dataclass(frozen=True, eq=False)
class DensityVector:
    """Nonnegative density samples integrating to one on ``grid``."""

    grid: Grid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        _check_grid(self.grid)
        vals = check_samples(self.values, self.grid.n_points, "values")
        if np.any(vals < 0):
            raise InvalidStateError("density has negative samples")
        mass = float(np.dot(self.grid.weights, vals))
        if abs(mass - 1.0) > NORM_TOL:
            raise InvalidStateError(f"density integrates to {mass!r}, expected 1")
        object.__setattr__(self, "values", frozen(vals))


def density_from_wavefunction(psi):
    """Pointwise square ``|psi|**2`` of a normalized wavefunction."""
    if not isinstance(psi, WaveVector):
        raise InvalidArgumentError(f"expected a WaveVector, got {type(psi).__name__}")
    norm = float(np.dot(psi.grid.weights, psi.values**2))
    if abs(norm - 1.0) > NORM_TOL:
        raise InvalidStateError(f"wavefunction norm is {norm!r}, expected 1")
    return DensityVector(psi.grid, psi.values**2)


def renormalize(samples, grid):
    """Scale nonnegative ``samples`` so they integrate to one on ``grid``."""
    _check_grid(grid)
    arr = check_samples(samples, grid.n_points)
    if np.any(arr < 0):
        raise InvalidArgumentError("samples must be nonnegative")
    mass = float(np.dot(grid.weights, arr))
    if not mass > 0:
        raise DegenerateInputError("samples carry no mass")
    return DensityVector(grid, arr / mass)
