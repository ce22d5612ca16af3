"""Small input-validation helpers shared across modules."""

import math
import numbers

import numpy as np

from .exceptions import InvalidArgumentError


def check_finite_scalar(value, name):
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise InvalidArgumentError(f"{name} must be a real number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise InvalidArgumentError(f"{name} must be finite, got {value!r}")
    return value


def check_positive(value, name):
    value = check_finite_scalar(value, name)
    if value <= 0:
        raise InvalidArgumentError(f"{name} must be positive, got {value!r}")
    return value


def check_open_unit(value, name):
    value = check_finite_scalar(value, name)
    if not 0.0 < value < 1.0:
        raise InvalidArgumentError(f"{name} must lie strictly inside (0, 1), got {value!r}")
    return value


def check_samples(samples, n_points, name="samples"):
    """Return ``samples`` as a finite 1-D float array of length ``n_points``."""
    arr = np.asarray(samples, dtype=float)
    if arr.ndim != 1:
        raise InvalidArgumentError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.shape[0] != n_points:
        raise InvalidArgumentError(
            f"{name} has length {arr.shape[0]}, grid has {n_points} points"
        )
    if not np.all(np.isfinite(arr)):
        raise InvalidArgumentError(f"{name} contains non-finite values")
    return arr


def frozen(arr):
    """Read-only copy of ``arr``."""
    out = np.array(arr, dtype=float, copy=True)
    out.flags.writeable = False
    return out
