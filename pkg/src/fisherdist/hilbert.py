"""Distances between real wavefunctions built from their L2 overlap."""

import logging
import math

import numpy as np

from .exceptions import InvalidArgumentError
from .grid import WaveVector

logger = logging.getLogger(__name__)

OVERLAP_TOL = 1e-12


def _shared_grid(psi1, psi2):
    for psi in (psi1, psi2):
        if not isinstance(psi, WaveVector):
            raise InvalidArgumentError(f"expected a WaveVector, got {type(psi).__name__}")
    if psi1.grid != psi2.grid:
        raise InvalidArgumentError(f"wavefunctions live on different grids: {psi1.grid} vs {psi2.grid}")
    return psi1.grid


def raw_overlap(psi1, psi2):
    grid = _shared_grid(psi1, psi2)
    return float(np.dot(grid.weights, psi1.values * psi2.values))


def overlap(psi1, psi2):
    """``<psi1|psi2>`` clamped into ``[-1, 1]``."""
    raw = raw_overlap(psi1, psi2)
    if abs(raw) > 1.0:
        if abs(raw) > 1.0 + OVERLAP_TOL:
            logger.warning("overlap %r exceeds unit modulus beyond tolerance", raw)
        else:
            logger.debug("clamping overlap %r", raw)
    return min(1.0, max(-1.0, raw))


def euclidean_sq(psi1, psi2):
    """``∫ (psi2 - psi1)^2 dx``; equals ``2 (1 - <psi1|psi2>)`` for normalized inputs."""
    grid = _shared_grid(psi1, psi2)
    diff = psi2.values - psi1.values
    return float(np.dot(grid.weights, diff * diff))


def wootters(psi1, psi2):
    """Squared angle between the rays, ``arccos(<psi1|psi2>)^2``."""
    return math.acos(overlap(psi1, psi2)) ** 2


def fubini_study(psi1, psi2):
    """``1 - <psi1|psi2>^2``; blind to a global sign."""
    ov = overlap(psi1, psi2)
    return (1.0 - ov) * (1.0 + ov)
