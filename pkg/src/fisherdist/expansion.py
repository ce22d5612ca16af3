"""Sweep small parameter offsets and fit each distance to ``c * dalpha^2 * I(alpha)``.

The two estimators follow the scikit-learn conventions so they can be cloned,
grid-searched or chained in a :class:`~sklearn.pipeline.Pipeline`:

* :class:`DistanceSweep` is a transformer. ``fit`` evaluates the reference
  state ``psi(alpha)``; ``transform`` maps a column of offsets ``dalpha`` to
  the seven distances between ``psi(alpha)`` and ``psi(alpha + dalpha)``.
* :class:`ProportionalityRegressor` regresses one distance column on the
  offsets, recovering the leading coefficient and the convergence order.
"""

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted, column_or_1d

from . import divergences as dv
from . import hilbert
from ._validation import check_finite_scalar, check_positive
from .divergences import EQUAL_WEIGHTS, WeightPair
from .exceptions import DegenerateFitError, InsufficientDataError, InvalidArgumentError
from .families import FamilySpec, FisherValue, analytic_fisher, evaluate_wavefunction, fisher_information
from .grid import Grid, default_grid, density_from_wavefunction

MEASURES = ("K_S", "J0", "J1", "JSD_weighted", "euclidean_sq", "wootters", "fubini_study")
DENSITY_MEASURES = MEASURES[:4]

NOISE_FLOOR = 1e-12
MIN_LADDER_POINTS = 4


def predicted_constant(measure, weights=EQUAL_WEIGHTS):
    """Leading-order constant ``c`` in ``D = c * dalpha^2 * I``."""
    if measure == "K_S":
        return 1.0
    if measure == "J0":
        return 0.125
    if measure == "JSD_weighted":
        return 0.5 * weights.pi1 * weights.pi2
    if measure in ("J1", "euclidean_sq", "wootters", "fubini_study"):
        return 0.25
    raise InvalidArgumentError(f"unknown measure {measure!r}")


@dataclass(frozen=True)
class LadderSpec:
    """Geometric ladder ``delta_max, delta_max / ratio, ...`` down to ``delta_min``."""

    delta_max: float = 1e-1
    delta_min: float = 1e-3
    ratio: float = 10.0**0.25
    include_negatives: bool = False

    def __post_init__(self):
        dmax = check_positive(self.delta_max, "delta_max")
        dmin = check_positive(self.delta_min, "delta_min")
        ratio = check_finite_scalar(self.ratio, "ratio")
        if not dmin < dmax:
            raise InvalidArgumentError(f"need delta_min < delta_max, got {dmin} >= {dmax}")
        if not ratio > 1:
            raise InvalidArgumentError(f"ratio must exceed 1, got {ratio}")
        object.__setattr__(self, "delta_max", dmax)
        object.__setattr__(self, "delta_min", dmin)
        object.__setattr__(self, "ratio", ratio)
        object.__setattr__(self, "include_negatives", bool(self.include_negatives))
        if len(self) < MIN_LADDER_POINTS:
            raise InvalidArgumentError(
                f"ladder has {len(self)} points, need at least {MIN_LADDER_POINTS}"
            )

    def __len__(self):
        steps = math.log(self.delta_max / self.delta_min) / math.log(self.ratio)
        # tolerate rounding when delta_min sits exactly on the ladder
        return int(math.floor(steps + 1e-9)) + 1

    def deltas(self):
        """Positive offsets in decreasing order, followed by their negatives if requested."""
        pos = self.delta_max / self.ratio ** np.arange(len(self))
        if self.include_negatives:
            return np.concatenate([pos, -pos])
        return pos


@dataclass(frozen=True)
class DistanceRecord:
    delta_alpha: float
    measure: str
    value: float
    raw_value: float = field(default=None, compare=False)
    weights: Optional[WeightPair] = None

    def __post_init__(self):
        if self.raw_value is None:
            object.__setattr__(self, "raw_value", self.value)


@dataclass(frozen=True)
class CoefficientFit:
    measure: str
    c_hat: float
    predicted_c: float
    convergence_order: float
    residual: float


def _pair_distances(psi1, rho1, psi2, weights):
    """Raw (unclamped) values of all seven measures, in ``MEASURES`` order."""
    rho2 = density_from_wavefunction(psi2)
    return np.array(
        [
            dv.symmetrized_kl(rho1, rho2, return_raw=True)[1],
            dv.j0(rho1, rho2, return_raw=True)[1],
            dv.j1(rho1, rho2, return_raw=True)[1],
            dv.jsd_weighted(rho1, rho2, weights, return_raw=True)[1],
            hilbert.euclidean_sq(psi1, psi2),
            hilbert.wootters(psi1, psi2),
            hilbert.fubini_study(psi1, psi2),
        ]
    )


class DistanceSweep(TransformerMixin, BaseEstimator):
    """Distances between ``psi(alpha)`` and ``psi(alpha + dalpha)`` for a column of offsets.

    Parameters
    ----------
    family : FamilySpec, default=None
        Wavefunction family; ``None`` means a unit-width Gaussian location family.
    alpha : float, default=0.0
        Reference parameter value.
    weights : WeightPair, default=None
        Weights of the weighted Jensen-Shannon column; ``None`` means (1/2, 1/2).
    grid : Grid, default=None
        Quadrature grid; ``None`` means ``[-12, 12]`` with 4801 points.

    Attributes
    ----------
    reference_ : WaveVector
        ``psi(alpha)`` on the grid.
    raw_ : ndarray of shape (n_samples, 7)
        Unclamped values from the last call to :meth:`transform`.
    """

    def __init__(self, family=None, alpha=0.0, weights=None, grid=None):
        self.family = family
        self.alpha = alpha
        self.weights = weights
        self.grid = grid

    def _resolved(self):
        family = FamilySpec() if self.family is None else self.family
        weights = EQUAL_WEIGHTS if self.weights is None else self.weights
        grid = default_grid() if self.grid is None else self.grid
        if not isinstance(family, FamilySpec):
            raise InvalidArgumentError(f"family must be a FamilySpec, got {type(family).__name__}")
        if not isinstance(weights, WeightPair):
            raise InvalidArgumentError(f"weights must be a WeightPair, got {type(weights).__name__}")
        if not isinstance(grid, Grid):
            raise InvalidArgumentError(f"grid must be a Grid, got {type(grid).__name__}")
        return family, weights, grid

    def fit(self, X=None, y=None):
        family, weights, grid = self._resolved()
        self.family_, self.weights_, self.grid_ = family, weights, grid
        self.alpha_ = family.check_alpha(self.alpha)
        self.reference_ = evaluate_wavefunction(family, self.alpha_, grid)
        self.reference_density_ = density_from_wavefunction(self.reference_)
        self.n_features_in_ = 1
        return self

    def transform(self, X):
        check_is_fitted(self, "reference_")
        deltas = check_array(X, ensure_2d=True, dtype=float)
        if deltas.shape[1] != 1:
            raise InvalidArgumentError(f"expected a single column of offsets, got {deltas.shape[1]}")
        raw = np.empty((deltas.shape[0], len(MEASURES)))
        for i, d in enumerate(deltas[:, 0]):
            psi2 = evaluate_wavefunction(self.family_, self.alpha_ + d, self.grid_)
            raw[i] = _pair_distances(self.reference_, self.reference_density_, psi2, self.weights_)
        self.raw_ = raw
        return np.maximum(raw, 0.0)

    def get_feature_names_out(self, input_features=None):
        return np.asarray(MEASURES, dtype=object)

    def records(self, deltas):
        """Transform ``deltas`` and unpack into one :class:`DistanceRecord` per (offset, measure)."""
        deltas = np.asarray(deltas, dtype=float).reshape(-1)
        values = self.transform(deltas.reshape(-1, 1))
        out = []
        for i, d in enumerate(deltas):
            for j, m in enumerate(MEASURES):
                out.append(
                    DistanceRecord(
                        delta_alpha=float(d),
                        measure=m,
                        value=float(values[i, j]),
                        raw_value=float(self.raw_[i, j]),
                        weights=self.weights_ if m == "JSD_weighted" else None,
                    )
                )
        return out


class ProportionalityRegressor(RegressorMixin, BaseEstimator):
    """Fit ``y = c * I * dalpha^2`` and the log-log slope of ``y`` against ``|dalpha|``.

    ``c`` is read off at the smallest offset whose value exceeds ``noise_floor``
    instead of being a joint least-squares estimate: higher-order terms
    vanish fastest there.

    Parameters
    ----------
    fisher : float, default=1.0
        Fisher information at the reference parameter.
    noise_floor : float, default=1e-12
        Values at or below this are treated as quadrature noise and ignored.

    Attributes
    ----------
    coef_ : float
        Estimated coefficient ``c``.
    convergence_order_ : float
        Least-squares slope of ``log y`` against ``log |dalpha|``.
    intercept_ : float
        Intercept of that log-log fit.
    delta_used_ : float
        Offset at which ``coef_`` was evaluated.
    """

    def __init__(self, fisher=1.0, noise_floor=NOISE_FLOOR):
        self.fisher = fisher
        self.noise_floor = noise_floor

    def fit(self, X, y):
        fisher = check_positive(self.fisher, "fisher")
        X = check_array(X, dtype=float)
        y = column_or_1d(np.asarray(y, dtype=float))
        if X.shape[0] != y.shape[0]:
            raise InvalidArgumentError(f"X has {X.shape[0]} rows but y has {y.shape[0]}")
        if X.shape[0] < MIN_LADDER_POINTS:
            raise InsufficientDataError(
                f"need at least {MIN_LADDER_POINTS} ladder points, got {X.shape[0]}"
            )
        ad = np.abs(X[:, 0])
        usable = (ad > 0) & (y > self.noise_floor)
        if not np.any(y > 0):
            raise DegenerateFitError("no positive values to fit")
        if np.unique(ad[usable]).size < 2:
            raise DegenerateFitError("fewer than two distinct offsets above the noise floor")
        slope, intercept = np.polyfit(np.log(ad[usable]), np.log(y[usable]), 1)
        smallest = ad[usable].min()
        at_min = usable & (ad == smallest)
        self.coef_ = float(np.mean(y[at_min]) / (smallest**2 * fisher))
        self.convergence_order_ = float(slope)
        self.intercept_ = float(intercept)
        self.delta_used_ = float(smallest)
        self.n_features_in_ = X.shape[1]
        return self

    def predict(self, X):
        check_is_fitted(self, "coef_")
        X = check_array(X, dtype=float)
        return self.coef_ * self.fisher * X[:, 0] ** 2


def sweep_distances(family, alpha, ladder, weights=EQUAL_WEIGHTS, grid=None):
    """One :class:`DistanceRecord` per ladder offset and measure.

    ``ladder`` is a :class:`LadderSpec` or an explicit sequence of offsets.
    """
    deltas = ladder.deltas() if isinstance(ladder, LadderSpec) else np.asarray(ladder, dtype=float)
    sweep = DistanceSweep(family=family, alpha=alpha, weights=weights, grid=grid).fit()
    return sweep.records(deltas)


def fit_coefficient(records, fisher):
    """Coefficient fit for records of a single measure."""
    if not records:
        raise InsufficientDataError("no records to fit")
    measures = {r.measure for r in records}
    if len(measures) != 1:
        raise InvalidArgumentError(f"records mix several measures: {sorted(measures)}")
    measure = measures.pop()
    weights = records[0].weights or EQUAL_WEIGHTS
    fisher_value = fisher.value if isinstance(fisher, FisherValue) else fisher
    X = np.array([[r.delta_alpha] for r in records])
    y = np.array([r.value for r in records])
    reg = ProportionalityRegressor(fisher=fisher_value).fit(X, y)
    predicted = predicted_constant(measure, weights)
    return CoefficientFit(
        measure=measure,
        c_hat=reg.coef_,
        predicted_c=predicted,
        convergence_order=reg.convergence_order_,
        residual=abs(reg.coef_ - predicted) / predicted,
    )


def first_order_asymmetry(records):
    """``|D(+d) - D(-d)| / max(D(+d), D(-d))`` for each offset, largest offset first.

    Returns ``(offsets, ratios)``. ``records`` must hold a single measure.
    """
    measures = {r.measure for r in records}
    if len(measures) != 1:
        raise InvalidArgumentError(f"records must hold exactly one measure, got {sorted(measures)}")
    by_delta = {r.delta_alpha: r.value for r in records}
    positive = sorted((d for d in by_delta if d > 0), reverse=True)
    unmatched = [d for d in by_delta if d != 0 and -d not in by_delta]
    if unmatched or not positive:
        raise InvalidArgumentError(f"offsets without a mirrored partner: {sorted(unmatched)}")
    ratios = []
    for d in positive:
        plus, minus = by_delta[d], by_delta[-d]
        top = max(plus, minus)
        ratios.append(abs(plus - minus) / top if top > 0 else 0.0)
    return np.array(positive), np.array(ratios)


def first_order_stability(records):
    """Largest relative mismatch between ``D(+d)`` and ``D(-d)`` over the ladder."""
    return float(first_order_asymmetry(records)[1].max())


def resolve_fisher(family, alpha, grid):
    fisher = analytic_fisher(family, alpha)
    return fisher if fisher is not None else fisher_information(family, alpha, grid)


def coefficient_report(family, alpha, ladder=None, weights=EQUAL_WEIGHTS, grid=None):
    """One :class:`CoefficientFit` per measure, in ``MEASURES`` order."""
    ladder = LadderSpec() if ladder is None else ladder
    grid = default_grid() if grid is None else grid
    records = sweep_distances(family, alpha, ladder, weights, grid)
    fisher = resolve_fisher(family, alpha, grid)
    return [fit_coefficient([r for r in records if r.measure == m], fisher) for m in MEASURES]
