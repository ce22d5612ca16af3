import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import simpson

from conftest import normal_pdf
from fisherdist.exceptions import DegenerateInputError, InvalidArgumentError, InvalidStateError
from fisherdist.grid import (
    DensityVector,
    Grid,
    WaveVector,
    default_grid,
    density_from_wavefunction,
    integrate,
    make_grid,
    renormalize,
)

finite = st.floats(-5, 5, allow_nan=False, allow_infinity=False)


def test_make_grid_spacing():
    assert make_grid(-1, 1, 5).spacing == 0.5
    g = make_grid(-12, 12, 4801)
    assert g.spacing == 0.005
    assert g.points[0] == -12.0 and g.points[-1] == 12.0
    assert default_grid() == g


@pytest.mark.parametrize("args", [(0, 10, 4), (0, 1, 1), (0, 1, 2), (1, 0, 5), (0, 0, 5),
                                  (float("nan"), 1, 5), (0, float("inf"), 5), (0, 1, 5.0)])
def test_make_grid_rejects(args):
    with pytest.raises(InvalidArgumentError):
        make_grid(*args)


def test_symmetric_grid_points_mirror_exactly():
    g = Grid(-3.0, 3.0, 601)
    np.testing.assert_array_equal(g.points, -g.points[::-1])


def test_integrate_constant_is_exact():
    for n in (3, 5, 11, 101):
        g = Grid(0.0, 1.0, n)
        assert integrate(g, np.ones(n)) == pytest.approx(1.0, abs=1e-15)


def test_integrate_x_squared():
    g = Grid(0.0, 1.0, 101)
    assert abs(integrate(g, g.points**2) - 1.0 / 3.0) < 1e-12


def test_integrate_standard_normal():
    g = Grid(-12.0, 12.0, 4801)
    oracle = math.erf(12.0 / math.sqrt(2.0))
    assert abs(integrate(g, normal_pdf(g.points)) - oracle) < 1e-10


def test_integrate_matches_scipy_simpson():
    g = Grid(-2.0, 3.0, 41)
    f = np.sin(g.points) * np.exp(-g.points)
    assert integrate(g, f) == pytest.approx(simpson(f, x=g.points), rel=1e-13)


def test_integrate_length_mismatch():
    with pytest.raises(InvalidArgumentError):
        integrate(Grid(0, 1, 5), np.ones(4))
    with pytest.raises(InvalidArgumentError):
        integrate(Grid(0, 1, 5), [1, 1, np.nan, 1, 1])


@settings(max_examples=60, deadline=None)
@given(a=finite, b=finite, seed=st.integers(0, 2**32 - 1))
def test_integrate_is_linear(a, b, seed):
    rng = np.random.default_rng(seed)
    g = Grid(-1.0, 2.0, 21)
    f, h = rng.normal(size=(2, g.n_points))
    lhs = integrate(g, a * f + b * h)
    rhs = a * integrate(g, f) + b * integrate(g, h)
    assert abs(lhs - rhs) < 1e-12


@settings(max_examples=60, deadline=None)
@given(
    coeffs=st.lists(finite, min_size=4, max_size=4),
    lo=st.floats(-10, 10),
    width=st.floats(0.1, 10),
    half=st.integers(1, 50),
)
def test_integrate_exact_on_cubics(coeffs, lo, width, half):
    g = Grid(lo, lo + width, 2 * half + 1)
    c0, c1, c2, c3 = coeffs
    f = c0 + c1 * g.points + c2 * g.points**2 + c3 * g.points**3

    def antideriv(x):
        return c0 * x + c1 * x**2 / 2 + c2 * x**3 / 3 + c3 * x**4 / 4

    exact = antideriv(g.x_max) - antideriv(g.x_min)
    scale = max(1.0, abs(exact), sum(abs(c) for c in coeffs) * max(abs(lo), abs(lo + width), 1.0) ** 4)
    assert abs(integrate(g, f) - exact) <= 1e-12 * scale


def test_simpson_fourth_order_convergence():
    # exp(-x^2) on [0, 1]: non-periodic, so the error is genuinely O(h^4)
    exact = math.sqrt(math.pi) / 2.0 * math.erf(1.0)
    errors = []
    for intervals in (8, 16, 32, 64):
        g = Grid(0.0, 1.0, intervals + 1)
        errors.append(abs(integrate(g, np.exp(-g.points**2)) - exact))
    for coarse, fine in zip(errors, errors[1:]):
        assert coarse / fine >= 8.0


def test_wavevector_requires_unit_norm():
    g = Grid(0.0, 2.0, 5)
    with pytest.raises(InvalidStateError):
        WaveVector(g, np.ones(5))
    with pytest.raises(InvalidArgumentError):
        WaveVector(g, np.ones(4))


def test_vectors_are_read_only():
    g = Grid(0.0, 2.0, 5)
    psi = WaveVector(g, np.full(5, 1 / math.sqrt(2)))
    with pytest.raises(ValueError):
        psi.values[0] = 0.0


def test_density_from_flat_wavefunction():
    g = Grid(0.0, 2.0, 5)
    rho = density_from_wavefunction(WaveVector(g, np.full(5, 1 / math.sqrt(2))))
    np.testing.assert_allclose(rho.values, 0.5, rtol=0, atol=1e-15)


def test_density_from_gaussian_wavefunction(grid):
    x = grid.points
    psi_vals = (2 * math.pi) ** -0.25 * np.exp(-(x**2) / 4)
    psi = WaveVector(grid, psi_vals / math.sqrt(integrate(grid, psi_vals**2)))
    rho = density_from_wavefunction(psi)
    np.testing.assert_allclose(rho.values, normal_pdf(x), rtol=0, atol=1e-12)
    np.testing.assert_array_equal(density_from_wavefunction(-psi).values, rho.values)


def test_density_from_wavefunction_type_check():
    with pytest.raises(InvalidArgumentError):
        density_from_wavefunction(np.ones(5))


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_density_from_any_wavevector_integrates_to_one(seed):
    rng = np.random.default_rng(seed)
    g = Grid(-1.0, 1.0, 31)
    raw = rng.normal(size=g.n_points)
    psi = WaveVector(g, raw / math.sqrt(integrate(g, raw**2)))
    assert abs(integrate(g, density_from_wavefunction(psi).values) - 1.0) < 1e-9


def test_renormalize_constant():
    g = Grid(0.0, 1.0, 11)
    rho = renormalize(np.full(11, 2.0), g)
    np.testing.assert_allclose(rho.values, 1.0, rtol=0, atol=1e-15)


def test_renormalize_rejects_zero_and_negative():
    g = Grid(0.0, 1.0, 11)
    with pytest.raises(DegenerateInputError):
        renormalize(np.zeros(11), g)
    with pytest.raises(InvalidArgumentError):
        renormalize(np.r_[-1.0, np.ones(10)], g)


def test_renormalize_unnormalized_gaussian(grid):
    rho = renormalize(np.exp(-grid.points**2), grid)
    np.testing.assert_allclose(rho.values, normal_pdf(grid.points, 0.0, math.sqrt(0.5)), rtol=0, atol=1e-10)


def test_density_vector_invariants():
    g = Grid(0.0, 1.0, 5)
    with pytest.raises(InvalidStateError):
        DensityVector(g, np.full(5, 2.0))
    with pytest.raises(InvalidStateError):
        DensityVector(g, np.array([2.0, -1.0, 1.0, 1.0, 1.0]))
