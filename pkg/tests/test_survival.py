import math

import numpy as np
import pytest

from meanfield.survival import (
    ModelParams,
    SurvivalGrid,
    evaluate,
    from_function,
    grid_nodes,
    kernel_integral,
    sup_distance,
)
from oracles import quad_kernel


def test_model_params_validation():
    ModelParams(d=1.0, theta=0.5)
    with pytest.raises(ValueError):
        ModelParams(d=0.5, theta=1.0)
    with pytest.raises(ValueError):
        ModelParams(d=1.0, theta=0.0)
    with pytest.raises(ValueError):
        ModelParams(d=math.nan, theta=1.0)


def test_grid_shape_validation():
    vals = np.linspace(1.0, 0.0, 5)
    SurvivalGrid(0.0, 1.0, 0.25, vals)
    with pytest.raises(ValueError):
        SurvivalGrid(0.0, 1.0, 0.25, vals[:-1])
    with pytest.raises(ValueError):
        SurvivalGrid(0.0, 1.0, -0.25, vals)
    with pytest.raises(ValueError):
        SurvivalGrid(0.0, 1.0, 0.3, np.linspace(1, 0, 4))


def test_grid_monotone_and_range_validation():
    with pytest.raises(ValueError):
        SurvivalGrid(0.0, 1.0, 0.25, np.array([1.0, 0.2, 0.5, 0.1, 0.0]))
    with pytest.raises(ValueError):
        SurvivalGrid(0.0, 1.0, 0.25, np.array([1.5, 1.0, 0.5, 0.2, 0.0]))
    with pytest.raises(ValueError):
        SurvivalGrid(0.0, 1.0, 0.25, np.linspace(0.5, -0.5, 5))


def test_grid_repairs_float_noise():
    eps = 1e-13
    g = SurvivalGrid(0.0, 1.0, 0.25, np.array([1 + eps, 0.5, 0.5 + eps / 2, 0.1, -eps]))
    assert g.values[0] == 1.0
    assert g.values[-1] == 0.0
    assert np.all(np.diff(g.values) <= 0)


def test_grid_values_read_only():
    g = SurvivalGrid(0.0, 1.0, 0.5, np.array([1.0, 0.5, 0.0]))
    with pytest.raises(ValueError):
        g.values[0] = 0.7


def test_grid_nodes_endpoints():
    g = SurvivalGrid(-1.5, 1.5, 0.25, np.linspace(1, 0, 13))
    nodes = grid_nodes(g)
    assert nodes[0] == -1.5
    assert nodes[-1] == pytest.approx(1.5, abs=1e-15)
    assert len(nodes) == 13


def test_evaluate_interpolation_and_conventions():
    g = from_function(lambda x: np.clip(1 - x, 0, 1), 0.0, 1.0, 0.125)
    assert evaluate(g, 0.5) == pytest.approx(0.5, abs=1e-15)
    assert evaluate(g, 0.3125) == pytest.approx(0.6875, abs=1e-15)
    assert evaluate(g, -5.0) == 1.0
    assert evaluate(g, 5.0) == 0.0
    arr = evaluate(g, np.array([-1.0, 0.25, 2.0]))
    assert arr.tolist() == [1.0, 0.75, 0.0]


def test_sup_distance_requires_matching_grids():
    a = from_function(lambda x: np.exp(-x), 0.0, 1.0, 0.25)
    b = from_function(lambda x: np.exp(-2 * x), 0.0, 1.0, 0.25)
    c = from_function(lambda x: np.exp(-x), 0.0, 2.0, 0.25)
    assert sup_distance(a, a) == 0.0
    assert sup_distance(a, b) == pytest.approx(
        float(np.abs(a.values - b.values).max()), abs=1e-16
    )
    with pytest.raises(ValueError):
        sup_distance(a, c)


@pytest.mark.parametrize("d", [1.0, 1.5, 2.0, 3.0])
@pytest.mark.parametrize("x", [-0.9, -0.2, 0.0, 0.4, 1.3])
def test_kernel_integral_matches_quadrature(d, x):
    g = from_function(lambda t: 1.0 / (1.0 + np.exp(3 * t)), -1.0, 1.0, 0.05)
    got = kernel_integral(g, x, d, 2.0)
    want = quad_kernel(
        lambda t: evaluate(g, t), x, d, 2.0, g.lo, g.hi, nodes=grid_nodes(g)
    )
    assert got == pytest.approx(want, abs=5e-11)


def test_kernel_integral_exact_on_piecewise_linear():
    # hand case: F = 1 - t on [0, 1], d = 1, x = 0, upper = 1:
    # int_0^1 (1 - l) dl = 1/2 with no quadrature error
    g = from_function(lambda t: np.clip(1 - t, 0, 1), 0.0, 1.0, 0.25)
    assert kernel_integral(g, 0.0, 1.0, 1.0) == pytest.approx(0.5, abs=1e-15)
    # d = 2, same F: 2 int_0^1 l (1 - l) dl = 1/3
    assert kernel_integral(g, 0.0, 2.0, 1.0) == pytest.approx(1 / 3, abs=1e-15)


def test_kernel_integral_rejects_negative_upper():
    g = from_function(lambda t: np.exp(-t), 0.0, 1.0, 0.25)
    with pytest.raises(ValueError):
        kernel_integral(g, 0.0, 1.0, -1.0)
    assert kernel_integral(g, 0.0, 1.0, 0.0) == 0.0
