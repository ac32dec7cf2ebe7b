import math

import numpy as np
import pytest

from saddle_dynamics.errors import InvalidModelError
from saddle_dynamics.landscape import evaluate, from_energy, make_model


def test_double_well_1d(double_well_1d):
    assert double_well_1d.energy([0.0]) == 1.0
    assert evaluate(double_well_1d, [0.5], 1) == pytest.approx([-1.5])
    assert evaluate(double_well_1d, [0.0], 2) == pytest.approx([[-4.0]])
    assert evaluate(double_well_1d, [1.0], 3) == pytest.approx([[[24.0]]])


def test_double_well_2d(double_well_2d):
    assert double_well_2d.gradient([0.5, 0.3]) == pytest.approx([-1.5, 1.2])
    np.testing.assert_allclose(double_well_2d.hessian([0.0, 0.0]), np.diag([-4.0, 4.0]))
    assert double_well_2d.dimension == 2
    assert double_well_2d.analytic


def test_coercive_quartic_singular_points(coercive_quartic):
    s1 = np.array([0.0, 1.0 / math.sqrt(2.0)])
    assert coercive_quartic.gradient(s1) == pytest.approx([-1.0, 1.0])
    np.testing.assert_allclose(coercive_quartic.hessian(s1), 4.0 * np.eye(2), atol=1e-12)
    np.testing.assert_allclose(coercive_quartic.hessian(-s1), 4.0 * np.eye(2), atol=1e-12)


def test_multi_de0_at_origin(rotated_cubic_3d):
    np.testing.assert_allclose(rotated_cubic_3d.gradient(np.zeros(3)), [-math.sqrt(0.5), math.sqrt(0.5), 0.0])
    np.testing.assert_allclose(rotated_cubic_3d.hessian(np.zeros(3)), np.diag([1.0, 1.0, 1.1]))
    T = rotated_cubic_3d.third(np.zeros(3))
    assert T[0, 0, 1] == T[1, 0, 0] == 1.0
    assert T[1, 1, 1] == 3.0
    assert T[2, 2, 2] == 6.0


def test_cubic_bump_energy():
    model = make_model({"variant": "CubicBump", "params": {"coeffs": [1.0, 1.0, 0.0, 0.0], "dimension": 3}})
    assert model.energy([1.0, 2.0, 3.0]) == 2.0 * 3.0 * 4.0
    assert model.gradient([1.0, 2.0, 3.0]) == pytest.approx([12.0, 8.0, 6.0])


def test_perturbed_adds_scaled_perturbation(double_well_2d):
    model = make_model(
        {
            "variant": "Perturbed",
            "params": {"base": {"variant": "DoubleWell2D"}, "delta": 0.5, "perturbation": {"variant": "Quadratic"}},
        }
    )
    x = np.array([0.2, -0.4])
    quadratic = make_model({"variant": "Quadratic"})
    assert model.energy(x) == pytest.approx(double_well_2d.energy(x) + 0.5 * quadratic.energy(x))
    np.testing.assert_allclose(model.hessian(x), double_well_2d.hessian(x) + 0.5 * quadratic.hessian(x))


@pytest.mark.parametrize("order", [-1, 4])
def test_evaluate_rejects_order(double_well_2d, order):
    with pytest.raises(ValueError, match="order"):
        evaluate(double_well_2d, [0.0, 0.0], order)


@pytest.mark.parametrize("x", [[0.0], [0.0, 0.0, 0.0], [np.nan, 0.0], [np.inf, 1.0]])
def test_evaluate_rejects_points(double_well_2d, x):
    with pytest.raises(InvalidModelError):
        evaluate(double_well_2d, x, 0)


def test_from_energy_matches_analytic(double_well_2d):
    model = from_energy(double_well_2d.energy, 2)
    x = np.array([0.4, -0.3])
    assert not model.analytic
    np.testing.assert_allclose(model.gradient(x), double_well_2d.gradient(x), atol=1e-8)
    np.testing.assert_allclose(model.hessian(x), double_well_2d.hessian(x), atol=1e-5)
    np.testing.assert_allclose(model.third(x), double_well_2d.third(x), atol=1e-2)
    np.testing.assert_array_equal(model.hessian(x), model.hessian(x).T)


@pytest.mark.parametrize("dimension, h", [(0, 1e-5), (2, 0.0), (2, -1e-5)])
def test_from_energy_rejects_invalid_input(dimension, h):
    with pytest.raises(InvalidModelError):
        from_energy(lambda x: float(np.sum(x**2)), dimension, h=h)
