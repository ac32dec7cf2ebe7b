import dataclasses

import numpy as np
import pytest

from saddle_dynamics.config import IntegratorConfig
from saddle_dynamics.errors import NonFiniteStateError
from saddle_dynamics.flows import integrate


def test_isd_converges_inside_unit_interval(double_well_1d):
    traj = integrate(double_well_1d, "isd", [0.5])
    assert traj.stop.tag == "ConvergedToSaddle"
    assert traj.stop.index == 1
    assert abs(traj.stop.x[0]) < 1e-8
    assert traj.stop.converged


def test_isd_leaves_domain_outside_unit_interval(double_well_1d):
    traj = integrate(double_well_1d, "isd", [1.5])
    assert traj.stop.tag == "DomainExit"
    assert abs(traj.stop.x[0]) > 10.0


def test_gradient_flow_finds_minimum(double_well_2d):
    traj = integrate(double_well_2d, "grad", [0.5, 0.3])
    assert traj.stop.tag == "ConvergedToCritical"
    assert traj.stop.index == 0
    np.testing.assert_allclose(traj.stop.x, [1.0, 0.0], atol=1e-8)


def test_isd_converges_to_double_well_saddle(double_well_2d):
    traj = integrate(double_well_2d, "isd", [0.3, 0.2])
    assert traj.stop.tag == "ConvergedToSaddle"
    np.testing.assert_allclose(traj.stop.x, [0.0, 0.0], atol=1e-8)
    assert np.all(traj.lambda1 < 0)
    assert np.all(np.diff(traj.t) > 0)


def test_gad_converges_to_double_well_saddle(double_well_2d):
    traj = integrate(double_well_2d, "gad", [0.3, 0.2], IntegratorConfig(eps=0.1))
    assert traj.stop.tag == "ConvergedToSaddle"
    np.testing.assert_allclose(traj.stop.x, [0.0, 0.0], atol=1e-8)
    np.testing.assert_allclose(np.linalg.norm(traj.v, axis=1), 1.0, atol=1e-12)


def test_isd_stops_at_attractive_singular_line(double_well_2d_attractive):
    traj = integrate(double_well_2d_attractive, "isd", [1.3, 0.05])
    assert traj.stop.tag == "SingularityApproach"
    assert traj.stop.x[0] == pytest.approx(np.sqrt(8.0 / 6.0), abs=1e-4)


def test_rk4_stops_exactly_at_max_time(double_well_2d):
    cfg = IntegratorConfig(method="rk4", dt=1e-2, t_max=1.0)
    traj = integrate(double_well_2d, "isd", [0.3, 0.2], cfg)
    assert traj.stop.tag == "MaxTime"
    assert traj.stop.t == 1.0
    assert traj.n_samples == 101


def test_gad_accepts_initial_orientation(double_well_2d):
    v0 = np.array([1.0, 1.0]) / np.sqrt(2.0)
    traj = integrate(double_well_2d, "gad", [0.3, 0.2], IntegratorConfig(t_max=0.5), v0=v0)
    np.testing.assert_allclose(traj.v[0], v0)
    assert traj.v_err[0] > 0.5
    assert traj.v_err[-1] < traj.v_err[0]


def test_gad_approaches_isd_as_eps_shrinks(coercive_quartic):
    # the lowest eigenvector turns along this path, so GAD lags behind ISD by O(eps^2)
    isd = integrate(coercive_quartic, "isd", [0.3, -0.6], IntegratorConfig(t_max=0.2))
    errors = []
    for eps in (0.1, 0.05):
        gad = integrate(coercive_quartic, "gad", [0.3, -0.6], IntegratorConfig(t_max=0.2, eps=eps))
        errors.append(np.linalg.norm(gad.sample_at(0.2) - isd.sample_at(0.2)))
    assert errors[1] < errors[0]
    assert errors[1] < 1e-2


def test_non_finite_state_raises(double_well_2d):
    broken = dataclasses.replace(double_well_2d, gradient_fn=lambda x: np.full(2, np.nan))
    with pytest.raises(NonFiniteStateError, match="non-finite"):
        integrate(broken, "grad", [0.3, 0.2])


def test_unknown_selector(double_well_2d):
    with pytest.raises(ValueError, match="Unknown dynamics"):
        integrate(double_well_2d, "newton", [0.3, 0.2])


def test_non_finite_initial_point(double_well_2d):
    with pytest.raises(ValueError, match="finite"):
        integrate(double_well_2d, "isd", [np.nan, 0.0])


def test_isd_blows_up_at_isolated_singularity_with_default_tolerances(isotropic_canonical):
    traj = integrate(isotropic_canonical, "isd", [0.1 * np.cos(0.3), 0.1 * np.sin(0.3)])
    assert traj.stop.tag == "BlowUp"
    assert traj.stop.singular
    assert np.linalg.norm(traj.stop.x) < 1e-5
    assert np.isfinite(traj.stop.t_star)
    assert traj.stop.gap < IntegratorConfig().tol_gap


def test_isd_path_does_not_depend_on_eigenvector_sign(coercive_quartic):
    cfg = IntegratorConfig(t_max=0.5)
    plus = integrate(coercive_quartic, "isd", [0.3, -0.6], cfg, v_prev=[1.0, 0.0])
    minus = integrate(coercive_quartic, "isd", [0.3, -0.6], cfg, v_prev=[-1.0, 0.0])
    np.testing.assert_array_equal(plus.t, minus.t)
    np.testing.assert_array_equal(plus.x, minus.x)
    np.testing.assert_array_equal(plus.v, -minus.v)
