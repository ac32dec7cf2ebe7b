import pytest

from saddle_dynamics.analysis import gad_tracking_check, index1_prefix, lyapunov_check
from saddle_dynamics.config import IntegratorConfig
from saddle_dynamics.flows import integrate


def test_lyapunov_decay_on_double_well(double_well_2d):
    traj = integrate(double_well_2d, "isd", [0.3, 0.2])
    report = lyapunov_check(traj)
    assert report.passed
    assert report.monotone
    assert not report.partial
    assert report.n_samples == traj.n_samples
    assert report.measured_rate >= 0.95 * report.bound_rate


def test_lyapunov_rate_is_sharp_on_quadratic(quadratic_saddle):
    traj = integrate(quadratic_saddle, "isd", [1.0, 1.0])
    report = lyapunov_check(traj)
    assert report.passed
    assert report.bound_rate == pytest.approx(2.0)
    assert report.measured_rate == pytest.approx(report.bound_rate, rel=0.02)


def test_lyapunov_needs_enough_samples(double_well_2d):
    traj = integrate(double_well_2d, "isd", [0.3, 0.2], IntegratorConfig(method="rk4", dt=0.1, t_max=0.3))
    report = lyapunov_check(traj)
    assert not report.passed
    assert report.n_samples == 4


def test_index1_prefix_stops_at_first_exit(double_well_2d):
    traj = integrate(double_well_2d, "grad", [0.3, 0.2])
    n = index1_prefix(traj)
    assert 0 < n < traj.n_samples
    assert traj.lambda1[n] >= 0
    assert lyapunov_check(traj).partial


def test_gad_tracking(double_well_2d):
    traj = integrate(double_well_2d, "gad", [0.3, 0.2], IntegratorConfig(eps=0.05))
    assert gad_tracking_check(traj) < 0.1
    with pytest.raises(ValueError, match="GAD trajectory"):
        gad_tracking_check(integrate(double_well_2d, "isd", [0.3, 0.2], IntegratorConfig(t_max=0.1)))


def test_gad_tracking_error_shrinks_with_eps(coercive_quartic):
    errors = [
        gad_tracking_check(integrate(coercive_quartic, "gad", [0.3, -0.6], IntegratorConfig(t_max=0.2, eps=eps)))
        for eps in (0.1, 0.05, 0.025)
    ]
    assert errors[0] > 1e-6
    assert errors[0] > errors[1] > errors[2]
