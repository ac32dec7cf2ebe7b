import math

import numpy as np
import pytest

from saddle_dynamics.analysis import measure_cycle
from saddle_dynamics.landscape import make_model
from saddle_dynamics.reduced import predicted_radius
from saddle_dynamics.singularity import locate_nd

from fixtures.general_fixtures import ROTATED_CUBIC_SPEC, ROTATED_WIDE_GAP_SPEC


@pytest.mark.slow
def test_gad_orbit_radius_near_isotropic_singularity(isotropic_canonical):
    m = measure_cycle(isotropic_canonical, [0.0, 0.0], eps=0.01)
    assert m.predicted == pytest.approx(predicted_radius(math.pi / 4, 0.01))
    assert m.predicted == pytest.approx(0.008409, abs=1e-6)
    assert m.r_mean == pytest.approx(m.predicted, rel=0.1)
    assert m.width < 5 * 0.01**2


@pytest.mark.slow
def test_orbit_width_scales_with_eps_squared(isotropic_canonical):
    ratios = [measure_cycle(isotropic_canonical, [0.0, 0.0], eps=eps).width / eps**2 for eps in (0.02, 0.01, 0.005)]
    assert max(ratios) < 5.0
    assert max(ratios) / min(ratios) < 1.25


def _orbit_under_perturbation(base: dict, delta: float):
    model = make_model({"variant": "Perturbed", "params": {"base": base, "delta": delta}})
    report = locate_nd(model, np.zeros(3))
    assert report.residual < 1e-10
    if delta > 0:
        assert np.linalg.norm(report.z) / delta < 10.0
    else:
        np.testing.assert_allclose(report.z, 0.0, atol=1e-12)
    return measure_cycle(model, report.z, eps=0.05, delta=delta, restarts=2)


@pytest.mark.slow
@pytest.mark.parametrize("delta", [0.0, 0.01])
def test_rotated_model_orbit_persists(delta):
    m = _orbit_under_perturbation(ROTATED_CUBIC_SPEC, delta)
    if delta == 0:
        assert m.reduced_alpha == pytest.approx(math.pi / 4, abs=1e-8)
    assert m.deviation_ratio <= 20.0
    assert m.xc_max < m.predicted


@pytest.mark.slow
def test_orbit_persists_across_perturbation_sweep():
    deltas = (0.0, 0.02, 0.05)
    measurements = [_orbit_under_perturbation(ROTATED_WIDE_GAP_SPEC, delta) for delta in deltas]
    assert measurements[0].reduced_alpha == pytest.approx(math.pi / 4, abs=1e-8)
    # one constant C bounds |r_mean - predicted| / (eps (eps + delta)) over the whole sweep
    assert max(m.deviation_ratio for m in measurements) <= 20.0
    assert all(m.xc_max < m.predicted for m in measurements)
