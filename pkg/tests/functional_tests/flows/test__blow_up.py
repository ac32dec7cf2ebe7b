import math

import numpy as np
import pytest

from saddle_dynamics.config import IntegratorConfig
from saddle_dynamics.flows import integrate
from saddle_dynamics.singularity import locate_2d

COERCIVE_MINIMUM = np.array([0.19412, -0.86706])


@pytest.mark.slow
def test_isd_reaches_attractive_singularity_in_finite_time(isotropic_canonical):
    x0 = [0.1 * math.cos(0.3), 0.1 * math.sin(0.3)]
    traj = integrate(isotropic_canonical, "isd", x0)
    assert traj.stop.tag == "BlowUp"
    assert np.linalg.norm(traj.stop.x) < 1e-5
    assert math.isfinite(traj.stop.t_star)
    # radial speed is cos(alpha) at leading order
    assert 0.12 < traj.stop.t_star < 0.1415
    assert traj.stop.t_star >= traj.stop.t


@pytest.mark.slow
def test_blow_up_time_is_stable_under_tighter_stepping(isotropic_canonical):
    x0 = [0.1 * math.cos(0.3), 0.1 * math.sin(0.3)]
    default = integrate(isotropic_canonical, "isd", x0)
    tight = integrate(isotropic_canonical, "isd", x0, IntegratorConfig(abs_tol=1e-12, rel_tol=1e-10))
    assert tight.stop.tag == "BlowUp"
    assert tight.stop.t_star == pytest.approx(default.stop.t_star, rel=0.05)


@pytest.mark.slow
def test_coercive_quartic_isd_is_trapped_at_attractive_singularity(coercive_quartic):
    s1 = locate_2d(coercive_quartic, [0.1, 0.6])
    assert s1.singularity_class == "StableSpiral"

    rng = np.random.default_rng(20)
    radii = rng.uniform(0.02, 0.1, size=50)
    angles = rng.uniform(0.0, 2 * math.pi, size=50)
    tags = []
    for r, angle in zip(radii, angles):
        x0 = COERCIVE_MINIMUM + r * np.array([math.cos(angle), math.sin(angle)])
        traj = integrate(coercive_quartic, "isd", x0)
        tags.append(traj.stop.tag)
        assert traj.stop.singular, f"x0 = {x0.tolist()} stopped with {traj.stop.tag}"
        assert np.linalg.norm(np.asarray(traj.stop.x) - s1.z) < 1e-2
    assert "ConvergedToSaddle" not in tags
