"""Non specific fixtures for use across all tests.

This fixture is accessible to all tests due to its inclusion in conftest.py.

see: https://docs.pytest.org/en/6.2.x/fixture.html
"""

import math

import pytest

from saddle_dynamics.landscape import make_model

ROTATED_CUBIC_SPEC = {
    "variant": "MultiDE0",
    "params": {
        "alpha0": 3 * math.pi / 4,
        "lambda0": 1.0,
        "H0": [[1.1]],
        "G0": [[[6.0]]],
        "plane_cubic": [0.0, 1.0, 0.0, 3.0],
    },
}

# Same in-plane cubic and angle with the converging curvature well above the crossing, so the lowest pair stays
# isolated under the default bump up to delta = 0.05.
ROTATED_WIDE_GAP_SPEC = {
    "variant": "MultiDE0",
    "params": {**ROTATED_CUBIC_SPEC["params"], "H0": [[2.0]]},
}

# One parameter set per builtin variant, used by the derivative checks.
BUILTIN_SPECS = [
    {"variant": "DoubleWell1D"},
    {"variant": "DoubleWell2D", "params": {"alpha": 6.0}},
    {"variant": "CoerciveQuartic"},
    {"variant": "CubicSingularity", "params": {"alpha": 1.0, "s": -1.0, "lam": 0.5}},
    {"variant": "IsotropicCanonical"},
    {"variant": "MultiDE0", "params": {"alpha0": 3 * math.pi / 4, "G0": [[[6.0]]], "plane_cubic": [0, 1, 0, 3]}},
    {"variant": "Quadratic"},
    {"variant": "CubicBump", "params": {"dimension": 3}},
    {"variant": "Perturbed", "params": {"base": {"variant": "MultiDE0"}, "delta": 0.05}},
]


@pytest.fixture()
def double_well_1d():
    return make_model({"variant": "DoubleWell1D"})


@pytest.fixture()
def double_well_2d():
    """Double well with alpha = 2: repulsive singular lines at x = +/- sqrt(2/3)."""
    return make_model({"variant": "DoubleWell2D", "params": {"alpha": 2.0}})


@pytest.fixture()
def double_well_2d_attractive():
    return make_model({"variant": "DoubleWell2D", "params": {"alpha": 6.0}})


@pytest.fixture()
def coercive_quartic():
    return make_model({"variant": "CoerciveQuartic"})


@pytest.fixture()
def isotropic_canonical():
    return make_model({"variant": "IsotropicCanonical", "params": {"alpha": math.pi / 4}})


@pytest.fixture()
def quadratic_saddle():
    return make_model({"variant": "Quadratic", "params": {"H": [[-1.0, 0.0], [0.0, 2.0]]}})


@pytest.fixture()
def rotated_cubic_3d():
    """Three-dimensional model whose singularity at the origin carries a rotated in-plane cubic."""
    return make_model(ROTATED_CUBIC_SPEC)
