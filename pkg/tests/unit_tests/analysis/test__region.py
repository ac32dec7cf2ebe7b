import json

import numpy as np
import pytest

from saddle_dynamics.analysis import certify_region, cell_centers
from saddle_dynamics.config import RegionSpec
from saddle_dynamics.errors import HypothesisError, InvalidModelError


def test_cell_centers():
    (axis,) = cell_centers([(0.0, 1.0)], [4])
    np.testing.assert_allclose(axis, [0.125, 0.375, 0.625, 0.875])


def test_double_well_region_is_certified(double_well_2d):
    cert = certify_region(double_well_2d, RegionSpec(L=1.0, bounds=[(-0.6, 0.6), (-0.6, 0.6)], resolution=41))
    assert cert.is_valid
    assert cert.index1_everywhere
    assert not cert.touches_boundary
    assert cert.min_margin > 0
    points = cert.points()
    assert points.shape == (cert.n_cells, 2)
    assert np.all(np.linalg.norm([double_well_2d.gradient(p) for p in points], axis=1) <= 1.0)


def test_quadratic_region_needs_a_large_enough_box(quadratic_saddle):
    inside = certify_region(quadratic_saddle, RegionSpec(L=10.0, bounds=[(-12, 12), (-12, 12)], resolution=61))
    assert inside.is_valid

    clipped = certify_region(quadratic_saddle, RegionSpec(L=10.0, bounds=[(-5, 5), (-5, 5)], resolution=21))
    assert clipped.index1_everywhere
    assert clipped.touches_boundary
    assert not clipped.is_valid


def test_coercive_quartic_component_contains_minimum_type_singularity(coercive_quartic):
    spec = RegionSpec(L=2.0, bounds=[(-1.5, 1.5), (-1.5, 1.5)], resolution=61, seed_point=[0.0, 0.0])
    cert = certify_region(coercive_quartic, spec)
    assert not cert.index1_everywhere
    assert not cert.is_valid
    assert cert.min_margin < 0


def test_seed_outside_sublevel_set(double_well_2d):
    with pytest.raises(HypothesisError, match="outside the sublevel set"):
        certify_region(double_well_2d, RegionSpec(L=0.1, seed_point=[0.5, 0.5]))


def test_dimension_mismatch(double_well_1d):
    with pytest.raises(InvalidModelError):
        certify_region(double_well_1d, RegionSpec())


def test_certificate_json(double_well_2d):
    cert = certify_region(double_well_2d, RegionSpec(resolution=11))
    payload = json.loads(cert.to_json())
    assert payload["n_cells"] == len(payload["cells"]) == cert.n_cells
    assert payload["is_valid"] == cert.is_valid
