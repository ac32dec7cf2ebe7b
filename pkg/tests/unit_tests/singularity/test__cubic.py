import math

import numpy as np
import pytest

from saddle_dynamics.singularity import CubicCoeffs, classify, discriminant, matrix_A, rotation


def test_det_a_is_half_the_discriminant():
    rng = np.random.default_rng(0)
    for coeffs in rng.standard_normal((1000, 4)):
        assert np.linalg.det(matrix_A(coeffs)) == pytest.approx(discriminant(coeffs) / 2.0, abs=1e-12)


def test_canonical_cubic():
    coeffs = CubicCoeffs(3.0, 0.0, 1.0, 0.0)
    assert discriminant(coeffs) == 2.0
    np.testing.assert_array_equal(matrix_A(coeffs), np.eye(2))


def test_from_tensor_in_rotated_frame():
    T = np.zeros((2, 2, 2))
    T[0, 0, 0] = 3.0
    T[0, 1, 1] = T[1, 0, 1] = T[1, 1, 0] = 1.0
    R = rotation(0.4)
    coeffs = CubicCoeffs.from_tensor(T, R[:, 0], R[:, 1])
    # the discriminant is invariant under in-plane rotations of the frame
    assert discriminant(coeffs) == pytest.approx(2.0, abs=1e-12)
    assert coeffs.to_dict().keys() == {"E111", "E112", "E122", "E222"}


@pytest.mark.parametrize(
    "s, alpha, expected",
    [
        (1.0, math.pi / 4, "StableSpiral"),
        (1.0, 3 * math.pi / 4, "UnstableSpiral"),
        (1.0, math.pi / 2, "Center"),
        (-1.0, math.pi, "SaddleLike"),
    ],
)
def test_classify_cubic_singularity_cases(s, alpha, expected):
    A = matrix_A((3.0 * s, 0.0, 1.0, 0.0))
    assert classify(A, alpha) == expected


def test_classify_degenerate():
    assert classify(np.array([[1.0, 0.0], [0.0, 0.0]]), 0.3) == "Degenerate"


def test_classification_is_rotation_invariant():
    A = 8.0 * rotation(math.pi / 2)
    assert classify(A, 3 * math.pi / 4) == "StableSpiral"
    assert classify(-A, 3 * math.pi / 4) == "UnstableSpiral"
