"""Third-order data at a singularity: the in-plane cubic, its discriminant, the matrix A and the local class."""

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from saddle_dynamics._consts import CENTER_TOL

SingularityClass = Literal["StableSpiral", "UnstableSpiral", "Center", "SaddleLike", "Degenerate"]


def rotation(angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s], [s, c]])


@dataclass(frozen=True)
class CubicCoeffs:
    """Third derivatives E111, E112, E122, E222 in an orthonormal frame (e1, e2) of the singular plane."""

    e111: float
    e112: float
    e122: float
    e222: float

    @classmethod
    def from_tensor(cls, T: np.ndarray, e1: np.ndarray, e2: np.ndarray) -> "CubicCoeffs":
        def contract(a, b, c):
            return float(np.einsum("ijk,i,j,k->", T, a, b, c))

        return cls(contract(e1, e1, e1), contract(e1, e1, e2), contract(e1, e2, e2), contract(e2, e2, e2))

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.e111, self.e112, self.e122, self.e222)

    def to_dict(self) -> dict:
        return {"E111": self.e111, "E112": self.e112, "E122": self.e122, "E222": self.e222}


def _as_coeffs(coeffs) -> CubicCoeffs:
    return coeffs if isinstance(coeffs, CubicCoeffs) else CubicCoeffs(*coeffs)


def matrix_A(coeffs) -> np.ndarray:  # noqa: N802
    """A = [[(E111 - E122)/2, (E112 - E222)/2], [E112, E122]], the matrix of the leading-order dynamics."""
    c = _as_coeffs(coeffs)
    return np.array([[(c.e111 - c.e122) / 2.0, (c.e112 - c.e222) / 2.0], [c.e112, c.e122]])


def discriminant(coeffs) -> float:
    """Determinant of the Jacobian of the eigenvalue-crossing equations, E111 E122 + E112 E222 - E112^2 - E122^2.

    Equals ``2 * det(matrix_A(coeffs))``; a nonzero value means the singularity is isolated.
    """
    c = _as_coeffs(coeffs)
    return c.e111 * c.e122 + c.e112 * c.e222 - c.e112**2 - c.e122**2


def classify(A, alpha: float) -> SingularityClass:
    """Class of the ISD near a singularity with matrix ``A`` and unit in-plane gradient (cos alpha, sin alpha).

    The leading-order ISD is x' = -B x / |A x| with B = R(-alpha) A, so eigenvalues of B with positive real
    parts attract trajectories into the singularity in finite time.
    """
    B = rotation(-alpha) @ np.asarray(A, dtype=float)
    scale = max(1.0, float(np.linalg.norm(B)))
    det = float(np.linalg.det(B))
    if abs(det) <= CENTER_TOL * scale**2:
        return "Degenerate"
    if det < 0:
        return "SaddleLike"
    trace = float(np.trace(B))
    if abs(trace) <= CENTER_TOL * scale:
        return "Center"
    return "StableSpiral" if trace > 0 else "UnstableSpiral"
