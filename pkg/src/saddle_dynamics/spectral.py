"""Lowest eigenpairs, sign-continuous eigenvector tracking and spectral-window subspaces of Hessians."""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg

from saddle_dynamics._consts import DEGENERACY_RTOL, WINDOW_ENDPOINT_TOL
from saddle_dynamics.errors import RankMismatchError


@dataclass(frozen=True)
class SpectralInfo:
    """Lowest two eigenpairs of a symmetric matrix, their gap and the Morse index.

    For 1x1 matrices ``lambda2`` and ``gap`` are ``inf`` and ``v2`` is ``None``.
    """

    lambda1: float
    lambda2: float
    v1: np.ndarray
    v2: Optional[np.ndarray]
    gap: float
    index: int

    @property
    def degenerate(self) -> bool:
        return self.gap < DEGENERACY_RTOL * max(1.0, abs(self.lambda1))

    def with_v1(self, v1: np.ndarray) -> "SpectralInfo":
        return SpectralInfo(self.lambda1, self.lambda2, v1, self.v2, self.gap, self.index)


def canonical_sign(v: np.ndarray) -> np.ndarray:
    """Flip ``v`` so that its first nonzero component is positive."""
    nonzero = np.flatnonzero(v)
    if nonzero.size and v[nonzero[0]] < 0:
        return -v
    return v


def lowest_pairs(H) -> SpectralInfo:
    """Dense eigendecomposition of the symmetric ``H``, reduced to the two lowest pairs.

    Eigenvectors carry the canonical sign; use ``align_sign`` to make them continuous along a path.
    """
    H = np.atleast_2d(np.asarray(H, dtype=float))
    eigvals, eigvecs = np.linalg.eigh(H)
    index = int(np.count_nonzero(eigvals < 0))
    v1 = canonical_sign(eigvecs[:, 0])
    if H.shape[0] == 1:
        return SpectralInfo(float(eigvals[0]), math.inf, v1, None, math.inf, index)
    return SpectralInfo(
        lambda1=float(eigvals[0]),
        lambda2=float(eigvals[1]),
        v1=v1,
        v2=canonical_sign(eigvecs[:, 1]),
        gap=float(max(eigvals[1] - eigvals[0], 0.0)),
        index=index,
    )


def align_sign(v: np.ndarray, v_prev: Optional[np.ndarray]) -> np.ndarray:
    """Return ``v`` or ``-v``, whichever points along ``v_prev``; an exact tie keeps ``v``."""
    if v_prev is None:
        return v
    return -v if float(np.dot(v, v_prev)) < 0 else v


def invariant_subspace(H, center: float, radius: float, expected_rank: Optional[int] = None) -> np.ndarray:
    """Orthonormal basis (as columns) of the eigenvectors of ``H`` with eigenvalues in ``[center - radius, center + radius]``.

    :param H: symmetric matrix
    :param center: window center
    :param radius: window half-width
    :param expected_rank: when given, a different number of selected eigenvalues raises ``RankMismatchError``
    :return: N x k matrix with orthonormal columns
    """
    H = np.atleast_2d(np.asarray(H, dtype=float))
    eigvals, eigvecs = np.linalg.eigh(H)
    lo, hi = center - radius, center + radius
    near_edge = np.minimum(np.abs(eigvals - lo), np.abs(eigvals - hi)) < WINDOW_ENDPOINT_TOL
    if np.any(near_edge):
        raise ValueError(
            f"Eigenvalue(s) {eigvals[near_edge].tolist()} lie within {WINDOW_ENDPOINT_TOL} of the spectral window "
            f"[{lo:.12g}, {hi:.12g}]; the selected subspace is ill-defined. Choose a different center or radius."
        )
    selected = (eigvals > lo) & (eigvals < hi)
    rank = int(np.count_nonzero(selected))
    if expected_rank is not None and rank != expected_rank:
        raise RankMismatchError(
            f"The spectral window [{lo:.6g}, {hi:.6g}] isolates {rank} eigenvalue(s), expected {expected_rank}. "
            f"Eigenvalues: {eigvals.tolist()}"
        )
    return eigvecs[:, selected]


def projector(basis: np.ndarray) -> np.ndarray:
    basis = np.asarray(basis, dtype=float)
    return basis @ basis.T


def principal_angles(basis_a: np.ndarray, basis_b: np.ndarray) -> np.ndarray:
    """Principal angles (radians, descending) between the column spans of two bases."""
    return scipy.linalg.subspace_angles(np.asarray(basis_a, dtype=float), np.asarray(basis_b, dtype=float))
