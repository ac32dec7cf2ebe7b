import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

import numpy as np

from saddle_dynamics._consts import WINDOW_ENDPOINT_TOL
from saddle_dynamics.errors import RankMismatchError
from saddle_dynamics.landscape.model import EnergyModel
from saddle_dynamics.singularity.cubic import CubicCoeffs, SingularityClass, classify, discriminant, matrix_A
from saddle_dynamics.spectral import invariant_subspace

# Below this smallest singular value the projected reference axes no longer span the plane reliably.
_FRAME_CONDITION_TOL = 1e-3


@dataclass(frozen=True)
class SingularityReport:
    """Location and local structure of a point where the two lowest Hessian eigenvalues coincide.

    ``frame`` holds the adapted orthonormal basis as columns; the first two span the degenerate eigenspace
    and ``coeffs``, ``alpha`` and ``A`` are expressed in it.
    """

    z: np.ndarray
    lam: float
    grad_norm: float
    alpha: float
    coeffs: CubicCoeffs
    delta_disc: float
    A: np.ndarray
    frame: np.ndarray
    singularity_class: SingularityClass
    gap: float
    residual: float = 0.0
    iterations: int = 0

    @property
    def plane_gradient(self) -> np.ndarray:
        return self.grad_norm * np.array([np.cos(self.alpha), np.sin(self.alpha)])

    def to_dict(self) -> dict:
        return {
            "z": self.z.tolist(),
            "lambda": self.lam,
            "grad_norm": self.grad_norm,
            "alpha": self.alpha,
            "coeffs": self.coeffs.to_dict(),
            "delta_disc": self.delta_disc,
            "A": self.A.tolist(),
            "frame": self.frame.T.tolist(),
            "class": self.singularity_class,
            "gap": self.gap,
            "residual": self.residual,
            "iterations": self.iterations,
        }

    def to_json(self, path: Optional[Union[str, Path]] = None) -> str:
        text = json.dumps(self.to_dict(), sort_keys=True, indent=2)
        if path is not None:
            Path(path).write_text(text)
        return text


def lowdin(M: np.ndarray) -> tuple[np.ndarray, float]:
    """Symmetric (Lowdin) orthonormalization M (M^T M)^(-1/2) and the smallest singular value of ``M``."""
    if M.shape[1] == 0:
        return M, 1.0
    U, S, Vt = np.linalg.svd(M, full_matrices=False)
    return U @ Vt, float(S.min())


def default_window(H: np.ndarray) -> tuple[float, float]:
    """Window centered on the mean of the two lowest eigenvalues, reaching halfway from the second to the third.

    At a crossing this is the window reaching halfway to the third eigenvalue; away from it the two lowest
    eigenvalues stay inside for any gap.
    """
    eigvals = np.linalg.eigvalsh(H)
    center = 0.5 * (eigvals[0] + eigvals[1])
    half_gap = 0.5 * (eigvals[1] - eigvals[0])
    if eigvals.size < 3:
        return center, half_gap + 1.0
    if eigvals[2] - eigvals[1] < 2.0 * WINDOW_ENDPOINT_TOL:
        raise RankMismatchError(
            f"The second and third Hessian eigenvalues coincide ({eigvals[1]:.12g}, {eigvals[2]:.12g}); no spectral "
            "window isolates the lowest pair."
        )
    return center, half_gap + 0.5 * (eigvals[2] - eigvals[1])


def adapted_frame(
    H: np.ndarray, reference: np.ndarray, window: tuple[float, float]
) -> tuple[np.ndarray, float]:
    """Project the reference axes onto the windowed rank-2 eigenspace and its complement, then orthonormalize.

    :return: the frame (columns e1..eN) and the conditioning of the in-plane projection
    """
    basis = invariant_subspace(H, *window, expected_rank=2)
    P = basis @ basis.T
    plane, cond = lowdin(P @ reference[:, :2])
    complement, _ = lowdin((np.eye(H.shape[0]) - P) @ reference[:, 2:])
    return np.hstack([plane, complement]), cond


def resolve_reference(H: np.ndarray, reference: Optional[np.ndarray], window: tuple[float, float]) -> np.ndarray:
    """Standard axes (or ``reference``) unless their projection onto the plane is ill-conditioned; then eigenvectors."""
    n = H.shape[0]
    reference = np.eye(n) if reference is None else np.asarray(reference, dtype=float)
    _, cond = adapted_frame(H, reference, window)
    if cond >= _FRAME_CONDITION_TOL:
        return reference
    _, eigvecs = np.linalg.eigh(H)
    return eigvecs


def assemble_report(
    model: EnergyModel,
    z,
    reference_frame: Optional[np.ndarray] = None,
    window: Optional[tuple[float, float]] = None,
    residual: float = 0.0,
    iterations: int = 0,
) -> SingularityReport:
    """Build the full report at a known singular point ``z``.

    :param reference_frame: reference axes as columns; defaults to the standard basis
    :param window: spectral window (center, radius) selecting the degenerate pair; defaults to ``default_window``
    """
    z = np.asarray(z, dtype=float).reshape(model.dimension)
    H = model.hessian(z)
    window = window or default_window(H)
    reference = resolve_reference(H, reference_frame, window)
    frame, _ = adapted_frame(H, reference, window)
    e1, e2 = frame[:, 0], frame[:, 1]

    gradient = model.gradient(z)
    g1, g2 = float(gradient @ e1), float(gradient @ e2)
    plane_norm = float(np.hypot(g1, g2))
    alpha = float(np.arctan2(g2, g1))
    coeffs = CubicCoeffs.from_tensor(model.third(z), e1, e2)
    A = matrix_A(coeffs)
    singularity_class = classify(A / plane_norm, alpha) if plane_norm > 0 else "Degenerate"
    eigvals = np.linalg.eigvalsh(H)

    return SingularityReport(
        z=z,
        lam=0.5 * float(e1 @ H @ e1 + e2 @ H @ e2),
        grad_norm=float(np.linalg.norm(gradient)),
        alpha=alpha,
        coeffs=coeffs,
        delta_disc=discriminant(coeffs),
        A=A,
        frame=frame,
        singularity_class=singularity_class,
        gap=float(eigvals[1] - eigvals[0]),
        residual=residual,
        iterations=iterations,
    )
