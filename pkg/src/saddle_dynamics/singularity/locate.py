"""Newton location of eigenvalue-crossing singularities and tools for lines of singularities."""

from typing import Literal, Optional

import numpy as np
from scipy.optimize import brentq

from saddle_dynamics._debug import _debug
from saddle_dynamics._solvers import newton_fd
from saddle_dynamics.errors import DegenerateSpectrumError, InvalidModelError
from saddle_dynamics.flows.fields import isd_field
from saddle_dynamics.landscape.model import EnergyModel
from saddle_dynamics.singularity.report import (
    SingularityReport,
    adapted_frame,
    assemble_report,
    default_window,
    resolve_reference,
)


def locate_2d(model: EnergyModel, guess) -> SingularityReport:
    """Solve (H11 - H22, H12) = 0 by finite-difference Newton from ``guess``.

    :raises DegenerateJacobianError: on a line of singularities, where the discriminant vanishes
    :raises NoConvergenceError: when Newton does not converge in 50 iterations
    """
    if model.dimension != 2:
        raise InvalidModelError(f"locate_2d needs a 2D model, got dimension {model.dimension}; use locate_nd.")

    def residual(x):
        H = model.hessian(x)
        return np.array([H[0, 0] - H[1, 1], H[0, 1]])

    z, iterations = newton_fd(residual, guess)
    _debug(f"locate_2d converged to {z.tolist()} in {iterations} iterations")
    return assemble_report(model, z, residual=float(np.linalg.norm(residual(z))), iterations=iterations)


def locate_nd(model: EnergyModel, guess, reference_frame: Optional[np.ndarray] = None) -> SingularityReport:
    """Locate a singularity in N dimensions together with its adapted frame.

    The spectral window follows the iterate: at each z it is centered on the mean of the two lowest eigenvalues
    and reaches halfway from the second to the third. The frame is the orthonormalized projection of the
    reference axes, fixed at the guess, onto the windowed eigenspace (e1, e2) and its complement (e3..eN).
    The N residuals are <e1, H e2>, <e1, H e1> - <e2, H e2> and <ei, grad E> for i >= 3.

    :raises RankMismatchError: when the second and third eigenvalues coincide, so no window isolates the pair
    :raises NoConvergenceError: when Newton does not converge
    """
    guess = np.asarray(guess, dtype=float).reshape(model.dimension)
    H0 = model.hessian(guess)
    reference = resolve_reference(H0, reference_frame, default_window(H0))

    def residual(z):
        H = model.hessian(z)
        frame, _ = adapted_frame(H, reference, default_window(H))
        e1, e2 = frame[:, 0], frame[:, 1]
        converging = frame[:, 2:].T @ model.gradient(z)
        return np.concatenate([[e1 @ H @ e2, e1 @ H @ e1 - e2 @ H @ e2], converging])

    z, iterations = newton_fd(residual, guess)
    _debug(f"locate_nd converged to {z.tolist()} in {iterations} iterations")
    return assemble_report(
        model,
        z,
        reference_frame=reference,
        residual=float(np.linalg.norm(residual(z))),
        iterations=iterations,
    )


def locate(model: EnergyModel, guess) -> SingularityReport:
    return locate_2d(model, guess) if model.dimension == 2 else locate_nd(model, guess)


def locate_singular_line(model: EnergyModel, start, end, xtol: float = 1e-12) -> np.ndarray:
    """Bisect the segment [start, end] for the point where the two lowest eigenvalues cross.

    The crossing is detected through the signed splitting <u, H u> - <w, H w>, with u and w the two lowest
    eigenvectors at ``start`` kept fixed along the segment.
    """
    start = np.asarray(start, dtype=float)
    end = np.asarray(end, dtype=float)
    _, eigvecs = np.linalg.eigh(model.hessian(start))
    u, w = eigvecs[:, 0], eigvecs[:, 1]

    def splitting(s):
        H = model.hessian(start + s * (end - start))
        return float(u @ H @ u - w @ H @ w)

    lo, hi = splitting(0.0), splitting(1.0)
    if lo * hi > 0:
        raise ValueError(
            f"No eigenvalue crossing between {start.tolist()} and {end.tolist()}: "
            f"the splitting has the same sign at both ends ({lo:.3e}, {hi:.3e})."
        )
    s_star = brentq(splitting, 0.0, 1.0, xtol=xtol)
    return start + s_star * (end - start)


def singular_line_attractivity(
    model: EnergyModel, point, normal, h: float = 1e-3
) -> Literal["attractive", "repulsive", "mixed"]:
    """Sign of the ISD velocity along ``normal`` on both sides of a singular line through ``point``."""
    point = np.asarray(point, dtype=float)
    normal = np.asarray(normal, dtype=float) / np.linalg.norm(normal)
    try:
        plus = float(isd_field(model, point + h * normal)[0] @ normal)
        minus = float(isd_field(model, point - h * normal)[0] @ normal)
    except DegenerateSpectrumError as e:
        raise ValueError(f"Step h = {h} does not leave the singular set around {point.tolist()}.") from e
    if plus < 0 < minus:
        return "attractive"
    if minus < 0 < plus:
        return "repulsive"
    return "mixed"
