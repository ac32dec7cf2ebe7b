"""Right-hand sides of the gradient flow, the idealized saddle dynamics (ISD) and gentlest ascent dynamics (GAD)."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from saddle_dynamics.errors import DegenerateSpectrumError
from saddle_dynamics.landscape.model import EnergyModel
from saddle_dynamics.spectral import SpectralInfo, align_sign, lowest_pairs


@dataclass
class GadState:
    """Position ``x`` and unit orientation ``v`` of a GAD trajectory."""

    x: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=float)
        self.v = np.asarray(self.v, dtype=float)
        if self.x.shape != self.v.shape:
            raise ValueError(f"GAD position and orientation must have the same shape, got {self.x.shape} and {self.v.shape}.")
        norm = float(np.linalg.norm(self.v))
        if abs(norm - 1.0) > 1e-9:
            raise ValueError(f"GAD orientation must be a unit vector, got |v| = {norm:.12g}.")


def reflect(v: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Apply the reflector I - 2 v v^T to ``w``."""
    return w - 2.0 * np.dot(v, w) * v


def gradient_flow_field(model: EnergyModel, x) -> np.ndarray:
    return -model.gradient(x)


def isd_field(
    model: EnergyModel, x, v_prev: Optional[np.ndarray] = None, tol_gap: Optional[float] = None
) -> tuple[np.ndarray, SpectralInfo]:
    """ISD velocity -(I - 2 v1 v1^T) grad E(x) and the spectral data it was computed from.

    :param v_prev: reference for the sign of v1; the field itself does not depend on the sign
    :param tol_gap: gap below which the lowest eigenvector counts as undefined; defaults to the
        relative degeneracy tolerance of ``SpectralInfo``
    :raises DegenerateSpectrumError: when lambda2 - lambda1 is below the threshold
    """
    x = np.asarray(x, dtype=float)
    info = lowest_pairs(model.hessian(x))
    degenerate = info.degenerate if tol_gap is None else info.gap < tol_gap
    if degenerate:
        raise DegenerateSpectrumError(
            f"The two lowest Hessian eigenvalues coincide at x = {x.tolist()} (gap = {info.gap:.3e}); "
            "the ISD is undefined on the singular set.",
            gap=info.gap,
        )
    info = info.with_v1(align_sign(info.v1, v_prev))
    return -reflect(info.v1, model.gradient(x)), info


def gad_field(model: EnergyModel, state: GadState, eps: float) -> tuple[np.ndarray, np.ndarray]:
    """GAD velocities: x' = -(I - 2 v v^T) grad E(x), v' = -eps^-2 (I - v v^T) H(x) v."""
    return gad_velocity(model, state.x, state.v, eps)


def gad_velocity(model: EnergyModel, x: np.ndarray, v: np.ndarray, eps: float) -> tuple[np.ndarray, np.ndarray]:
    """``gad_field`` on raw arrays; ``v`` need not be exactly unit inside Runge-Kutta stages."""
    Hv = model.hessian(x) @ v
    xdot = -reflect(v, model.gradient(x))
    vdot = -(Hv - np.dot(v, Hv) * v) / eps**2
    return xdot, vdot


def isd_jacobian_at_saddle(model: EnergyModel, x_star, tol_g: float = 1e-8, tol_gap: float = 1e-6) -> np.ndarray:
    """Closed-form Jacobian -(I - 2 v1 v1^T) H(x*) of the ISD at an index-1 saddle; symmetric negative definite."""
    x_star = np.asarray(x_star, dtype=float)
    grad_norm = float(np.linalg.norm(model.gradient(x_star)))
    H = model.hessian(x_star)
    info = lowest_pairs(H)
    if grad_norm >= tol_g or info.index != 1 or info.gap <= tol_gap:
        raise ValueError(
            f"x* = {x_star.tolist()} is not an index-1 saddle: |grad E| = {grad_norm:.3e} (tol {tol_g:.0e}), "
            f"index = {info.index}, gap = {info.gap:.3e} (tol {tol_gap:.0e})."
        )
    v1 = info.v1
    return -(H - 2.0 * np.outer(v1, v1 @ H))
