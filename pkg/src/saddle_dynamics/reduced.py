"""Leading-order dynamics near an isotropic singularity and its polar and (r, omega) reductions.

Near a singularity with unit in-plane gradient (cos alpha, sin alpha) and matrix ``A``, GAD reduces to

    x' = R(-alpha) vbar,    eps^2 vbar' = -2 <R(pi/2) vbar, A x> R(pi/2) vbar,

where ``vbar = (cos 2 phi, sin 2 phi)`` is the doubled-angle orientation. For ``A = I`` the polar form in
(r, theta, phi) only depends on ``omega = 2 phi - theta``, which gives a planar system with a stable
circular orbit of radius ``eps / sqrt(2 cos alpha)`` when ``cos alpha > 0`` and ``sin alpha != 0``.
"""

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Literal, Optional, Union

import numpy as np
import pandas as pd
from scipy.integrate import solve_ivp

from saddle_dynamics._consts import RADIUS_WARNING_ALPHA
from saddle_dynamics.errors import NoConvergenceError
from saddle_dynamics.flows.fields import gad_velocity
from saddle_dynamics.landscape.model import EnergyModel
from saddle_dynamics.singularity import assemble_report, rotation

_ODE_RTOL = 1e-11
_ODE_ATOL = 1e-12

R90 = rotation(math.pi / 2)


@dataclass(frozen=True)
class PolarState:
    r: float
    theta: float
    phi: float

    def __post_init__(self):
        if self.r < 0:
            raise ValueError(f"Polar radius must be non-negative, got r = {self.r}.")

    @property
    def vbar(self) -> np.ndarray:
        return np.array([math.cos(2 * self.phi), math.sin(2 * self.phi)])


@dataclass(frozen=True)
class ReducedState:
    r: float
    omega: float

    def __post_init__(self):
        if self.r <= 0:
            raise ValueError(f"Reduced radius must be positive, got r = {self.r}.")


@dataclass(frozen=True)
class FixedPointReport:
    """Fixed points (r0, omega0+/-) of the reduced system and their stability matrices."""

    alpha: float
    r0: float
    omega0_plus: float
    omega0_minus: float
    J_plus: np.ndarray
    J_minus: np.ndarray
    stable_branch: Literal["plus", "minus", "undecided"]

    @property
    def stable_omega(self) -> Optional[float]:
        return {"plus": self.omega0_plus, "minus": self.omega0_minus}.get(self.stable_branch)

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "r0": self.r0,
            "omega0_plus": self.omega0_plus,
            "omega0_minus": self.omega0_minus,
            "J_plus": self.J_plus.tolist(),
            "J_minus": self.J_minus.tolist(),
            "trace_J_plus": float(np.trace(self.J_plus)),
            "trace_J_minus": float(np.trace(self.J_minus)),
            "stable_branch": self.stable_branch,
        }

    def to_json(self, path: Optional[Union[str, Path]] = None) -> str:
        text = json.dumps(self.to_dict(), sort_keys=True, indent=2)
        if path is not None:
            Path(path).write_text(text)
        return text


@dataclass
class ReducedTrajectory:
    """Dense output of one of the reduced systems; ``states`` has one row per time in ``t``."""

    t: np.ndarray
    states: np.ndarray
    columns: tuple[str, ...]

    def as_dataframe(self) -> pd.DataFrame:
        df = pd.DataFrame(self.states, columns=list(self.columns))
        df.insert(0, "t", self.t)
        return df

    def to_csv(self, path: Optional[Union[str, Path]] = None) -> Optional[str]:
        return self.as_dataframe().to_csv(path, index=False, float_format="%.17g")


def leading_gad_field(x, vbar, alpha: float, A, eps: float) -> tuple[np.ndarray, np.ndarray]:
    """Leading-order GAD velocities (x', vbar') for a singularity with matrix ``A`` and gradient angle ``alpha``."""
    x = np.asarray(x, dtype=float)
    vbar = np.asarray(vbar, dtype=float)
    normal = R90 @ vbar
    xdot = rotation(-alpha) @ vbar
    vbar_dot = -2.0 * float(normal @ (np.asarray(A, dtype=float) @ x)) * normal / eps**2
    return xdot, vbar_dot


def leading_isd_field(x, alpha: float, A) -> np.ndarray:
    """Leading-order ISD velocity -R(-alpha) A x / |A x|, the adiabatic limit of ``leading_gad_field``."""
    Ax = np.asarray(A, dtype=float) @ np.asarray(x, dtype=float)
    norm = float(np.linalg.norm(Ax))
    if norm == 0:
        raise ValueError("The leading-order ISD is undefined where A x = 0.")
    return -rotation(-alpha) @ Ax / norm


@dataclass(frozen=True)
class ConsistencyReport:
    """Full GAD versus leading-order GAD at one state, in the adapted in-plane coordinates."""

    xdot_full: np.ndarray
    xdot_leading: np.ndarray
    vbar_dot_full: np.ndarray
    vbar_dot_leading: np.ndarray

    @property
    def x_discrepancy(self) -> float:
        return float(np.linalg.norm(self.xdot_full - self.xdot_leading))

    @property
    def orientation_discrepancy(self) -> float:
        """Discrepancy of eps^2 vbar', which does not depend on eps."""
        return float(np.linalg.norm(self.vbar_dot_full - self.vbar_dot_leading))


def full_vs_leading_consistency(model: EnergyModel, x, v, eps: float, center=None) -> ConsistencyReport:
    """Compare the full GAD field at (x, v) with the leading-order field of the singularity at ``center``.

    ``v`` must lie in the singular plane. Positions are expressed relative to ``center`` (default: origin) in the
    adapted frame, and the orientation through the doubled-angle map ``v = (cos phi, sin phi) -> vbar``.
    """
    center = np.zeros(model.dimension) if center is None else np.asarray(center, dtype=float)
    report = assemble_report(model, center)
    plane = report.frame[:, :2]
    x = np.asarray(x, dtype=float)
    v = np.asarray(v, dtype=float)
    xi = plane.T @ (x - center)
    v_plane = plane.T @ v
    phi = math.atan2(v_plane[1], v_plane[0])
    vbar = np.array([math.cos(2 * phi), math.sin(2 * phi)])

    xdot, vdot = gad_velocity(model, x, v, eps)
    phi_dot = float((R90 @ v_plane) @ (plane.T @ vdot))
    vbar_dot_full = 2.0 * phi_dot * (R90 @ vbar) * eps**2

    xdot_lead, vbar_dot_lead = leading_gad_field(xi, vbar, report.alpha, report.A, eps)
    return ConsistencyReport(
        xdot_full=plane.T @ xdot,
        xdot_leading=report.grad_norm * xdot_lead,
        vbar_dot_full=vbar_dot_full,
        vbar_dot_leading=vbar_dot_lead * eps**2,
    )


def polar_field(state: PolarState, alpha: float, eps: float) -> tuple[float, float, float]:
    """(r', theta', phi') of the isotropic leading-order GAD; ``eps = 1`` gives the rescaled system."""
    if state.r == 0:
        raise ValueError("polar_field is undefined at r = 0 (coordinate singularity).")
    r, theta, phi = state.r, state.theta, state.phi
    return (
        math.cos(2 * phi - alpha - theta),
        math.sin(2 * phi - alpha - theta) / r,
        r * math.sin(2 * phi - theta) / eps**2,
    )


def reduced_field(state: ReducedState, alpha: float) -> tuple[float, float]:
    r, omega = state.r, state.omega
    return math.cos(omega - alpha), 2.0 * r * math.sin(omega) - math.sin(omega - alpha) / r


def reduced_jacobian(r: float, omega: float, alpha: float) -> np.ndarray:
    """Analytic partial derivatives of ``reduced_field`` with respect to (r, omega)."""
    return np.array(
        [
            [0.0, -math.sin(omega - alpha)],
            [
                2.0 * math.sin(omega) + math.sin(omega - alpha) / r**2,
                2.0 * r * math.cos(omega) - math.cos(omega - alpha) / r,
            ],
        ]
    )


def fixed_points(alpha: float) -> FixedPointReport:
    """Fixed points r0 = (2 cos alpha)^(-1/2), omega0 = alpha +/- pi/2 of the reduced system.

    The plus branch is stable when sin alpha > 0, the minus branch when sin alpha < 0; sin alpha = 0 is
    left undecided.
    """
    if math.cos(alpha) <= 0:
        raise ValueError(f"Fixed points of the reduced system need cos(alpha) > 0, got alpha = {alpha}.")
    r0 = 1.0 / math.sqrt(2.0 * math.cos(alpha))
    omega_plus, omega_minus = alpha + math.pi / 2, alpha - math.pi / 2
    s = math.sin(alpha)
    branch = "plus" if s > 0 else "minus" if s < 0 else "undecided"
    return FixedPointReport(
        alpha=alpha,
        r0=r0,
        omega0_plus=omega_plus,
        omega0_minus=omega_minus,
        J_plus=reduced_jacobian(r0, omega_plus, alpha),
        J_minus=reduced_jacobian(r0, omega_minus, alpha),
        stable_branch=branch,
    )


def predicted_radius(alpha: float, eps: float) -> float:
    """Radius eps / sqrt(2 cos alpha) of the stable GAD orbit around an isotropic singularity."""
    if eps < 0:
        raise ValueError(f"eps must be non-negative, got {eps}.")
    if math.cos(alpha) <= 0:
        raise ValueError(f"The stable orbit needs cos(alpha) > 0, got alpha = {alpha}.")
    if math.sin(alpha) == 0:
        raise ValueError("The stable orbit is undecided for sin(alpha) = 0.")
    if abs(alpha) > RADIUS_WARNING_ALPHA:
        print(f"⚠️ alpha = {alpha:.4f} is close to pi/2; the predicted radius {eps:.3g}/sqrt(2 cos alpha) blows up.")
    return eps / math.sqrt(2.0 * math.cos(alpha))


def isotropic_part(A) -> tuple[float, float, float]:
    """Project ``A`` onto the scaled rotations {d R(t)}.

    :return: (d, t, anisotropy) where anisotropy is |A - d R(t)| / |A|
    """
    A = np.asarray(A, dtype=float)
    a = 0.5 * (A[0, 0] + A[1, 1])
    b = 0.5 * (A[1, 0] - A[0, 1])
    d = math.hypot(a, b)
    t = math.atan2(b, a)
    norm = float(np.linalg.norm(A))
    anisotropy = float(np.linalg.norm(A - d * rotation(t))) / norm if norm > 0 else 0.0
    return d, t, anisotropy


def wrap_angle(angle: float) -> float:
    """Map an angle to (-pi, pi]."""
    wrapped = math.remainder(angle, 2 * math.pi)
    return math.pi if wrapped == -math.pi else wrapped


def isotropic_reduction(A, alpha: float, eps: float, g: float = 1.0) -> tuple[float, float]:
    """Angle and relaxation parameter of the canonical (A = I, unit gradient) problem equivalent to (A, alpha, eps).

    Rotating positions by t and rescaling time maps A = d R(t) with gradient norm g onto the canonical
    singularity with alpha' = alpha - t and eps' = eps sqrt(g / d).
    """
    d, t, anisotropy = isotropic_part(A)
    if d == 0:
        raise ValueError("A has no isotropic part; the singularity cannot be reduced to the canonical one.")
    if anisotropy > 1e-8:
        print(f"⚠️ A is anisotropic (relative remainder {anisotropy:.3e}); using its isotropic part only.")
    return wrap_angle(alpha - t), eps * math.sqrt(g / d)


def _solve(rhs, y0, t_max: float, n_points: int) -> tuple[np.ndarray, np.ndarray]:
    t_eval = np.linspace(0.0, t_max, n_points)
    sol = solve_ivp(
        lambda _t, y: rhs(y), (0.0, t_max), y0, method="DOP853", t_eval=t_eval, rtol=_ODE_RTOL, atol=_ODE_ATOL
    )
    if not sol.success:
        raise NoConvergenceError(f"Reduced-system integration failed: {sol.message}")
    return sol.t, sol.y.T


def integrate_polar(
    state: PolarState, alpha: float, eps: float, t_max: float, n_points: int = 2001
) -> ReducedTrajectory:
    y0 = [state.r, state.theta, state.phi]
    t, y = _solve(lambda y: np.array(polar_field(PolarState(*y), alpha, eps)), y0, t_max, n_points)
    return ReducedTrajectory(t, y, ("r", "theta", "phi"))


def integrate_reduced(state: ReducedState, alpha: float, t_max: float, n_points: int = 2001) -> ReducedTrajectory:
    t, y = _solve(lambda y: np.array(reduced_field(ReducedState(*y), alpha)), [state.r, state.omega], t_max, n_points)
    return ReducedTrajectory(t, y, ("r", "omega"))


def integrate_leading(  # noqa: PLR0913
    x0, vbar0, alpha: float, A, eps: float, t_max: float, n_points: int = 2001
) -> ReducedTrajectory:
    """Integrate ``leading_gad_field`` for a general (possibly anisotropic) ``A``."""

    def rhs(y):
        xdot, vbar_dot = leading_gad_field(y[:2], y[2:], alpha, A, eps)
        return np.concatenate([xdot, vbar_dot])

    t, y = _solve(rhs, np.concatenate([np.asarray(x0, dtype=float), np.asarray(vbar0, dtype=float)]), t_max, n_points)
    return ReducedTrajectory(t, y, ("x_1", "x_2", "vbar_1", "vbar_2"))


def to_reduced_coordinates(trajectory: ReducedTrajectory) -> ReducedTrajectory:
    """Map a leading-order trajectory (x, vbar) to (r, omega) with omega = angle(vbar) - theta, unwrapped."""
    x, vbar = trajectory.states[:, :2], trajectory.states[:, 2:]
    r = np.linalg.norm(x, axis=1)
    omega = np.unwrap(np.arctan2(vbar[:, 1], vbar[:, 0]) - np.arctan2(x[:, 1], x[:, 0]))
    return ReducedTrajectory(trajectory.t, np.column_stack([r, omega]), ("r", "omega"))
