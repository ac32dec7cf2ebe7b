"""Lyapunov and adiabatic-tracking diagnostics of recorded trajectories."""

from dataclasses import dataclass

import numpy as np

from saddle_dynamics.flows.trajectory import Trajectory

_MIN_SAMPLES = 10
_MONOTONE_SLACK = 1e-8
_RATE_SLACK = 0.05


@dataclass(frozen=True)
class LyapunovReport:
    """Decay of |grad E| along the in-region prefix of an ISD trajectory.

    ``measured_rate`` is the least-squares slope of -log |grad E|^2 over the second half of the prefix, and
    ``bound_rate`` is 2 min_k min(-lambda1, lambda2) over the prefix samples.
    """

    passed: bool
    partial: bool
    monotone: bool
    measured_rate: float
    bound_rate: float
    n_samples: int


def index1_prefix(traj: Trajectory) -> int:
    """Number of leading samples with lambda1 < 0 < lambda2."""
    inside = (traj.lambda1 < 0) & (traj.lambda2 > 0)
    outside = np.flatnonzero(~inside)
    return int(outside[0]) if outside.size else traj.n_samples


def lyapunov_check(traj: Trajectory) -> LyapunovReport:
    n = index1_prefix(traj)
    partial = n < traj.n_samples
    if n < _MIN_SAMPLES:
        return LyapunovReport(False, partial, False, float("nan"), float("nan"), n)

    g = traj.grad_norm[:n]
    t = traj.t[:n]
    monotone = bool(np.all(g[1:] <= g[:-1] * (1.0 + _MONOTONE_SLACK)))
    half = n // 2
    slope = np.polyfit(t[half:], -np.log(g[half:] ** 2), 1)[0]
    bound = 2.0 * float(np.min(np.minimum(-traj.lambda1[:n], traj.lambda2[:n])))
    passed = monotone and slope >= (1.0 - _RATE_SLACK) * bound
    return LyapunovReport(passed, partial, monotone, float(slope), bound, n)


def gad_tracking_check(traj: Trajectory) -> float:
    """Largest orientation error |v - v1(x)| along a GAD trajectory."""
    if traj.selector != "gad":
        raise ValueError(f"gad_tracking_check needs a GAD trajectory, got {traj.selector!r}.")
    return float(traj.v_err.max())
