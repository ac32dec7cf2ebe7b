"""Explicit Runge-Kutta steppers for autonomous systems y' = f(y).

Tableaux are stored as rows of the lower-triangular Butcher matrix, with the weights of the propagating
solution in ``B`` and, for embedded pairs, the truncation-error weights (propagating minus embedded) in ``TR``.
"""

from dataclasses import dataclass
from typing import Callable, Literal, Optional

import numpy as np

Method = Literal["rk4", "rk45"]

RK4_BT = [
    [0.5],
    [0.0, 0.5],
    [0.0, 0.0, 1.0],
]
RK4_B = [1 / 6, 1 / 3, 1 / 3, 1 / 6]

# Dormand-Prince 5(4), first-same-as-last
DP54_BT = [
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]
DP54_B = [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0]
DP54_TR = [71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40]

_TABLEAUX = {
    "rk4": (RK4_BT, RK4_B, None),
    "rk45": (DP54_BT, DP54_B, DP54_TR),
}


@dataclass
class StepResult:
    y: np.ndarray
    error: Optional[np.ndarray] = None


def rk_step(f: Callable[[np.ndarray], np.ndarray], y: np.ndarray, h: float, method: Method) -> StepResult:
    """Advance ``y`` by one step of size ``h``; embedded pairs also return the local error estimate."""
    bt, b, tr = _TABLEAUX[method]
    stages = [f(y)]
    for row in bt:
        increment = sum(a * k for a, k in zip(row, stages) if a != 0.0)
        stages.append(f(y + h * increment))
    y_new = y + h * sum(w * k for w, k in zip(b, stages) if w != 0.0)
    if tr is None:
        return StepResult(y=y_new)
    error = h * sum(w * k for w, k in zip(tr, stages) if w != 0.0)
    return StepResult(y=y_new, error=error)


def error_norm(error: np.ndarray, y: np.ndarray, y_new: np.ndarray, abs_tol: float, rel_tol: float) -> float:
    """RMS of the local error scaled by ``abs_tol + rel_tol * max(|y|, |y_new|)``; a step is accepted when <= 1."""
    scale = abs_tol + rel_tol * np.maximum(np.abs(y), np.abs(y_new))
    return float(np.sqrt(np.mean((error / scale) ** 2)))


def next_step_size(h: float, err: float, order: int = 5) -> float:
    """Step-size controller with safety factor 0.8, clamped to [0.1 h, 5 h]."""
    if err == 0.0:
        return 5.0 * h
    return h * min(max(0.1, 0.8 * err ** (-1.0 / order)), 5.0)
