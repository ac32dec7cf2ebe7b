"""Central finite differences: the fallback for energy-only models and the oracle for analytic ones."""

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from saddle_dynamics._consts import FD_STEP


def central_difference(fn: Callable[[np.ndarray], object], x: np.ndarray, h: float) -> np.ndarray:
    """Differentiate ``fn`` at ``x``; the derivative direction is appended as the last axis."""
    x = np.asarray(x, dtype=float)
    columns = []
    for k in range(x.size):
        step = np.zeros_like(x)
        step[k] = h
        columns.append((np.asarray(fn(x + step), dtype=float) - np.asarray(fn(x - step), dtype=float)) / (2.0 * h))
    return np.stack(columns, axis=-1)


def symmetrize(tensor: np.ndarray) -> np.ndarray:
    """Average a square matrix or cubic 3-tensor over all index permutations."""
    if tensor.ndim == 2:
        return 0.5 * (tensor + tensor.T)
    perms = [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)]
    return sum(tensor.transpose(p) for p in perms) / 6.0


@dataclass
class DerivativeReport:
    """Max relative discrepancy between each analytic order-k tensor and the finite differences of order k-1.

    The relative error is ``max|fd - analytic| / max(1, max|analytic|)``.
    """

    x: list[float]
    h: float
    errors: dict[int, float] = field(default_factory=dict)

    def passed(self, tol: float = 1e-5) -> bool:
        return all(err < tol for err in self.errors.values())

    @property
    def max_error(self) -> float:
        return max(self.errors.values())


def check_derivatives(model, x, h: float = FD_STEP) -> DerivativeReport:
    """Compare ``model``'s derivative evaluators against central differences of the next-lower order.

    :param model: an ``EnergyModel``
    :param x: point of comparison
    :param h: finite-difference step; a non-positive or non-finite step falls back to ``FD_STEP`` with a warning
    :return: a ``DerivativeReport`` carrying the relative error for orders 1, 2 and 3
    """
    if not 0 < h < math.inf:
        print(f"⚠️ Finite-difference step h={h} is not a positive number; using h={FD_STEP} instead")
        h = FD_STEP
    x = np.asarray(x, dtype=float).reshape(model.dimension)
    lower = [model.energy, model.gradient, model.hessian]
    upper = [model.gradient, model.hessian, model.third]
    report = DerivativeReport(x=x.tolist(), h=h)
    for order, (lo, hi) in enumerate(zip(lower, upper), start=1):
        analytic = np.asarray(hi(x), dtype=float)
        fd = central_difference(lo, x, h).reshape(analytic.shape)
        scale = max(1.0, float(np.abs(analytic).max(initial=0.0)))
        report.errors[order] = float(np.abs(fd - analytic).max(initial=0.0)) / scale
    return report
