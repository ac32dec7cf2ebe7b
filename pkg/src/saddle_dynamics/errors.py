"""Exceptions raised by saddle_dynamics.

Validation problems derive from ``ValueError`` and numerical failures from ``RuntimeError``,
so callers that only care about that distinction (the CLI exit codes) can catch the builtins.
"""

from typing import Optional, Sequence


class SaddleDynamicsError(Exception):
    """Base class for all errors raised by this package."""


class InvalidModelError(SaddleDynamicsError, ValueError):
    """A landscape was built or evaluated with parameters that violate its invariants."""


class HypothesisError(SaddleDynamicsError, ValueError):
    """The hypotheses required by a certification or benchmark do not hold for the given model."""


class NumericalFailure(SaddleDynamicsError, RuntimeError):
    """Base class for failures of an iterative or time-stepping computation."""


class NoConvergenceError(NumericalFailure):
    pass


class DegenerateJacobianError(NumericalFailure):
    pass


class RankMismatchError(NumericalFailure):
    pass


class DegenerateSpectrumError(NumericalFailure):
    """The two lowest Hessian eigenvalues coincide, so the lowest eigenvector is undefined."""

    def __init__(self, message: str, gap: float = 0.0):
        super().__init__(message)
        self.gap = gap


class StepSizeCollapseError(NumericalFailure):
    pass


class NoCycleError(NumericalFailure):
    pass


class NonFiniteStateError(NumericalFailure):
    """A trajectory produced NaN or infinite values.

    ``trail`` holds the last accepted samples as ``(t, state)`` pairs for post-mortem inspection.
    """

    def __init__(self, message: str, trail: Optional[Sequence[tuple]] = None):
        trail = list(trail or [])
        if trail:
            lines = "\n".join(f"  t={t:.6g} state={list(state)}" for t, state in trail)
            message = f"{message}\nLast accepted samples:\n{lines}"
        super().__init__(message)
        self.trail = trail
