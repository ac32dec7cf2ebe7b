from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from saddle_dynamics._consts import FD_STEP
from saddle_dynamics.errors import InvalidModelError
from saddle_dynamics.landscape.catalog import build_evaluators
from saddle_dynamics.landscape.derivatives import central_difference, symmetrize
from saddle_dynamics.landscape.spec import ModelSpec


@dataclass(frozen=True)
class EnergyModel:
    """An analytic landscape exposing E and its derivative tensors up to order 3.

    Models are immutable and their evaluators are pure, so one instance can be shared by
    concurrent trajectory workers.
    """

    dimension: int
    spec: Optional[ModelSpec]
    energy_fn: Callable
    gradient_fn: Callable
    hessian_fn: Callable
    third_fn: Callable
    name: str = ""
    analytic: bool = True

    def energy(self, x) -> float:
        return float(self.energy_fn(np.asarray(x, dtype=float)))

    def gradient(self, x) -> np.ndarray:
        return np.asarray(self.gradient_fn(np.asarray(x, dtype=float)), dtype=float)

    def hessian(self, x) -> np.ndarray:
        return np.asarray(self.hessian_fn(np.asarray(x, dtype=float)), dtype=float)

    def third(self, x) -> np.ndarray:
        return np.asarray(self.third_fn(np.asarray(x, dtype=float)), dtype=float)

    def __repr__(self) -> str:
        return f"EnergyModel(name={self.name!r}, dimension={self.dimension}, analytic={self.analytic})"


def make_model(spec: Union[ModelSpec, dict]) -> EnergyModel:
    """Build the analytic model described by ``spec``.

    Invalid parameters are rejected when the ``ModelSpec`` is validated (``pydantic.ValidationError``,
    a ``ValueError``), with a message naming the violated invariant.
    """
    if not isinstance(spec, ModelSpec):
        spec = ModelSpec.model_validate(spec)
    ev = build_evaluators(spec)
    return EnergyModel(
        dimension=spec.dimension,
        spec=spec,
        energy_fn=ev.energy,
        gradient_fn=ev.gradient,
        hessian_fn=ev.hessian,
        third_fn=ev.third,
        name=spec.variant,
    )


def from_energy(
    energy_fn: Callable[[np.ndarray], float],
    dimension: int,
    h: float = FD_STEP,
    name: str = "user",
) -> EnergyModel:
    """Wrap an energy-only function; derivatives come from nested central differences.

    The Hessian differentiates the finite-difference gradient with step ``10 h`` and the third tensor
    differentiates that Hessian with step ``100 h``; both are symmetrized.
    """
    if dimension < 1:
        raise InvalidModelError(f"dimension must be a positive integer, got {dimension}.")
    if h <= 0:
        raise InvalidModelError(f"Finite-difference step must be positive, got h={h}.")

    def gradient(x):
        return central_difference(energy_fn, x, h)

    def hessian(x):
        return symmetrize(central_difference(gradient, x, 10.0 * h))

    def third(x):
        return symmetrize(central_difference(hessian, x, 100.0 * h))

    return EnergyModel(
        dimension=dimension,
        spec=None,
        energy_fn=lambda x: float(energy_fn(x)),
        gradient_fn=gradient,
        hessian_fn=hessian,
        third_fn=third,
        name=name,
        analytic=False,
    )


_ORDERS = ("energy", "gradient", "hessian", "third")


def evaluate(model: EnergyModel, x, order: int):
    """Return the order-``order`` derivative tensor of ``model`` at ``x`` (0 = energy, 3 = third)."""
    if order not in range(len(_ORDERS)):
        raise ValueError(f"order must be one of 0, 1, 2, 3; got {order}.")
    x = np.asarray(x, dtype=float)
    if x.size != model.dimension:
        raise InvalidModelError(f"Expected a point of dimension {model.dimension}, got shape {x.shape}.")
    if not np.all(np.isfinite(x)):
        raise InvalidModelError(f"Cannot evaluate {model.name} at a non-finite point {x.tolist()}.")
    return getattr(model, _ORDERS[order])(x.reshape(model.dimension))
