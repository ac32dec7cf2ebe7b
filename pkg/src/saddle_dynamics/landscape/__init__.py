from .derivatives import DerivativeReport, central_difference, check_derivatives
from .model import EnergyModel, evaluate, from_energy, make_model
from .spec import ModelSpec

__all__ = [
    "DerivativeReport",
    "EnergyModel",
    "ModelSpec",
    "central_difference",
    "check_derivatives",
    "evaluate",
    "from_energy",
    "make_model",
]
