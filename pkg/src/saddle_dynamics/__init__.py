"""Idealized saddle dynamics and gentlest ascent dynamics on analytic energy landscapes."""

from saddle_dynamics.landscape import EnergyModel, ModelSpec, make_model

__all__ = ["EnergyModel", "ModelSpec", "make_model"]
