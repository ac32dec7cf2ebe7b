from .fields import (
    GadState,
    gad_field,
    gradient_flow_field,
    isd_field,
    isd_jacobian_at_saddle,
)
from .integrate import integrate
from .trajectory import StopEvent, Trajectory

__all__ = [
    "GadState",
    "StopEvent",
    "Trajectory",
    "gad_field",
    "gradient_flow_field",
    "integrate",
    "isd_field",
    "isd_jacobian_at_saddle",
]
