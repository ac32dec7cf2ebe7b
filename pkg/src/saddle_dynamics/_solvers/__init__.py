"""Functions/classes/consts in this module are private.

They should not be used directly by users.

The APIs are not stable and will change without notice.
"""

from .newton import newton_fd
from .runge_kutta import StepResult, error_norm, next_step_size, rk_step

__all__ = ["StepResult", "error_norm", "newton_fd", "next_step_size", "rk_step"]
