from typing import Callable

import numpy as np
import scipy.linalg

from saddle_dynamics._consts import DEGENERATE_JACOBIAN_TOL, NEWTON_FD_STEP, NEWTON_MAX_ITER, NEWTON_TOL
from saddle_dynamics._debug import _debug
from saddle_dynamics.errors import DegenerateJacobianError, NoConvergenceError


def fd_jacobian(residual: Callable[[np.ndarray], np.ndarray], z: np.ndarray, h: float) -> np.ndarray:
    n = z.size
    J = np.empty((residual(z).size, n))
    for k in range(n):
        step = np.zeros(n)
        step[k] = h
        J[:, k] = (residual(z + step) - residual(z - step)) / (2.0 * h)
    return J


def newton_fd(
    residual: Callable[[np.ndarray], np.ndarray],
    z0,
    tol: float = NEWTON_TOL,
    max_iter: int = NEWTON_MAX_ITER,
    h: float = NEWTON_FD_STEP,
    det_tol: float = DEGENERATE_JACOBIAN_TOL,
) -> tuple[np.ndarray, int]:
    """Solve ``residual(z) = 0`` by Newton's method with a central-difference Jacobian.

    :return: the root and the number of iterations taken
    :raises DegenerateJacobianError: when ``|det J| < det_tol`` at an iterate
    :raises NoConvergenceError: when ``max_iter`` iterations do not bring ``||F||`` below ``tol``
    """
    z = np.asarray(z0, dtype=float).copy()
    for iteration in range(max_iter + 1):
        F = residual(z)
        norm = float(np.linalg.norm(F))
        _debug(f"newton iteration {iteration}: |F| = {norm:.3e}")
        if not np.isfinite(norm):
            raise NoConvergenceError(f"Newton iterate became non-finite at iteration {iteration}: z = {z.tolist()}")
        if norm < tol:
            return z, iteration
        if iteration == max_iter:
            break
        J = fd_jacobian(residual, z, h)
        det = float(np.linalg.det(J))
        if abs(det) < det_tol:
            raise DegenerateJacobianError(
                f"Newton Jacobian is degenerate at z = {z.tolist()} (|det J| = {abs(det):.3e} < {det_tol:.0e}). "
                "The root is not isolated, e.g. it lies on a line of singularities where the discriminant vanishes."
            )
        z = z - scipy.linalg.solve(J, F)
    raise NoConvergenceError(
        f"Newton did not converge in {max_iter} iterations: |F| = {norm:.3e} >= tol = {tol:.0e} at z = {z.tolist()}."
    )
