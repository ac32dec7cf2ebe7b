"""Measurement of the quasi-periodic GAD orbit around an attractive singularity."""

import json
import math
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Optional, Union

import numpy as np
from scipy.integrate import trapezoid

from saddle_dynamics._consts import CYCLE_BURN_IN, CYCLE_ESCAPE_FACTOR, CYCLE_WINDOW
from saddle_dynamics._debug import _debug
from saddle_dynamics.config import IntegratorConfig
from saddle_dynamics.errors import NoCycleError
from saddle_dynamics.flows.integrate import integrate
from saddle_dynamics.landscape.model import EnergyModel
from saddle_dynamics.reduced import fixed_points, isotropic_part, isotropic_reduction, predicted_radius
from saddle_dynamics.singularity import SingularityReport, assemble_report, rotation


@dataclass(frozen=True)
class CycleMeasurement:
    """Statistics of |x(t) - z| over the measurement window, next to the predicted orbit radius."""

    center: list[float]
    eps: float
    delta: float
    burn_in: float
    window: float
    r_mean: float
    r_min: float
    r_max: float
    predicted: float
    xc_max: float
    reduced_alpha: float
    reduced_eps: float
    n_samples: int

    @property
    def width(self) -> float:
        return self.r_max - self.r_min

    @property
    def deviation(self) -> float:
        return abs(self.r_mean - self.predicted)

    @property
    def deviation_ratio(self) -> float:
        """Deviation in units of eps (eps + delta), the scale of the orbit-radius error bound."""
        return self.deviation / (self.eps * (self.eps + self.delta))

    def to_dict(self) -> dict:
        return {**asdict(self), "width": self.width, "deviation": self.deviation, "deviation_ratio": self.deviation_ratio}

    def to_json(self, path: Optional[Union[str, Path]] = None) -> str:
        text = json.dumps(self.to_dict(), sort_keys=True, indent=2)
        if path is not None:
            Path(path).write_text(text)
        return text


def cycle_initial_state(report: SingularityReport, eps: float, theta0: float = 0.0) -> tuple[np.ndarray, np.ndarray]:
    """Initial (x0, v0) on the predicted orbit with the orientation of the stable reduced fixed point.

    Positions are rotated by the angle of A's isotropic part so the local problem is the canonical one; there
    the fixed point prescribes omega0 = 2 phi0 - theta0, i.e. phi0 = (omega0 + theta0) / 2.
    """
    _, t, _ = isotropic_part(report.A)
    alpha_r, eps_r = isotropic_reduction(report.A, report.alpha, eps, report.grad_norm)
    fp = fixed_points(alpha_r)
    if fp.stable_omega is None:
        raise ValueError(f"The reduced angle {alpha_r:.6g} has sin(alpha) = 0; the stable orbit is undecided.")
    radius = predicted_radius(alpha_r, eps_r)
    y0 = radius * np.array([math.cos(theta0), math.sin(theta0)])
    phi0 = 0.5 * (fp.stable_omega + theta0)
    plane = report.frame[:, :2]
    x0 = report.z + plane @ (rotation(-t) @ y0)
    v0 = plane @ np.array([math.cos(phi0), math.sin(phi0)])
    return x0, v0


def measure_cycle(  # noqa: PLR0913
    model: EnergyModel,
    z,
    eps: float,
    delta: float = 0.0,
    config: Optional[IntegratorConfig] = None,
    restarts: int = 0,
    seed: int = 0,
) -> CycleMeasurement:
    """Run GAD from the predicted orbit around the singularity ``z`` and measure the annulus it settles in.

    The run lasts a burn-in of 50 eps followed by a window of 100 eps. With ``restarts > 0``, failed attempts
    are retried from random position angles on the predicted orbit.

    :raises NoCycleError: when the trajectory leaves 10 predicted radii or stops before the end of the window
    """
    report = assemble_report(model, z)
    alpha_r, eps_r = isotropic_reduction(report.A, report.alpha, eps, report.grad_norm)
    predicted = predicted_radius(alpha_r, eps_r)
    burn_in, window = CYCLE_BURN_IN * eps, CYCLE_WINDOW * eps
    base = config or IntegratorConfig()
    cfg = base.model_copy(update={"eps": eps, "t_max": burn_in + window})
    rng = np.random.default_rng(seed)

    theta0, attempt = 0.0, 0
    while True:
        x0, v0 = cycle_initial_state(report, eps, theta0)
        try:
            return _measure(model, report, x0, v0, cfg, eps, delta, burn_in, window, predicted, alpha_r, eps_r)
        except NoCycleError as e:
            if attempt >= restarts:
                raise
            attempt += 1
            _debug(f"cycle attempt {attempt} failed ({e}); restarting")
            theta0 = float(rng.uniform(0.0, 2.0 * math.pi))


def _measure(model, report, x0, v0, cfg, eps, delta, burn_in, window, predicted, alpha_r, eps_r):  # noqa: PLR0913
    traj = integrate(model, "gad", x0, cfg, v0=v0)
    offsets = traj.x - report.z
    distance = np.linalg.norm(offsets, axis=1)
    if distance.max() > CYCLE_ESCAPE_FACTOR * predicted:
        raise NoCycleError(
            f"GAD left the orbit neighbourhood: max |x - z| = {distance.max():.3e} > "
            f"{CYCLE_ESCAPE_FACTOR:g} x predicted radius {predicted:.3e}."
        )
    if traj.stop.tag != "MaxTime":
        raise NoCycleError(f"GAD stopped with {traj.stop.tag} at t = {traj.stop.t:.6g} before the measurement window ended.")

    in_window = traj.t >= burn_in
    t, r = traj.t[in_window], distance[in_window]
    converging = offsets[in_window] @ report.frame[:, 2:]
    r_mean = trapezoid(r, t) / (t[-1] - t[0]) if t.size > 1 else float(r.mean())
    return CycleMeasurement(
        center=report.z.tolist(),
        eps=eps,
        delta=delta,
        burn_in=burn_in,
        window=window,
        r_mean=float(r_mean),
        r_min=float(r.min()),
        r_max=float(r.max()),
        predicted=predicted,
        xc_max=float(np.linalg.norm(converging, axis=1).max()) if converging.shape[1] else 0.0,
        reduced_alpha=alpha_r,
        reduced_eps=eps_r,
        n_samples=int(in_window.sum()),
    )
