"""Event-aware time integration of the gradient flow, ISD and GAD."""

from dataclasses import dataclass
from typing import Literal, Optional, Union

import numpy as np

from saddle_dynamics._consts import EIGENVECTOR_JUMP_COS, ISOLATED_CROSSING_RTOL
from saddle_dynamics._debug import _debug, _timer
from saddle_dynamics._solvers import error_norm, next_step_size, rk_step
from saddle_dynamics.config import IntegratorConfig
from saddle_dynamics.errors import DegenerateSpectrumError, NonFiniteStateError, StepSizeCollapseError
from saddle_dynamics.flows.fields import GadState, gad_velocity, isd_field
from saddle_dynamics.flows.trajectory import StopEvent, Trajectory
from saddle_dynamics.landscape.model import EnergyModel
from saddle_dynamics.singularity.cubic import CubicCoeffs, discriminant
from saddle_dynamics.spectral import SpectralInfo, align_sign, lowest_pairs

SelectorName = Literal["gradient", "grad", "isd", "gad"]

_TRAIL_LENGTH = 5


def normalize_selector(selector: str) -> str:
    name = selector.lower()
    if name in ("grad", "gradient"):
        return "gradient"
    if name in ("isd", "gad"):
        return name
    raise ValueError(f"Unknown dynamics {selector!r}; expected one of 'gradient', 'isd', 'gad'.")


@dataclass
class _Sample:
    t: float
    x: np.ndarray
    v: np.ndarray
    info: SpectralInfo
    grad_norm: float
    v_err: float


class _Recorder:
    def __init__(self):
        self.samples: list[_Sample] = []

    def append(self, sample: _Sample):
        self.samples.append(sample)

    @property
    def last(self) -> _Sample:
        return self.samples[-1]

    def trail(self) -> list[tuple]:
        return [(s.t, s.x.tolist()) for s in self.samples[-_TRAIL_LENGTH:]]

    def build(self, selector: str, stop: StopEvent, model_name: str) -> Trajectory:
        s = self.samples
        return Trajectory(
            selector=selector,
            t=np.array([p.t for p in s]),
            x=np.array([p.x for p in s]),
            v=np.array([p.v for p in s]),
            grad_norm=np.array([p.grad_norm for p in s]),
            lambda1=np.array([p.info.lambda1 for p in s]),
            lambda2=np.array([p.info.lambda2 for p in s]),
            gap=np.array([p.info.gap for p in s]),
            v_err=np.array([p.v_err for p in s]),
            stop=stop,
            model_name=model_name,
        )


class _Flow:
    """Right-hand side, diagnostics and event rules of one selector on one model."""

    def __init__(self, model: EnergyModel, selector: str, config: IntegratorConfig):
        self.model = model
        self.selector = selector
        self.config = config
        self.n = model.dimension

    def rhs(self, y: np.ndarray) -> np.ndarray:
        if self.selector == "gradient":
            return -self.model.gradient(y)
        if self.selector == "isd":
            field, _ = isd_field(self.model, y)
            return field
        xdot, vdot = gad_velocity(self.model, y[: self.n], y[self.n :], self.config.eps)
        return np.concatenate([xdot, vdot])

    def position(self, y: np.ndarray) -> np.ndarray:
        return y[: self.n]

    def diagnose(self, t: float, y: np.ndarray, v_ref: Optional[np.ndarray]) -> _Sample:
        x = self.position(y).copy()
        info = lowest_pairs(self.model.hessian(x))
        grad_norm = float(np.linalg.norm(self.model.gradient(x)))
        if self.selector == "gad":
            v = y[self.n :].copy()
            v1 = align_sign(info.v1, v)
            return _Sample(t, x, v, info.with_v1(v1), grad_norm, float(np.linalg.norm(v - v1)))
        v1 = align_sign(info.v1, v_ref)
        return _Sample(t, x, v1, info.with_v1(v1), grad_norm, 0.0)

    def check_events(self, recorder: "_Recorder", previous: Optional[_Sample]) -> Optional[StopEvent]:
        """First matching event for the newest sample, in priority order singularity > convergence > domain exit
        > max time.
        """
        cfg = self.config
        sample = recorder.last
        info = sample.info
        x = tuple(sample.x.tolist())
        if self.selector == "isd":
            if info.gap < cfg.tol_gap:
                return self.singular_event(recorder, info.gap)
            if previous is not None and self.n > 1 and float(np.dot(info.v1, previous.info.v1)) < EIGENVECTOR_JUMP_COS:
                return StopEvent("SingularityApproach", sample.t, x, gap=info.gap)
        if sample.grad_norm < cfg.tol_g:
            tag = "ConvergedToSaddle" if info.index == 1 and info.gap > cfg.tol_gap else "ConvergedToCritical"
            return StopEvent(tag, sample.t, x, index=info.index, gap=info.gap)
        if float(np.linalg.norm(sample.x)) > cfg.r_max:
            return StopEvent("DomainExit", sample.t, x)
        if sample.t >= cfg.t_max * (1.0 - 1e-12):
            return StopEvent("MaxTime", sample.t, x)
        return None

    def singular_event(self, recorder: "_Recorder", gap: float) -> StopEvent:
        """BlowUp when an isolated crossing is reached while |grad E| > tol_g, SingularityApproach otherwise.

        Along a line of crossings (vanishing discriminant) the flow lands on the line instead of collapsing
        into a point, which is reported as SingularityApproach.
        """
        last = recorder.last
        x = tuple(last.x.tolist())
        if last.grad_norm > self.config.tol_g and self.isolated_crossing(last.x):
            return StopEvent("BlowUp", last.t, x, gap=gap, t_star=_blow_up_time(recorder))
        return StopEvent("SingularityApproach", last.t, x, gap=gap)

    def isolated_crossing(self, x: np.ndarray) -> bool:
        if self.n < 2:
            return False
        _, eigvecs = np.linalg.eigh(self.model.hessian(x))
        T = self.model.third(x)
        coeffs = CubicCoeffs.from_tensor(T, eigvecs[:, 0], eigvecs[:, 1])
        scale = max(1.0, float(np.linalg.norm(T)))
        return abs(discriminant(coeffs)) > ISOLATED_CROSSING_RTOL * scale**2

    def renormalize(self, y: np.ndarray) -> np.ndarray:
        if self.selector == "gad":
            y = y.copy()
            y[self.n :] /= np.linalg.norm(y[self.n :])
        return y


def _blow_up_time(recorder: _Recorder) -> float:
    """Extrapolate the time at which the gap closes from the last two accepted samples."""
    last = recorder.last
    if len(recorder.samples) < 2:
        return last.t
    prev = recorder.samples[-2]
    rate = (prev.info.gap - last.info.gap) / (last.t - prev.t)
    if rate <= 0:
        return last.t
    return last.t + last.info.gap / rate


def _initial_state(model, selector, x0, v0, v_prev) -> np.ndarray:
    x0 = np.asarray(x0, dtype=float).reshape(model.dimension)
    if not np.all(np.isfinite(x0)):
        raise ValueError(f"Initial position must be finite, got {x0.tolist()}.")
    if selector != "gad":
        return x0
    if v0 is None:
        v0 = align_sign(lowest_pairs(model.hessian(x0)).v1, v_prev)
    state = GadState(x0, np.asarray(v0, dtype=float).reshape(model.dimension))
    return np.concatenate([state.x, state.v])


def integrate(  # noqa: PLR0913
    model: EnergyModel,
    selector: Union[SelectorName, str],
    x0,
    config: Optional[IntegratorConfig] = None,
    v0=None,
    v_prev=None,
) -> Trajectory:
    """Integrate one trajectory of the selected dynamics until a stop event fires.

    :param model: landscape to integrate on
    :param selector: ``"gradient"`` (or ``"grad"``), ``"isd"`` or ``"gad"``
    :param x0: initial position
    :param config: stepper, tolerances and event thresholds; defaults to ``IntegratorConfig()``
    :param v0: initial GAD orientation (unit vector); defaults to the lowest eigenvector at ``x0``
    :param v_prev: sign reference for the lowest eigenvector at ``x0``
    :return: the accepted samples and the classified ``StopEvent``
    :raises NonFiniteStateError: when a step produces NaN or infinite values
    :raises StepSizeCollapseError: when the adaptive step falls below ``dt_min`` away from a singularity
    """
    config = config or IntegratorConfig()
    selector = normalize_selector(selector)
    flow = _Flow(model, selector, config)
    y = _initial_state(model, selector, x0, v0, None if v_prev is None else np.asarray(v_prev, dtype=float))

    recorder = _Recorder()
    t = 0.0
    sample = flow.diagnose(t, y, None if v_prev is None else np.asarray(v_prev, dtype=float))
    recorder.append(sample)
    stop = flow.check_events(recorder, None)

    h = config.dt if config.method == "rk4" else min(config.dt, config.dt_max)
    with _timer(f"integrate {selector} on {model.name}"):
        while stop is None:
            h_step = min(h, config.t_max - t)
            if config.method == "rk45" and h < config.dt_min:
                stop = _step_collapse(flow, recorder, h)
                break
            try:
                result = rk_step(flow.rhs, y, h_step, config.method)
            except DegenerateSpectrumError as e:
                stop = flow.singular_event(recorder, e.gap)
                break
            if not np.all(np.isfinite(result.y)):
                raise NonFiniteStateError(
                    f"{selector} integration on {model.name} produced a non-finite state at t = {t + h_step:.6g}.",
                    trail=recorder.trail(),
                )
            if result.error is not None:
                err = error_norm(result.error, y, result.y, config.abs_tol, config.rel_tol)
                if err > 1.0:
                    h = next_step_size(h_step, err)
                    continue
                if h_step == h:
                    h = min(next_step_size(h_step, err), config.dt_max)
            y = flow.renormalize(result.y)
            t = config.t_max if config.t_max - (t + h_step) <= 1e-12 * config.t_max else t + h_step
            previous = recorder.last
            sample = flow.diagnose(t, y, previous.v)
            recorder.append(sample)
            stop = flow.check_events(recorder, previous)

    _debug(f"{selector} stopped with {stop.tag} after {len(recorder.samples)} samples at t = {stop.t:.6g}")
    return recorder.build(selector, stop, model.name)


def _step_collapse(flow: _Flow, recorder: _Recorder, h: float) -> StopEvent:
    cfg = flow.config
    last = recorder.last
    if flow.selector == "isd" and last.info.gap < cfg.blowup_gap:
        return flow.singular_event(recorder, last.info.gap)
    raise StepSizeCollapseError(
        f"{flow.selector} step size collapsed to {h:.3e} < dt_min = {cfg.dt_min:.0e} at t = {last.t:.6g}, "
        f"x = {last.x.tolist()} (gap = {last.info.gap:.3e}, |grad E| = {last.grad_norm:.3e}) without the "
        "signature of a singularity (gap below blowup_gap)."
    )
