"""Global GAD convergence benchmark on landscapes that are index-1 on a whole ball."""

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

import numpy as np
import pandas as pd

from saddle_dynamics._debug import _timer
from saddle_dynamics.config import IntegratorConfig
from saddle_dynamics.errors import HypothesisError, NumericalFailure
from saddle_dynamics.flows.integrate import integrate
from saddle_dynamics.landscape.model import EnergyModel
from saddle_dynamics.spectral import lowest_pairs

_HYPOTHESIS_RESOLUTION = 21
_SPHERE_SAMPLES = 64


@dataclass
class BenchmarkTable:
    radius: float
    eps: float
    points: np.ndarray
    tags: list[str]
    terminal: np.ndarray

    @property
    def fraction_converged(self) -> float:
        return self.tags.count("ConvergedToSaddle") / len(self.tags)

    def failures(self) -> list[dict]:
        return [
            {"x0": self.points[i].tolist(), "tag": tag}
            for i, tag in enumerate(self.tags)
            if tag != "ConvergedToSaddle"
        ]

    def as_dataframe(self) -> pd.DataFrame:
        columns: dict = {f"x0_{k + 1}": self.points[:, k] for k in range(self.points.shape[1])}
        columns["tag"] = self.tags
        columns.update({f"x_end_{k + 1}": self.terminal[:, k] for k in range(self.terminal.shape[1])})
        return pd.DataFrame(columns)

    def to_dict(self) -> dict:
        return {
            "radius": self.radius,
            "eps": self.eps,
            "n_points": len(self.tags),
            "fraction_converged": self.fraction_converged,
            "failures": self.failures(),
        }

    def to_json(self, path: Optional[Union[str, Path]] = None) -> str:
        text = json.dumps(self.to_dict(), sort_keys=True, indent=2)
        if path is not None:
            Path(path).write_text(text)
        return text


def _cube_grid(dimension: int, half_width: float, per_axis: int) -> np.ndarray:
    axis = np.linspace(-half_width, half_width, per_axis)
    mesh = np.meshgrid(*[axis] * dimension, indexing="ij")
    return np.column_stack([m.ravel() for m in mesh])


def _ball_points(dimension: int, radius: float, n_points: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform samples of the closed ball: Gaussian directions with radii radius * U^(1/N)."""
    directions = rng.standard_normal((n_points, dimension))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    radii = radius * rng.uniform(0.0, 1.0, size=(n_points, 1)) ** (1.0 / dimension)
    return radii * directions


def _sphere_points(dimension: int, radius: float, rng: np.random.Generator) -> np.ndarray:
    if dimension == 1:
        return np.array([[-radius], [radius]])
    if dimension == 2:
        angles = np.linspace(0.0, 2.0 * np.pi, _SPHERE_SAMPLES, endpoint=False)
        return radius * np.column_stack([np.cos(angles), np.sin(angles)])
    directions = rng.standard_normal((_SPHERE_SAMPLES * dimension, dimension))
    return radius * directions / np.linalg.norm(directions, axis=1, keepdims=True)


def check_global_hypotheses(model: EnergyModel, radius: float, seed: int = 0) -> None:
    """Sample the ball |x| <= radius for lambda1 < 0 < lambda2 and |grad E| for coercivity.

    :raises HypothesisError: listing the sampled points that violate the index-1 condition, or the gradient
        norms when the sphere minimum does not exceed the interior minimum
    """
    interior = _cube_grid(model.dimension, radius, _HYPOTHESIS_RESOLUTION)
    interior = interior[np.linalg.norm(interior, axis=1) <= radius]
    violations = []
    for x in interior:
        info = lowest_pairs(model.hessian(x))
        if not info.lambda1 < 0 < info.lambda2:
            violations.append((x.tolist(), info.lambda1, info.lambda2))
    if violations:
        shown = "; ".join(f"x={x} lambda1={l1:.3g} lambda2={l2:.3g}" for x, l1, l2 in violations[:5])
        raise HypothesisError(
            f"{model.name} is not index-1 on the ball of radius {radius}: {len(violations)} of {len(interior)} "
            f"sampled points violate lambda1 < 0 < lambda2 (first: {shown})."
        )
    inner = min(float(np.linalg.norm(model.gradient(x))) for x in interior)
    sphere = _sphere_points(model.dimension, radius, np.random.default_rng(seed))
    outer = min(float(np.linalg.norm(model.gradient(x))) for x in sphere)
    if outer <= inner:
        raise HypothesisError(
            f"|grad E| is not coercive on the ball of radius {radius}: min on the sphere {outer:.6g} "
            f"<= min inside {inner:.6g}."
        )


def benchmark_global(  # noqa: PLR0913
    model: EnergyModel,
    r: float,
    eps: float,
    n_points: int = 25,
    config: Optional[IntegratorConfig] = None,
    threads: int = 1,
    seed: int = 0,
) -> BenchmarkTable:
    """Run GAD with v0 = v1(x0) from ``n_points`` initial points drawn uniformly in the ball |x| <= r.

    The hypotheses are checked first. The points depend only on ``seed``.
    """
    check_global_hypotheses(model, r, seed)
    cfg = (config or IntegratorConfig()).model_copy(update={"eps": eps})
    points = _ball_points(model.dimension, r, n_points, np.random.default_rng(seed))

    def run(x0):
        try:
            traj = integrate(model, "gad", x0, cfg)
        except NumericalFailure as e:
            return type(e).__name__, np.full(model.dimension, np.nan)
        return traj.stop.tag, np.asarray(traj.stop.x)

    print(f"🚀 Running GAD from {len(points)} initial points on {model.name} (eps={eps})")
    with _timer("global benchmark"):
        with ThreadPoolExecutor(max_workers=threads) as executor:
            results = list(executor.map(run, points))
    table = BenchmarkTable(
        radius=r, eps=eps, points=points, tags=[t for t, _ in results], terminal=np.array([x for _, x in results])
    )
    status = "✅" if table.fraction_converged == 1.0 else "⚠️"
    print(f"{status} {table.fraction_converged:.0%} of runs converged to an index-1 saddle")
    return table
