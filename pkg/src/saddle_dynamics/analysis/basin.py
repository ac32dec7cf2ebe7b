"""Grids of initial conditions labelled by the stop event their trajectory ends with."""

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

import numpy as np
import pandas as pd

from saddle_dynamics._debug import _debug, _timer
from saddle_dynamics.config import GridSpec, IntegratorConfig
from saddle_dynamics.errors import NumericalFailure
from saddle_dynamics.flows.integrate import integrate, normalize_selector
from saddle_dynamics.landscape.model import EnergyModel

LEGEND = {
    "ConvergedToSaddle": 0,
    "ConvergedToCritical": 1,
    "SingularityApproach": 2,
    "BlowUp": 3,
    "DomainExit": 4,
    "MaxTime": 5,
    "Failed": 6,
}


@dataclass
class BasinMap:
    """One label per grid cell, in row-major order of the scanned axes."""

    axes: list[np.ndarray]
    scanned: list[int]
    points: np.ndarray
    labels: list[str]
    terminal: np.ndarray
    messages: list[str]

    def counts(self) -> dict[str, int]:
        return {tag: self.labels.count(tag) for tag in LEGEND if tag in self.labels}

    def label_grid(self) -> np.ndarray:
        codes = np.array([LEGEND[label] for label in self.labels])
        return codes.reshape([axis.size for axis in self.axes])

    def as_dataframe(self) -> pd.DataFrame:
        columns: dict = {}
        for k in range(self.points.shape[1]):
            columns[f"x0_{k + 1}"] = self.points[:, k]
        columns["label"] = [LEGEND[label] for label in self.labels]
        columns["tag"] = self.labels
        for k in range(self.terminal.shape[1]):
            columns[f"x_end_{k + 1}"] = self.terminal[:, k]
        return pd.DataFrame(columns)

    def to_csv(self, path: Optional[Union[str, Path]] = None) -> Optional[str]:
        return self.as_dataframe().to_csv(path, index=False, float_format="%.17g")

    def to_dict(self) -> dict:
        return {
            "legend": LEGEND,
            "axes": [axis.tolist() for axis in self.axes],
            "scanned": self.scanned,
            "counts": self.counts(),
            "labels": self.labels,
            "messages": {str(i): m for i, m in enumerate(self.messages) if m},
        }

    def to_json(self, path: Optional[Union[str, Path]] = None) -> str:
        text = json.dumps(self.to_dict(), sort_keys=True, indent=2)
        if path is not None:
            Path(path).write_text(text)
        return text


def grid_points(model: EnergyModel, grid: GridSpec) -> tuple[list[np.ndarray], list[int], np.ndarray]:
    """Tensor grid of initial conditions; unscanned coordinates are taken from ``grid.base``."""
    scanned = grid.axes if grid.axes is not None else list(range(len(grid.bounds)))
    if max(scanned) >= model.dimension:
        raise ValueError(f"Grid scans axes {scanned} but {model.name} has dimension {model.dimension}.")
    base = np.zeros(model.dimension) if grid.base is None else np.asarray(grid.base, dtype=float)
    axes = [np.linspace(lo, hi, n) for (lo, hi), n in zip(grid.bounds, grid.resolutions)]
    mesh = np.meshgrid(*axes, indexing="ij")
    points = np.tile(base, (mesh[0].size, 1))
    for k, axis in enumerate(scanned):
        points[:, axis] = mesh[k].ravel()
    return axes, scanned, points


def basin_scan(  # noqa: PLR0913
    model: EnergyModel,
    selector: str,
    grid: GridSpec,
    config: Optional[IntegratorConfig] = None,
    threads: int = 1,
    v0=None,
) -> BasinMap:
    """Integrate one trajectory per grid cell and label the cell with its stop event.

    Cells whose integration raises a numerical failure are labelled ``"Failed"`` with the message kept.
    Results are merged by cell index, so the map does not depend on ``threads``.
    """
    selector = normalize_selector(selector)
    config = config or IntegratorConfig()
    axes, scanned, points = grid_points(model, grid)

    def run_cell(x0):
        try:
            traj = integrate(model, selector, x0, config, v0=v0)
        except (NumericalFailure, ValueError) as e:
            return "Failed", np.full(model.dimension, np.nan), str(e)
        return traj.stop.tag, np.asarray(traj.stop.x), ""

    print(f"📊 Scanning {len(points)} initial conditions with {selector} on {model.name}")
    with _timer("basin scan"):
        with ThreadPoolExecutor(max_workers=threads) as executor:
            results = list(executor.map(run_cell, points))
    basin = BasinMap(
        axes=axes,
        scanned=scanned,
        points=points,
        labels=[r[0] for r in results],
        terminal=np.array([r[1] for r in results]),
        messages=[r[2] for r in results],
    )
    _debug(f"basin counts: {basin.counts()}")
    return basin
