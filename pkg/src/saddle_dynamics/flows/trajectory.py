import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal, Optional, Union

import numpy as np
import pandas as pd

StopTag = Literal[
    "ConvergedToSaddle",
    "ConvergedToCritical",
    "SingularityApproach",
    "BlowUp",
    "DomainExit",
    "MaxTime",
]


def _finite_or_none(value):
    if value is None:
        return None
    value = float(value)
    return value if math.isfinite(value) else None


@dataclass(frozen=True)
class StopEvent:
    """Why a trajectory stopped.

    ``x`` is the terminal point (x* for convergence, the last accepted point otherwise). ``index`` is set for
    convergence events, ``gap`` for singularity events and ``t_star`` for blow-up.
    """

    tag: StopTag
    t: float
    x: tuple[float, ...]
    index: Optional[int] = None
    gap: Optional[float] = None
    t_star: Optional[float] = None

    @property
    def converged(self) -> bool:
        return self.tag in ("ConvergedToSaddle", "ConvergedToCritical")

    @property
    def singular(self) -> bool:
        return self.tag in ("SingularityApproach", "BlowUp")

    def payload(self) -> dict:
        payload: dict = {"t": self.t, "x": list(self.x)}
        if self.index is not None:
            payload["index"] = self.index
        if self.gap is not None:
            payload["gap"] = _finite_or_none(self.gap)
        if self.t_star is not None:
            payload["t_star"] = self.t_star
        return payload

    def to_dict(self) -> dict:
        return {"tag": self.tag, "payload": self.payload()}


@dataclass
class Trajectory:
    """Accepted samples of one integration plus its ``StopEvent``.

    Per-sample arrays share their first axis with ``t``. ``v`` holds the GAD orientation, or the sign-aligned
    lowest eigenvector for the gradient flow and the ISD (whose ``v_err`` is then 0).
    """

    selector: str
    t: np.ndarray
    x: np.ndarray
    v: np.ndarray
    grad_norm: np.ndarray
    lambda1: np.ndarray
    lambda2: np.ndarray
    gap: np.ndarray
    v_err: np.ndarray
    stop: StopEvent
    model_name: str = ""
    extras: dict = field(default_factory=dict)

    @property
    def dimension(self) -> int:
        return self.x.shape[1]

    @property
    def n_samples(self) -> int:
        return self.t.size

    @property
    def x_final(self) -> np.ndarray:
        return self.x[-1]

    def sample_at(self, t: float) -> np.ndarray:
        """Position at time ``t`` by linear interpolation between accepted samples."""
        if not self.t[0] <= t <= self.t[-1]:
            raise ValueError(f"t = {t} is outside the sampled interval [{self.t[0]}, {self.t[-1]}].")
        return np.array([np.interp(t, self.t, self.x[:, k]) for k in range(self.dimension)])

    def as_dataframe(self) -> pd.DataFrame:
        columns: dict = {"t": self.t}
        for k in range(self.dimension):
            columns[f"x_{k + 1}"] = self.x[:, k]
        for k in range(self.dimension):
            columns[f"v_{k + 1}"] = self.v[:, k]
        columns.update(
            grad_norm=self.grad_norm, lambda1=self.lambda1, lambda2=self.lambda2, gap=self.gap, v_err=self.v_err
        )
        return pd.DataFrame(columns)

    def to_csv(self, path: Optional[Union[str, Path]] = None) -> Optional[str]:
        """CSV with '.' decimals and 17 significant digits; returns the text when ``path`` is None."""
        return self.as_dataframe().to_csv(path, index=False, float_format="%.17g")

    def to_dict(self) -> dict:
        df = self.as_dataframe()
        samples = [{k: _finite_or_none(v) for k, v in row.items()} for row in df.to_dict(orient="records")]
        return {"selector": self.selector, "model": self.model_name, "samples": samples, "stop": self.stop.to_dict()}

    def to_json(self, path: Optional[Union[str, Path]] = None) -> str:
        text = json.dumps(self.to_dict(), sort_keys=True, indent=2)
        if path is not None:
            Path(path).write_text(text)
        return text

    def to_parquet(self, path: Union[str, Path]) -> None:
        self.as_dataframe().to_parquet(path, index=False)
