"""Sampled certification of index-1 regions bounded by a gradient-norm level set."""

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

import numpy as np
from scipy import ndimage

from saddle_dynamics._debug import _timer
from saddle_dynamics.config import RegionSpec
from saddle_dynamics.errors import HypothesisError, InvalidModelError
from saddle_dynamics.landscape.model import EnergyModel
from saddle_dynamics.spectral import lowest_pairs


def cell_centers(bounds: list[tuple[float, float]], resolution: list[int]) -> list[np.ndarray]:
    return [lo + (np.arange(n) + 0.5) * (hi - lo) / n for (lo, hi), n in zip(bounds, resolution)]


@dataclass
class RegionCertificate:
    """Result of sampling the connected component of {|grad E| <= L} that contains the seed point.

    The check is evaluated at cell centers only and is therefore numerical evidence at the recorded
    resolution, not a proof. A certificate is valid when every component cell is index-1 and the component
    does not touch the bounding box.
    """

    L: float
    bounds: list[tuple[float, float]]
    resolution: list[int]
    component: np.ndarray
    index1_everywhere: bool
    min_margin: float
    touches_boundary: bool

    @property
    def n_cells(self) -> int:
        return int(self.component.sum())

    @property
    def is_valid(self) -> bool:
        return self.index1_everywhere and not self.touches_boundary

    def points(self) -> np.ndarray:
        """Cell centers of the component, one row per cell."""
        axes = cell_centers(self.bounds, self.resolution)
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.column_stack([m[self.component] for m in mesh])

    def to_dict(self) -> dict:
        return {
            "L": self.L,
            "bounds": [list(b) for b in self.bounds],
            "resolution": self.resolution,
            "n_cells": self.n_cells,
            "cells": np.argwhere(self.component).tolist(),
            "index1_everywhere": self.index1_everywhere,
            "min_margin": self.min_margin,
            "touches_boundary": self.touches_boundary,
            "is_valid": self.is_valid,
        }

    def to_json(self, path: Optional[Union[str, Path]] = None) -> str:
        text = json.dumps(self.to_dict(), sort_keys=True, indent=2)
        if path is not None:
            Path(path).write_text(text)
        return text


def certify_region(model: EnergyModel, spec: RegionSpec) -> RegionCertificate:
    """Flood-fill the sublevel set {|grad E| <= L} from the seed cell and test lambda1 < 0 < lambda2 on it.

    :raises HypothesisError: when the seed cell lies outside the sublevel set
    """
    if len(spec.bounds) != model.dimension:
        raise InvalidModelError(
            f"RegionSpec has {len(spec.bounds)} axes but {model.name} has dimension {model.dimension}."
        )
    resolution = spec.resolutions
    axes = cell_centers(spec.bounds, resolution)
    shape = tuple(resolution)
    grad_norm = np.empty(shape)
    lambda1 = np.empty(shape)
    lambda2 = np.empty(shape)
    with _timer(f"sampling {np.prod(shape)} cells of {model.name}"):
        for idx in np.ndindex(*shape):
            x = np.array([axis[i] for axis, i in zip(axes, idx)])
            info = lowest_pairs(model.hessian(x))
            grad_norm[idx] = np.linalg.norm(model.gradient(x))
            lambda1[idx] = info.lambda1
            lambda2[idx] = info.lambda2

    seed = tuple(
        int(np.clip((s - lo) / (hi - lo) * n, 0, n - 1)) for s, (lo, hi), n in zip(spec.seed_point, spec.bounds, resolution)
    )
    sublevel = grad_norm <= spec.L
    if not sublevel[seed]:
        raise HypothesisError(
            f"The seed point {spec.seed_point} is outside the sublevel set: |grad E| = {grad_norm[seed]:.6g} > L = {spec.L}."
        )
    labels, _ = ndimage.label(sublevel)
    component = labels == labels[seed]

    margin = np.minimum(-lambda1, lambda2)[component]
    touches = any(
        component.take(0, axis=k).any() or component.take(-1, axis=k).any() for k in range(component.ndim)
    )
    return RegionCertificate(
        L=spec.L,
        bounds=[tuple(b) for b in spec.bounds],
        resolution=resolution,
        component=component,
        index1_everywhere=bool(np.all(margin > 0)),
        min_margin=float(margin.min()),
        touches_boundary=bool(touches),
    )
