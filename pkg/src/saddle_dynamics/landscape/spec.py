"""Pydantic records describing the builtin energy landscapes.

A ``ModelSpec`` serializes to ``{"variant": ..., "params": {...}}``. The ``params`` dict is validated
against the parameter record of its variant and dumped back, so defaults are always filled in and
unknown keys are rejected.
"""

import json
import math
from typing import Any, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

Variant = Literal[
    "DoubleWell1D",
    "DoubleWell2D",
    "CoerciveQuartic",
    "CubicSingularity",
    "IsotropicCanonical",
    "MultiDE0",
    "Perturbed",
    "Quadratic",
    "CubicBump",
]

CANONICAL_PLANE_CUBIC = (3.0, 0.0, 1.0, 0.0)


def _square_symmetric(matrix: Any, name: str) -> np.ndarray:
    arr = np.asarray(matrix, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"{name} must be a square matrix, got shape {arr.shape}.")
    if not np.array_equal(arr, arr.T):
        raise ValueError(f"{name} must be symmetric; max |{name} - {name}^T| = {np.abs(arr - arr.T).max():.3e}.")
    return arr


class _Params(BaseModel):
    model_config = ConfigDict(extra="forbid")


class NoParams(_Params):
    pass


class DoubleWell2DParams(_Params):
    alpha: float = Field(default=2.0, gt=0)


class CubicSingularityParams(_Params):
    alpha: float = math.pi / 4
    lam: float = 1.0
    s: float = 1.0


class IsotropicCanonicalParams(_Params):
    alpha: float = math.pi / 4
    lam: float = 1.0


class MultiDE0Params(_Params):
    """E = cos a0 x1 + sin a0 x2 + (l0/2)(x1^2 + x2^2) + C(x1, x2) + 1/2 H0[xc, xc] + 1/6 G0[xc, xc, xc].

    ``plane_cubic`` holds (E111, E112, E122, E222) of the in-plane cubic C; the default is
    1/2 (x1^3 + x1 x2^2). ``G0`` is a symmetric tensor over the coordinates x3..xN.
    """

    alpha0: float = math.pi / 4
    lambda0: float = 1.0
    H0: list[list[float]] = Field(default_factory=lambda: [[1.1]])
    G0: Optional[list[list[list[float]]]] = None
    plane_cubic: tuple[float, float, float, float] = CANONICAL_PLANE_CUBIC

    @model_validator(mode="after")
    def _check_invariants(self) -> "MultiDE0Params":
        if len(self.H0) == 0:
            if self.G0:
                raise ValueError("MultiDE0 with an empty H0 has no converging coordinates, so G0 must be empty.")
            return self
        H0 = _square_symmetric(self.H0, "H0")
        floor = max(self.lambda0, 0.0)
        smallest = float(np.linalg.eigvalsh(H0).min())
        if smallest <= floor:
            raise ValueError(
                "MultiDE0 requires H0 > max(lambda0, 0) * I so that lambda0 is the lowest eigenvalue "
                f"at the origin and the converging coordinates decay. Got smallest eigenvalue of H0 = {smallest:.6g} "
                f"<= max(lambda0, 0) = {floor:.6g}."
            )
        if self.G0 is not None:
            G0 = np.asarray(self.G0, dtype=float)
            m = H0.shape[0]
            if G0.shape != (m, m, m):
                raise ValueError(f"G0 must have shape {(m, m, m)} to match H0, got {G0.shape}.")
            for axes in [(1, 0, 2), (0, 2, 1), (2, 1, 0)]:
                if not np.array_equal(G0, G0.transpose(axes)):
                    raise ValueError("G0 must be symmetric under all index permutations.")
        return self


class QuadraticParams(_Params):
    H: list[list[float]] = Field(default_factory=lambda: [[-1.0, 0.0], [0.0, 2.0]])
    b: Optional[list[float]] = None

    @model_validator(mode="after")
    def _check_shapes(self) -> "QuadraticParams":
        H = _square_symmetric(self.H, "H")
        if self.b is not None and len(self.b) != H.shape[0]:
            raise ValueError(f"Quadratic linear term b has length {len(self.b)}, expected {H.shape[0]}.")
        return self


class CubicBumpParams(_Params):
    """Product of coordinate cubics, prod_i (c0 + c1 x_i + c2 x_i^2 + c3 x_i^3)."""

    coeffs: tuple[float, float, float, float] = (1.0, 1.0, 1.0, 1.0)
    dimension: Optional[int] = Field(default=None, ge=1)


class PerturbedParams(_Params):
    base: "ModelSpec"
    delta: float = Field(default=0.0, ge=0)
    perturbation: "ModelSpec" = Field(default_factory=lambda: ModelSpec(variant="CubicBump"))

    @model_validator(mode="after")
    def _match_dimensions(self) -> "PerturbedParams":
        n = self.base.dimension
        pert = self.perturbation
        if pert.variant == "CubicBump" and pert.params.get("dimension") is None:
            self.perturbation = ModelSpec(variant="CubicBump", params={**pert.params, "dimension": n})
        elif pert.dimension != n:
            raise ValueError(
                f"Perturbation dimension {pert.dimension} does not match the base model dimension {n}."
            )
        return self


PARAMS_BY_VARIANT: dict[str, type[_Params]] = {
    "DoubleWell1D": NoParams,
    "DoubleWell2D": DoubleWell2DParams,
    "CoerciveQuartic": NoParams,
    "CubicSingularity": CubicSingularityParams,
    "IsotropicCanonical": IsotropicCanonicalParams,
    "MultiDE0": MultiDE0Params,
    "Perturbed": PerturbedParams,
    "Quadratic": QuadraticParams,
    "CubicBump": CubicBumpParams,
}

# Parameter that `--alpha` on the command line maps to, per variant.
ANGLE_PARAM = {
    "DoubleWell2D": "alpha",
    "CubicSingularity": "alpha",
    "IsotropicCanonical": "alpha",
    "MultiDE0": "alpha0",
}


class ModelSpec(BaseModel):
    """Identifier plus parameter record of a builtin landscape."""

    model_config = ConfigDict(extra="forbid")

    variant: Variant
    params: dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _validate_params(self) -> "ModelSpec":
        params_model = PARAMS_BY_VARIANT[self.variant]
        self.params = params_model.model_validate(self.params).model_dump()
        return self

    @property
    def typed_params(self) -> _Params:
        return PARAMS_BY_VARIANT[self.variant].model_validate(self.params)

    @property
    def dimension(self) -> int:
        p = self.params
        if self.variant == "DoubleWell1D":
            return 1
        if self.variant == "MultiDE0":
            return 2 + len(p["H0"])
        if self.variant == "Quadratic":
            return len(p["H"])
        if self.variant == "CubicBump":
            return p["dimension"] or 2
        if self.variant == "Perturbed":
            return ModelSpec.model_validate(p["base"]).dimension
        return 2

    def to_json(self) -> str:
        """Canonical JSON text (sorted keys), stable under a parse/serialize round trip."""
        return json.dumps(self.model_dump(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ModelSpec":
        return cls.model_validate_json(text)


PerturbedParams.model_rebuild()
