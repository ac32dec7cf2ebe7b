"""Validated configuration records and the config-file parser.

Every record rejects unknown keys. ``make_pydantic_parser_fn`` turns any of them into a parser for
JSON, TOML or YAML text.
"""

import sys

# Python versions 3.11+ ship with a version of Tomli: the tomllib standard library module.
# https://pypi.org/project/tomli/
if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

import json
import math
from typing import Callable, Literal, Optional, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from saddle_dynamics.landscape.spec import ModelSpec

Selector = Literal["gradient", "isd", "gad"]
OutputFormat = Literal["csv", "json", "parquet"]


def make_pydantic_parser_fn(pydantic_model: type[BaseModel]) -> Callable[[str], dict]:
    """Return a function that parses config text and validates it against ``pydantic_model``.

    The text is tried as JSON, then TOML, then YAML. The validated record is dumped back to a
    dict so that default values are applied.

    Example usage:

    ```python
    from saddle_dynamics.config import IntegratorConfig, make_pydantic_parser_fn

    parse = make_pydantic_parser_fn(IntegratorConfig)
    cfg = parse('method = "rk4"\\ndt = 1e-4')
    cfg["t_max"]  # 100.0, the default
    ```
    """

    def _parse_config(config_txt: str) -> dict:
        # Try to parse the config as JSON
        try:
            cfg = json.loads(config_txt)
        except json.JSONDecodeError:
            # If JSON parsing fails, try to parse as TOML
            try:
                cfg = tomllib.loads(config_txt)
            except tomllib.TOMLDecodeError:
                # If TOML parsing fails, try to parse as YAML
                try:
                    cfg = yaml.safe_load(config_txt)
                except yaml.YAMLError as e:
                    raise ValueError(
                        "Config parsing failed. Ensure it is valid JSON, TOML, or YAML. "
                        "JSON is the documented format for run configs."
                    ) from e

        result: dict = pydantic_model.model_validate(cfg).model_dump()
        return result

    return _parse_config


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class IntegratorConfig(_Strict):
    """Time stepping, tolerances and event thresholds shared by every flow."""

    method: Literal["rk4", "rk45"] = "rk45"
    dt: float = Field(default=1e-3, gt=0, description="rk4 step, or the initial rk45 step")
    abs_tol: float = Field(default=1e-10, gt=0)
    rel_tol: float = Field(default=1e-8, gt=0)
    dt_min: float = Field(default=1e-12, gt=0)
    dt_max: float = Field(default=0.1, gt=0)
    t_max: float = Field(default=100.0, gt=0)
    tol_g: float = Field(default=1e-8, gt=0, description="convergence threshold on |grad E|")
    tol_gap: float = Field(default=1e-6, gt=0, description="singularity threshold on lambda2 - lambda1")
    blowup_gap: float = Field(default=1e-2, gt=0, description="gap below which a step-size collapse is a blow-up")
    r_max: float = Field(default=10.0, gt=0)
    eps: float = Field(default=0.1, gt=0, description="GAD relaxation parameter")

    @model_validator(mode="after")
    def _check_step_bounds(self) -> "IntegratorConfig":
        if self.dt_min >= self.dt_max:
            raise ValueError(f"dt_min ({self.dt_min}) must be smaller than dt_max ({self.dt_max}).")
        return self


class GridSpec(_Strict):
    """A tensor grid of initial conditions over some coordinates of a base point."""

    bounds: list[tuple[float, float]] = Field(default_factory=lambda: [(-2.0, 2.0), (-1.0, 1.0)])
    resolution: Union[int, list[int]] = 21
    axes: Optional[list[int]] = None
    base: Optional[list[float]] = None

    @model_validator(mode="after")
    def _check_grid(self) -> "GridSpec":
        for lo, hi in self.bounds:
            if not lo < hi:
                raise ValueError(f"Grid bounds must satisfy lo < hi, got ({lo}, {hi}).")
        resolution = self.resolutions
        if len(resolution) != len(self.bounds) or min(resolution) < 1:
            raise ValueError(f"resolution {self.resolution} does not match {len(self.bounds)} scanned axes.")
        if self.axes is not None and len(self.axes) != len(self.bounds):
            raise ValueError(f"axes {self.axes} must list one coordinate per bound ({len(self.bounds)}).")
        return self

    @property
    def resolutions(self) -> list[int]:
        if isinstance(self.resolution, int):
            return [self.resolution] * len(self.bounds)
        return list(self.resolution)


class RegionSpec(_Strict):
    """Sublevel set {|grad E| <= L} to certify, sampled at cell centers of a box."""

    L: float = Field(default=1.0, gt=0)
    bounds: list[tuple[float, float]] = Field(default_factory=lambda: [(-0.6, 0.6), (-0.6, 0.6)])
    resolution: Union[int, list[int]] = 41
    seed_point: list[float] = Field(default_factory=lambda: [0.0, 0.0])

    @model_validator(mode="after")
    def _check_region(self) -> "RegionSpec":
        resolution = self.resolutions
        if len(resolution) != len(self.bounds):
            raise ValueError(f"resolution {self.resolution} does not match {len(self.bounds)} axes.")
        if min(resolution) < 8:
            raise ValueError(f"Region certification needs a resolution of at least 8 per axis, got {resolution}.")
        if len(self.seed_point) != len(self.bounds):
            raise ValueError(f"seed_point {self.seed_point} must have one coordinate per axis ({len(self.bounds)}).")
        for (lo, hi), s in zip(self.bounds, self.seed_point):
            if not lo <= s <= hi:
                raise ValueError(f"seed_point {self.seed_point} lies outside the bounding box {self.bounds}.")
        return self

    @property
    def resolutions(self) -> list[int]:
        if isinstance(self.resolution, int):
            return [self.resolution] * len(self.bounds)
        return list(self.resolution)


class SimulateBlock(_Strict):
    dyn: Selector = "isd"
    x0: Optional[list[float]] = None
    v0: Optional[list[float]] = None

    @field_validator("dyn", mode="before")
    @classmethod
    def _alias_grad(cls, value):
        return "gradient" if value == "grad" else value


class PortraitBlock(_Strict):
    dyn: Selector = "isd"
    grid: GridSpec = Field(default_factory=GridSpec)

    @field_validator("dyn", mode="before")
    @classmethod
    def _alias_grad(cls, value):
        return "gradient" if value == "grad" else value


class SingularitiesBlock(_Strict):
    guesses: list[list[float]] = Field(default_factory=lambda: [[0.1, -0.1]])
    method: Literal["auto", "2d", "nd"] = "auto"


class ReduceBlock(_Strict):
    alpha: float = math.pi / 4
    integrate: bool = False
    t_max: float = Field(default=20.0, gt=0)
    r0: Optional[float] = Field(default=None, gt=0)
    omega0: Optional[float] = None


class CycleBlock(_Strict):
    center: Optional[list[float]] = None
    delta: float = Field(default=0.0, ge=0)


class BenchmarkBlock(_Strict):
    radius: float = Field(default=2.0, gt=0)
    n_points: int = Field(default=25, ge=1)


class CheckDerivsBlock(_Strict):
    x: Optional[list[float]] = None
    h: float = Field(default=1e-5, gt=0)
    n_points: int = Field(default=100, ge=1)
    radius: float = Field(default=2.0, gt=0)
    tol: float = Field(default=1e-5, gt=0)


class OutputConfig(_Strict):
    path: Optional[str] = None
    format: OutputFormat = "json"


class RunConfig(_Strict):
    """Everything one CLI invocation needs: the model, the integrator, a block per command and the output."""

    model: ModelSpec = Field(default_factory=lambda: ModelSpec(variant="DoubleWell2D"))
    integrator: IntegratorConfig = Field(default_factory=IntegratorConfig)
    simulate: SimulateBlock = Field(default_factory=SimulateBlock)
    portrait: PortraitBlock = Field(default_factory=PortraitBlock)
    singularities: SingularitiesBlock = Field(default_factory=SingularitiesBlock)
    reduce: ReduceBlock = Field(default_factory=ReduceBlock)
    cycle: CycleBlock = Field(default_factory=CycleBlock)
    certify: RegionSpec = Field(default_factory=RegionSpec)
    benchmark: BenchmarkBlock = Field(default_factory=BenchmarkBlock)
    check_derivs: CheckDerivsBlock = Field(default_factory=CheckDerivsBlock)
    output: OutputConfig = Field(default_factory=OutputConfig)
    seed: int = 0
    threads: int = Field(default=1, ge=1)
