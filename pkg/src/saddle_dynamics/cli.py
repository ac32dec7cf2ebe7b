"""Command-line front end: one subcommand per analysis, configured by a JSON file and/or flags.

Exit codes: 0 on success, 2 on invalid input (schema or invariant violations), 3 on numerical failure.
"""

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional

import numpy as np
import pandas as pd
import pydantic

from saddle_dynamics.analysis import basin_scan, benchmark_global, certify_region, measure_cycle
from saddle_dynamics.config import RunConfig, make_pydantic_parser_fn
from saddle_dynamics.errors import NumericalFailure
from saddle_dynamics.flows import integrate
from saddle_dynamics.landscape import check_derivatives, make_model
from saddle_dynamics.landscape.spec import ANGLE_PARAM
from saddle_dynamics.reduced import (
    ReducedState,
    fixed_points,
    integrate_reduced,
)
from saddle_dynamics.singularity import locate, locate_2d, locate_nd

COMMANDS = ("simulate", "portrait", "singularities", "reduce", "cycle", "certify", "benchmark", "check-derivs")

MODEL_ALIASES = {
    "doublewell1d": "DoubleWell1D",
    "doublewell2d": "DoubleWell2D",
    "coercive": "CoerciveQuartic",
    "coercivequartic": "CoerciveQuartic",
    "cubic": "CubicSingularity",
    "cubicsingularity": "CubicSingularity",
    "isotropic": "IsotropicCanonical",
    "isotropiccanonical": "IsotropicCanonical",
    "multide0": "MultiDE0",
    "quadratic": "Quadratic",
    "perturbed": "Perturbed",
    "cubicbump": "CubicBump",
}

# Named parameter sets that reproduce specific scenarios.
MODEL_PRESETS = {
    "rotated": {
        "variant": "MultiDE0",
        "params": {
            "alpha0": 3 * math.pi / 4,
            "lambda0": 1.0,
            "H0": [[1.1]],
            "G0": [[[6.0]]],
            "plane_cubic": [0.0, 1.0, 0.0, 3.0],
        },
    },
}


@dataclass
class Artifact:
    payload: object
    table: Optional[pd.DataFrame] = None


def _floats(text: str) -> list[float]:
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from e


def _fmt_coords(x) -> str:
    # normalize -0.000000 to 0.000000
    return ",".join(f"{(0.0 if abs(v) < 5e-7 else v):.6f}" for v in x)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="run config file (JSON; TOML and YAML also accepted)")
    common.add_argument("--model", help="model variant or alias, e.g. doublewell2d, cubic, coercive, rotated")
    common.add_argument("--dyn", choices=("grad", "gradient", "isd", "gad"), help="dynamics to integrate")
    common.add_argument("--eps", type=float, help="GAD relaxation parameter")
    common.add_argument(
        "--delta", type=float, help="perturbation size; wraps a non-Perturbed model in Perturbed with the default bump"
    )
    common.add_argument("--alpha", type=float, help="gradient angle of the model and of the reduced system")
    common.add_argument("--x0", type=_floats, help="initial point / guess / center, comma-separated")
    common.add_argument("--v0", type=_floats, help="initial GAD orientation, comma-separated")
    common.add_argument("--tmax", type=float, help="integration horizon")
    common.add_argument("--out", type=Path, help="artifact path; standard output when omitted")
    common.add_argument("--format", choices=("csv", "json", "parquet"), help="artifact format")
    common.add_argument("--threads", type=int, help="worker threads for grid scans")
    common.add_argument("--seed", type=int, help="random seed")
    common.add_argument("--dry-run", action="store_true", help="print the resolved config and exit")

    parser = argparse.ArgumentParser(prog="saddle-dynamics", description="Saddle-search dynamics toolkit.")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        subparsers.add_parser(command, parents=[common])
    return parser


def _resolve_model(name: str, current: dict) -> dict:
    key = name.lower()
    if key in MODEL_PRESETS:
        return json.loads(json.dumps(MODEL_PRESETS[key]))
    variant = MODEL_ALIASES.get(key, name)
    if variant == current.get("variant"):
        return current
    return {"variant": variant, "params": {}}


def _set_angle(model: dict, alpha: float) -> None:
    if model["variant"] == "Perturbed":
        _set_angle(model["params"]["base"], alpha)
        return
    name = ANGLE_PARAM.get(model["variant"])
    if name is None:
        raise ValueError(f"--alpha does not apply to model {model['variant']}.")
    model.setdefault("params", {})[name] = alpha


def _with_delta(model: dict, delta: float) -> dict:
    """Apply delta to a Perturbed model, or wrap any other model in Perturbed with the default bump."""
    if model["variant"] == "Perturbed":
        model.setdefault("params", {})["delta"] = delta
        return model
    return {"variant": "Perturbed", "params": {"base": model, "delta": delta}}


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Merge the config file with flag overrides and validate the result."""
    if args.config is not None:
        cfg = make_pydantic_parser_fn(RunConfig)(args.config.read_text())
    else:
        cfg = RunConfig().model_dump()

    if args.model is not None:
        cfg["model"] = _resolve_model(args.model, cfg["model"])
    if args.alpha is not None:
        if args.command == "reduce":
            cfg["reduce"]["alpha"] = args.alpha
        else:
            _set_angle(cfg["model"], args.alpha)
    if args.delta is not None:
        cfg["cycle"]["delta"] = args.delta
        cfg["model"] = _with_delta(cfg["model"], args.delta)
    if args.eps is not None:
        cfg["integrator"]["eps"] = args.eps
    if args.tmax is not None:
        cfg["integrator"]["t_max"] = args.tmax
        cfg["reduce"]["t_max"] = args.tmax
    if args.dyn is not None:
        cfg["simulate"]["dyn"] = args.dyn
        cfg["portrait"]["dyn"] = args.dyn
    if args.x0 is not None:
        target = {"singularities": ("singularities", "guesses"), "cycle": ("cycle", "center")}
        target.update({"check-derivs": ("check_derivs", "x")})
        block, key = target.get(args.command, ("simulate", "x0"))
        cfg[block][key] = [args.x0] if args.command == "singularities" else args.x0
    if args.v0 is not None:
        cfg["simulate"]["v0"] = args.v0
    if args.out is not None:
        cfg["output"]["path"] = str(args.out)
    if args.format is not None:
        cfg["output"]["format"] = args.format
    if args.threads is not None:
        cfg["threads"] = args.threads
    if args.seed is not None:
        cfg["seed"] = args.seed
    return RunConfig.model_validate(cfg)


def _simulate(cfg: RunConfig) -> tuple[str, Artifact]:
    model = make_model(cfg.model)
    block = cfg.simulate
    if block.x0 is None:
        raise ValueError("simulate needs an initial point: pass --x0 or set simulate.x0 in the config.")
    v0 = None if block.v0 is None else np.asarray(block.v0) / np.linalg.norm(block.v0)
    traj = integrate(model, block.dyn, block.x0, cfg.integrator, v0=v0)
    summary = f"{traj.stop.tag} x*={_fmt_coords(traj.stop.x)}"
    if traj.stop.t_star is not None:
        summary += f" t*={traj.stop.t_star:.6g}"
    return summary, Artifact(traj.to_dict(), traj.as_dataframe())


def _portrait(cfg: RunConfig) -> tuple[str, Artifact]:
    model = make_model(cfg.model)
    basin = basin_scan(model, cfg.portrait.dyn, cfg.portrait.grid, cfg.integrator, threads=cfg.threads)
    summary = " ".join(f"{tag}={count}" for tag, count in basin.counts().items())
    return summary, Artifact(basin.to_dict(), basin.as_dataframe())


def _singularities(cfg: RunConfig) -> tuple[str, Artifact]:
    model = make_model(cfg.model)
    locator = {"auto": locate, "2d": locate_2d, "nd": locate_nd}[cfg.singularities.method]
    reports = [locator(model, guess) for guess in cfg.singularities.guesses]
    summary = "; ".join(
        f"{r.singularity_class} z={_fmt_coords(r.z)} Delta={r.delta_disc:.6g}" for r in reports
    )
    payload = [r.to_dict() for r in reports]
    return summary, Artifact(payload, pd.json_normalize(payload))


def _reduce(cfg: RunConfig) -> tuple[str, Artifact]:
    block = cfg.reduce
    fp = fixed_points(block.alpha)
    summary = f"r0={fp.r0:.6f} stable_branch={fp.stable_branch}"
    payload = fp.to_dict()
    table = None
    if block.integrate:
        r0 = block.r0 if block.r0 is not None else 1.5 * fp.r0
        omega0 = block.omega0 if block.omega0 is not None else fp.omega0_plus
        traj = integrate_reduced(ReducedState(r0, omega0), block.alpha, block.t_max)
        table = traj.as_dataframe()
        payload["trajectory"] = table.to_dict(orient="list")
    return summary, Artifact(payload, table)


def _cycle(cfg: RunConfig) -> tuple[str, Artifact]:
    model = make_model(cfg.model)
    applied = cfg.model.params.get("delta", 0.0) if cfg.model.variant == "Perturbed" else 0.0
    if cfg.cycle.delta != applied:
        raise ValueError(
            f"cycle.delta = {cfg.cycle.delta} but the model applies delta = {applied}; pass --delta to perturb "
            "the model or use a Perturbed model with the same delta."
        )
    center = cfg.cycle.center
    if center is None:
        center = locate(model, np.zeros(model.dimension)).z
    m = measure_cycle(model, center, cfg.integrator.eps, cfg.cycle.delta, config=cfg.integrator, seed=cfg.seed)
    summary = f"r_mean={m.r_mean:.6g} predicted={m.predicted:.6g} width={m.width:.3g}"
    return summary, Artifact(m.to_dict())


def _certify(cfg: RunConfig) -> tuple[str, Artifact]:
    model = make_model(cfg.model)
    cert = certify_region(model, cfg.certify)
    summary = f"valid={cert.is_valid} index1_everywhere={cert.index1_everywhere} n_cells={cert.n_cells}"
    return summary, Artifact(cert.to_dict())


def _benchmark(cfg: RunConfig) -> tuple[str, Artifact]:
    model = make_model(cfg.model)
    block = cfg.benchmark
    table = benchmark_global(
        model, block.radius, cfg.integrator.eps, block.n_points, cfg.integrator, cfg.threads, cfg.seed
    )
    summary = f"converged={table.fraction_converged:.0%} ({table.tags.count('ConvergedToSaddle')}/{len(table.tags)})"
    return summary, Artifact(table.to_dict(), table.as_dataframe())


def _check_derivs(cfg: RunConfig) -> tuple[str, Artifact]:
    model = make_model(cfg.model)
    block = cfg.check_derivs
    if block.x is not None:
        points = [np.asarray(block.x, dtype=float)]
    else:
        rng = np.random.default_rng(cfg.seed)
        directions = rng.standard_normal((block.n_points, model.dimension))
        radii = block.radius * rng.uniform(size=(block.n_points, 1)) ** (1.0 / model.dimension)
        points = list(radii * directions / np.linalg.norm(directions, axis=1, keepdims=True))
    reports = [check_derivatives(model, x, block.h) for x in points]
    rows = [{"x": r.x, **{f"order_{k}": v for k, v in r.errors.items()}} for r in reports]
    worst = max(r.max_error for r in reports)
    passed = all(r.passed(block.tol) for r in reports)
    summary = f"passed={passed} max_error={worst:.3e} points={len(reports)}"
    return summary, Artifact({"passed": passed, "max_error": worst, "points": rows}, pd.DataFrame(rows))


HANDLERS: dict[str, Callable[[RunConfig], tuple[str, Artifact]]] = {
    "simulate": _simulate,
    "portrait": _portrait,
    "singularities": _singularities,
    "reduce": _reduce,
    "cycle": _cycle,
    "certify": _certify,
    "benchmark": _benchmark,
    "check-derivs": _check_derivs,
}


def write_artifact(artifact: Artifact, fmt: str, out: Optional[str]) -> None:
    if fmt == "json":
        text = json.dumps(artifact.payload, sort_keys=True, indent=2)
    else:
        table = artifact.table if artifact.table is not None else pd.json_normalize(artifact.payload)
        if fmt == "parquet":
            if out is None:
                raise ValueError("parquet output is binary and needs --out.")
            table.to_parquet(out, index=False)
            return
        text = table.to_csv(index=False, float_format="%.17g")
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        Path(out).write_text(text)


def run(argv: Optional[list[str]] = None) -> int:
    """Parse ``argv``, run the subcommand and return the exit code."""
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        if args.dry_run:
            print(cfg.model_dump_json(indent=2))
            return 0
        summary, artifact = HANDLERS[args.command](cfg)
        print(summary)
        write_artifact(artifact, cfg.output.format, cfg.output.path)
    except NumericalFailure as e:
        print(f"❌ numerical failure ({type(e).__name__}): {e}", file=sys.stderr)
        return 3
    except (pydantic.ValidationError, ValueError) as e:
        print(f"❌ invalid input: {e}", file=sys.stderr)
        return 2
    return 0


def main() -> int:
    return run(sys.argv[1:])
