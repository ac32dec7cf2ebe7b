"""Closed-form energy, gradient, Hessian and third-derivative evaluators of the builtin landscapes."""

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np

from saddle_dynamics.landscape.spec import ModelSpec

Evaluator = Callable[[np.ndarray], object]


@dataclass(frozen=True)
class Evaluators:
    energy: Evaluator
    gradient: Evaluator
    hessian: Evaluator
    third: Evaluator


def symmetric_tensor(n: int, entries: Mapping[tuple[int, int, int], float]) -> np.ndarray:
    """Build a symmetric 3-tensor from its values on sorted index triples."""
    T = np.zeros((n, n, n))
    for idx, value in entries.items():
        for perm in set(itertools.permutations(idx)):
            T[perm] = value
    return T


def plane_cubic_tensor(n: int, coeffs: Sequence[float]) -> np.ndarray:
    """Third-derivative tensor of the in-plane cubic with (E111, E112, E122, E222) = coeffs."""
    e111, e112, e122, e222 = coeffs
    return symmetric_tensor(n, {(0, 0, 0): e111, (0, 0, 1): e112, (0, 1, 1): e122, (1, 1, 1): e222})


def cubic_polynomial(g: np.ndarray, Q: np.ndarray, T: np.ndarray) -> Evaluators:
    """E(x) = g.x + 1/2 Q[x, x] + 1/6 T[x, x, x] with symmetric Q and T."""
    g = np.asarray(g, dtype=float)
    Q = np.asarray(Q, dtype=float)
    T = np.asarray(T, dtype=float)

    def energy(x):
        return float(g @ x + 0.5 * x @ Q @ x + np.einsum("ijk,i,j,k->", T, x, x, x) / 6.0)

    def gradient(x):
        return g + Q @ x + 0.5 * np.einsum("ijk,j,k->i", T, x, x)

    def hessian(x):
        return Q + np.einsum("ijk,k->ij", T, x)

    def third(x):
        return T.copy()

    return Evaluators(energy, gradient, hessian, third)


def _double_well_1d(_params: Mapping) -> Evaluators:
    def energy(x):
        return float((1.0 - x[0] ** 2) ** 2)

    def gradient(x):
        return np.array([-4.0 * x[0] * (1.0 - x[0] ** 2)])

    def hessian(x):
        return np.array([[12.0 * x[0] ** 2 - 4.0]])

    def third(x):
        return np.array([[[24.0 * x[0]]]])

    return Evaluators(energy, gradient, hessian, third)


def _double_well_2d(params: Mapping) -> Evaluators:
    alpha = params["alpha"]

    def energy(x):
        return float((1.0 - x[0] ** 2) ** 2 + alpha * x[1] ** 2)

    def gradient(x):
        return np.array([-4.0 * x[0] * (1.0 - x[0] ** 2), 2.0 * alpha * x[1]])

    def hessian(x):
        return np.array([[12.0 * x[0] ** 2 - 4.0, 0.0], [0.0, 2.0 * alpha]])

    def third(x):
        T = np.zeros((2, 2, 2))
        T[0, 0, 0] = 24.0 * x[0]
        return T

    return Evaluators(energy, gradient, hessian, third)


def _coercive_quartic(_params: Mapping) -> Evaluators:
    # E = (x^2 + y^2)^2 + x^2 - y^2 - x + y
    def energy(x):
        s = x[0] ** 2 + x[1] ** 2
        return float(s**2 + x[0] ** 2 - x[1] ** 2 - x[0] + x[1])

    def gradient(x):
        s = x[0] ** 2 + x[1] ** 2
        return np.array([4.0 * x[0] * s + 2.0 * x[0] - 1.0, 4.0 * x[1] * s - 2.0 * x[1] + 1.0])

    def hessian(x):
        off = 8.0 * x[0] * x[1]
        return np.array(
            [
                [12.0 * x[0] ** 2 + 4.0 * x[1] ** 2 + 2.0, off],
                [off, 4.0 * x[0] ** 2 + 12.0 * x[1] ** 2 - 2.0],
            ]
        )

    def third(x):
        return symmetric_tensor(
            2, {(0, 0, 0): 24.0 * x[0], (0, 0, 1): 8.0 * x[1], (0, 1, 1): 8.0 * x[0], (1, 1, 1): 24.0 * x[1]}
        )

    return Evaluators(energy, gradient, hessian, third)


def _cubic_singularity(params: Mapping) -> Evaluators:
    alpha, lam, s = params["alpha"], params["lam"], params["s"]
    g = np.array([math.cos(alpha), math.sin(alpha)])
    return cubic_polynomial(g, lam * np.eye(2), plane_cubic_tensor(2, (3.0 * s, 0.0, 1.0, 0.0)))


def _isotropic_canonical(params: Mapping) -> Evaluators:
    return _cubic_singularity({**params, "s": 1.0})


def _multi_de0(params: Mapping) -> Evaluators:
    H0 = np.asarray(params["H0"], dtype=float).reshape(len(params["H0"]), len(params["H0"]))
    m = H0.shape[0]
    n = 2 + m
    g = np.zeros(n)
    g[0], g[1] = math.cos(params["alpha0"]), math.sin(params["alpha0"])
    Q = np.zeros((n, n))
    Q[:2, :2] = params["lambda0"] * np.eye(2)
    Q[2:, 2:] = H0
    T = plane_cubic_tensor(n, params["plane_cubic"])
    if params.get("G0") is not None and m > 0:
        T[2:, 2:, 2:] = np.asarray(params["G0"], dtype=float)
    return cubic_polynomial(g, Q, T)


def _quadratic(params: Mapping) -> Evaluators:
    H = np.asarray(params["H"], dtype=float)
    b = np.zeros(H.shape[0]) if params.get("b") is None else np.asarray(params["b"], dtype=float)
    n = H.shape[0]
    return cubic_polynomial(b, H, np.zeros((n, n, n)))


def _cubic_bump(params: Mapping) -> Evaluators:
    c0, c1, c2, c3 = params["coeffs"]
    n = params["dimension"] or 2

    def _factors(x):
        # row d holds the d-th derivative of the coordinate cubic at each x_m
        return np.array(
            [
                c0 + c1 * x + c2 * x**2 + c3 * x**3,
                c1 + 2.0 * c2 * x + 3.0 * c3 * x**2,
                2.0 * c2 + 6.0 * c3 * x,
                np.full_like(x, 6.0 * c3),
            ]
        )

    def _mixed(P, idx):
        counts = np.bincount(np.asarray(idx, dtype=int), minlength=n)
        return float(np.prod(P[counts, np.arange(n)]))

    def energy(x):
        return float(np.prod(_factors(x)[0]))

    def gradient(x):
        P = _factors(x)
        return np.array([_mixed(P, (i,)) for i in range(n)])

    def hessian(x):
        P = _factors(x)
        H = np.empty((n, n))
        for i, j in itertools.combinations_with_replacement(range(n), 2):
            H[i, j] = H[j, i] = _mixed(P, (i, j))
        return H

    def third(x):
        P = _factors(x)
        entries = {idx: _mixed(P, idx) for idx in itertools.combinations_with_replacement(range(n), 3)}
        return symmetric_tensor(n, entries)

    return Evaluators(energy, gradient, hessian, third)


def _perturbed(params: Mapping) -> Evaluators:
    base = build_evaluators(ModelSpec.model_validate(params["base"]))
    pert = build_evaluators(ModelSpec.model_validate(params["perturbation"]))
    delta = params["delta"]

    def energy(x):
        return base.energy(x) + delta * pert.energy(x)

    def gradient(x):
        return base.gradient(x) + delta * pert.gradient(x)

    def hessian(x):
        return base.hessian(x) + delta * pert.hessian(x)

    def third(x):
        return base.third(x) + delta * pert.third(x)

    return Evaluators(energy, gradient, hessian, third)


_BUILDERS: dict[str, Callable[[Mapping], Evaluators]] = {
    "DoubleWell1D": _double_well_1d,
    "DoubleWell2D": _double_well_2d,
    "CoerciveQuartic": _coercive_quartic,
    "CubicSingularity": _cubic_singularity,
    "IsotropicCanonical": _isotropic_canonical,
    "MultiDE0": _multi_de0,
    "Perturbed": _perturbed,
    "Quadratic": _quadratic,
    "CubicBump": _cubic_bump,
}


def build_evaluators(spec: ModelSpec) -> Evaluators:
    return _BUILDERS[spec.variant](spec.params)
