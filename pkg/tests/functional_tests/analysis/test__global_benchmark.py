import math

import pytest

from saddle_dynamics.analysis import benchmark_global
from saddle_dynamics.landscape import make_model

TILTED_QUADRATIC = {
    "variant": "Perturbed",
    "params": {
        "base": {"variant": "Quadratic", "params": {"H": [[-1.0, 0.0], [0.0, 2.0]]}},
        "delta": 0.01,
        "perturbation": {"variant": "IsotropicCanonical", "params": {"alpha": math.pi / 4, "lam": 0.0}},
    },
}


@pytest.mark.slow
def test_gad_converges_from_every_point():
    model = make_model(TILTED_QUADRATIC)
    table = benchmark_global(model, 2.0, eps=0.05, n_points=25, threads=4)
    assert len(table.tags) == 25
    assert table.fraction_converged == 1.0, table.failures()
