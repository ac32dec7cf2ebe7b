import json

import numpy as np
import pytest

from saddle_dynamics.analysis import benchmark_global, check_global_hypotheses
from saddle_dynamics.errors import HypothesisError


def test_quadratic_benchmark(quadratic_saddle, capsys):
    table = benchmark_global(quadratic_saddle, 2.0, eps=0.1, n_points=9)
    out = capsys.readouterr().out
    assert "🚀" in out
    assert "✅" in out
    assert len(table.tags) == 9
    assert table.fraction_converged == 1.0
    assert table.failures() == []
    payload = json.loads(table.to_json())
    assert payload["n_points"] == 9


def test_hypotheses_reject_non_index1_model(double_well_2d):
    with pytest.raises(HypothesisError, match="not index-1"):
        check_global_hypotheses(double_well_2d, 2.0)


def test_benchmark_checks_hypotheses_first(double_well_2d, capsys):
    with pytest.raises(HypothesisError):
        benchmark_global(double_well_2d, 2.0, eps=0.1)
    assert "🚀" not in capsys.readouterr().out


def test_initial_points_cover_the_whole_ball(quadratic_saddle, capsys):
    table = benchmark_global(quadratic_saddle, 2.0, eps=0.1, n_points=40, seed=7)
    radii = np.linalg.norm(table.points, axis=1)
    assert table.points.shape == (40, 2)
    assert np.all(radii <= 2.0)
    # some starts lie outside the square inscribed in the disc
    assert np.max(np.abs(table.points)) > 2.0 / np.sqrt(2.0)

    again = benchmark_global(quadratic_saddle, 2.0, eps=0.1, n_points=40, seed=7)
    np.testing.assert_array_equal(again.points, table.points)
