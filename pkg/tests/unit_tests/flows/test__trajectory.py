import io
import json
import math

import numpy as np
import pandas as pd
import pytest

from saddle_dynamics.config import IntegratorConfig
from saddle_dynamics.flows import StopEvent, integrate


@pytest.fixture()
def short_isd(double_well_2d):
    return integrate(double_well_2d, "isd", [0.3, 0.2], IntegratorConfig(method="rk4", dt=0.05, t_max=0.5))


def test_dataframe_columns(short_isd):
    df = short_isd.as_dataframe()
    assert list(df.columns) == ["t", "x_1", "x_2", "v_1", "v_2", "grad_norm", "lambda1", "lambda2", "gap", "v_err"]
    assert len(df) == short_isd.n_samples == 11
    assert (df["v_err"] == 0.0).all()


def test_csv_keeps_full_precision(short_isd):
    text = short_isd.to_csv()
    df = pd.read_csv(io.StringIO(text), float_precision="round_trip")
    np.testing.assert_array_equal(df["x_1"].to_numpy(), short_isd.x[:, 0])
    assert text.splitlines()[0].startswith("t,x_1,x_2")


def test_json_carries_stop_event(short_isd):
    payload = json.loads(short_isd.to_json())
    assert payload["selector"] == "isd"
    assert payload["model"] == "DoubleWell2D"
    assert payload["stop"]["tag"] == "MaxTime"
    assert payload["stop"]["payload"]["t"] == 0.5
    assert len(payload["samples"]) == 11


def test_parquet(short_isd, tmp_path):
    path = tmp_path / "traj.parquet"
    short_isd.to_parquet(path)
    pd.testing.assert_frame_equal(pd.read_parquet(path), short_isd.as_dataframe())


def test_sample_at_interpolates(short_isd):
    midpoint = 0.5 * (short_isd.x[0] + short_isd.x[1])
    np.testing.assert_allclose(short_isd.sample_at(0.025), midpoint)
    np.testing.assert_array_equal(short_isd.x_final, short_isd.x[-1])
    with pytest.raises(ValueError, match="outside the sampled interval"):
        short_isd.sample_at(1.0)


def test_one_dimensional_json_has_no_infinities(double_well_1d):
    traj = integrate(double_well_1d, "isd", [0.5], IntegratorConfig(t_max=0.1))
    payload = json.loads(traj.to_json())
    assert payload["samples"][0]["lambda2"] is None
    assert math.isinf(traj.as_dataframe()["gap"].iloc[0])


def test_stop_event_payload():
    event = StopEvent("BlowUp", 0.14, (1e-7, 0.0), gap=2e-7, t_star=0.1414)
    assert event.to_dict() == {"tag": "BlowUp", "payload": {"t": 0.14, "x": [1e-7, 0.0], "gap": 2e-7, "t_star": 0.1414}}
    assert not event.converged
