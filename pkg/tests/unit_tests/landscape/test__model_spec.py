import pydantic
import pytest

from saddle_dynamics.landscape import ModelSpec


def test_defaults_are_filled_in():
    spec = ModelSpec(variant="DoubleWell2D")
    assert spec.params == {"alpha": 2.0}
    assert spec.dimension == 2


@pytest.mark.parametrize(
    "spec",
    [
        {"variant": "DoubleWell1D"},
        {"variant": "CubicSingularity", "params": {"alpha": 3.0, "s": -1.0}},
        {"variant": "MultiDE0", "params": {"H0": [[2.0, 0.0], [0.0, 3.0]]}},
        {"variant": "Perturbed", "params": {"base": {"variant": "DoubleWell2D"}, "delta": 0.1}},
    ],
)
def test_json_round_trip(spec):
    model_spec = ModelSpec.model_validate(spec)
    text = model_spec.to_json()
    assert ModelSpec.from_json(text) == model_spec
    assert ModelSpec.from_json(text).to_json() == text


@pytest.mark.parametrize(
    "spec, dimension",
    [
        ({"variant": "DoubleWell1D"}, 1),
        ({"variant": "CoerciveQuartic"}, 2),
        ({"variant": "MultiDE0"}, 3),
        ({"variant": "MultiDE0", "params": {"H0": [[2.0, 0.0], [0.0, 3.0]]}}, 4),
        ({"variant": "Quadratic", "params": {"H": [[-1.0, 0, 0], [0, 1.0, 0], [0, 0, 2.0]]}}, 3),
        ({"variant": "CubicBump", "params": {"dimension": 5}}, 5),
        ({"variant": "Perturbed", "params": {"base": {"variant": "DoubleWell1D"}}}, 1),
    ],
)
def test_dimension(spec, dimension):
    assert ModelSpec.model_validate(spec).dimension == dimension


def test_perturbation_takes_base_dimension():
    spec = ModelSpec.model_validate({"variant": "Perturbed", "params": {"base": {"variant": "MultiDE0"}}})
    assert spec.params["perturbation"]["params"]["dimension"] == 3


def test_perturbation_dimension_mismatch():
    with pytest.raises(pydantic.ValidationError, match="does not match"):
        ModelSpec.model_validate(
            {
                "variant": "Perturbed",
                "params": {"base": {"variant": "DoubleWell1D"}, "perturbation": {"variant": "Quadratic"}},
            }
        )


def test_unknown_variant():
    with pytest.raises(pydantic.ValidationError):
        ModelSpec.model_validate({"variant": "NoSuchModel"})


def test_unknown_parameter():
    with pytest.raises(pydantic.ValidationError):
        ModelSpec.model_validate({"variant": "DoubleWell2D", "params": {"beta": 1.0}})


@pytest.mark.parametrize(
    "params, message",
    [
        ({"lambda0": 1.0, "H0": [[0.5]]}, "H0"),
        ({"lambda0": -1.0, "H0": [[-0.1]]}, "H0"),
        ({"H0": [[2.0, 1.0], [0.0, 2.0]]}, "symmetric"),
        ({"H0": [[2.0]], "G0": [[[1.0, 0.0]]]}, "G0"),
        ({"H0": [], "G0": [[[1.0]]]}, "G0"),
    ],
)
def test_multi_de0_invariants(params, message):
    with pytest.raises(pydantic.ValidationError, match=message):
        ModelSpec.model_validate({"variant": "MultiDE0", "params": params})


def test_quadratic_linear_term_length():
    with pytest.raises(pydantic.ValidationError, match="linear term"):
        ModelSpec.model_validate({"variant": "Quadratic", "params": {"b": [1.0, 2.0, 3.0]}})
