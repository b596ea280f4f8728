import json
from fractions import Fraction

import numpy as np

from app.models.algebra import LaurentCharacter
from app.models.path import BandLimitedPath, BandLimitedVariation
from app.utils.serialization import (
    complex_matrix_to_json,
    dumps,
    laurent_to_json,
    path_to_json,
    root_system_to_json,
    variation_to_json,
)


def test_root_system_shape(a2):
    data = root_system_to_json(a2)
    assert data["type"] == "A" and data["rank"] == 2
    assert data["theta"] == [1, 1]
    assert data["rho"] == [1, 1]
    assert data["gram"] == [[2, -1], [-1, 2]]


def test_laurent_terms():
    character = LaurentCharacter.from_dict({(1, 0): 2, (0, -1): -1})
    assert laurent_to_json(character) == [
        {"weight": [0, -1], "coefficient": -1},
        {"weight": [1, 0], "coefficient": 2},
    ]


def test_complex_matrix_pairs():
    assert complex_matrix_to_json(np.array([[1j, 2.0]])) == [[[0.0, 1.0], [2.0, 0.0]]]


def test_path_and_variation(su2):
    path = BandLimitedPath.constant(su2).sample(4)
    data = path_to_json(path)
    assert data["group"] == "SU2"
    assert len(data["samples"]) == 5
    assert data["samples"][0] == [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]
    v = variation_to_json(BandLimitedVariation.constant([1.0, 0.0, 2.0]).sample(4))
    assert v["values"][3] == [1.0, 0.0, 2.0]


def test_dumps_is_sorted_and_finite():
    text = dumps({"b": float("nan"), "a": Fraction(3, 2), "c": np.int64(4)})
    assert text == '{"a": "3/2", "b": null, "c": 4}'
    assert json.loads(text)["b"] is None
