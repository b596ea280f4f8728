"""JSON shapes for exact and numerical objects: Fractions as strings, complex entries as [re, im] pairs."""
import json
import math
from enum import Enum
from fractions import Fraction
from typing import Any, Dict

import numpy as np

from app.models.algebra import LaurentCharacter, RootSystem
from app.models.path import DiscretePath, TangentVariation
from app.models.spinor import SpinorModule


def fraction_to_json(x) -> Any:
    x = Fraction(x)
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def weight_to_json(weight) -> list:
    return [fraction_to_json(c) for c in weight]


def complex_matrix_to_json(matrix: np.ndarray) -> list:
    """Row-major nested lists of [re, im] pairs."""
    matrix = np.asarray(matrix, dtype=complex)
    return np.stack([matrix.real, matrix.imag], axis=-1).tolist()


def root_system_to_json(rs: RootSystem) -> Dict[str, Any]:
    return {
        "type": rs.lie_type.value,
        "rank": rs.rank,
        "cartan_matrix": [list(row) for row in rs.cartan_matrix],
        "gram": [weight_to_json(row) for row in rs.gram],
        "simple_roots": [list(r) for r in rs.simple_roots],
        "positive_roots": [list(r) for r in rs.positive_roots],
        "theta": list(rs.theta),
        "rho": weight_to_json(rs.rho),
    }


def laurent_to_json(character: LaurentCharacter) -> list:
    return [{"weight": weight_to_json(w), "coefficient": int(c)} for w, c in character.terms]


def clifford_to_json(S: SpinorModule) -> Dict[str, Any]:
    return {
        "dim": S.space.dim,
        "fock_dim": S.fock_dim,
        "basis": [list(b) if isinstance(b, tuple) else b for b in S.basis],
        "grading": S.grading.astype(int).tolist(),
        "clifford_action": [complex_matrix_to_json(a) for a in S.clifford_action],
    }


def path_to_json(path: DiscretePath) -> Dict[str, Any]:
    return {"group": path.group.name, "M": path.M, "samples": [complex_matrix_to_json(g) for g in path.samples]}


def variation_to_json(v: TangentVariation) -> Dict[str, Any]:
    return {"M": v.M, "values": v.values.tolist()}


def to_jsonable(obj: Any) -> Any:
    """Recursively converts numpy, Fraction, Enum and complex values; non-finite floats become None."""
    if isinstance(obj, dict):
        return {(k if isinstance(k, str) else str(k)): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, Fraction):
        return fraction_to_json(obj)
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        return value if math.isfinite(value) else None
    if isinstance(obj, (complex, np.complexfloating)):
        return [to_jsonable(obj.real), to_jsonable(obj.imag)]
    if isinstance(obj, np.ndarray):
        if np.iscomplexobj(obj):
            return complex_matrix_to_json(obj)
        return to_jsonable(obj.tolist())
    if isinstance(obj, LaurentCharacter):
        return laurent_to_json(obj)
    return obj


def dumps(payload: Any) -> str:
    """Deterministic JSON text: sorted keys, no NaN."""
    return json.dumps(to_jsonable(payload), sort_keys=True, allow_nan=False)
