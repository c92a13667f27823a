"""JSON interchange for states and channels.

Complex matrices are encoded row-major as nested lists of ``[re, im]`` pairs.
Schema (version 1):

    density operator: {"schema_version": 1, "kind": "density_operator",
                       "systems": [["A", 2], ...], "matrix": [[[re, im], ...], ...]}
    channel/CP map:   {"schema_version": 1, "kind": "channel" | "kraus_map",
                       "in_dim": d, "out_dim": d', "kraus": [matrix, ...]}
"""

from __future__ import annotations

import json

import numpy as np

from .qcore import Channel, DensityOperator, KrausMap
from .reports import SCHEMA_VERSION, dumps_json

__all__ = ["to_json_dict", "from_json_dict", "dumps", "loads"]


def _encode_matrix(matrix: np.ndarray):
    return [[[float(entry.real), float(entry.imag)] for entry in row] for row in matrix]


def _decode_matrix(data) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in data], dtype=complex)


def to_json_dict(obj) -> dict:
    if isinstance(obj, DensityOperator):
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "density_operator",
            "systems": [[label, dim] for label, dim in obj.systems],
            "matrix": _encode_matrix(obj.matrix),
        }
    if isinstance(obj, KrausMap):
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "channel" if isinstance(obj, Channel) else "kraus_map",
            "in_dim": obj.in_dim,
            "out_dim": obj.out_dim,
            "kraus": [_encode_matrix(k) for k in obj.kraus],
        }
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def from_json_dict(data: dict):
    kind = data.get("kind")
    if kind == "density_operator":
        systems = tuple((str(label), int(dim)) for label, dim in data["systems"])
        return DensityOperator(systems, _decode_matrix(data["matrix"]))
    if kind in ("channel", "kraus_map"):
        ks = tuple(_decode_matrix(k) for k in data["kraus"])
        obj = Channel(ks) if kind == "channel" else KrausMap(ks)
        if obj.in_dim != int(data["in_dim"]) or obj.out_dim != int(data["out_dim"]):
            raise ValueError("declared dimensions do not match the Kraus operators")
        return obj
    raise ValueError(f"unknown kind {kind!r}")


def dumps(obj) -> str:
    return dumps_json(to_json_dict(obj))


def loads(text: str):
    return from_json_dict(json.loads(text))
