"""JSON file formats for schemes, kernel families, hypergroups, and groups.

Rationals are serialized as "p/q" strings to preserve exactness; floats are
written with 17 significant digits so they round-trip.
"""

from __future__ import annotations

import json
from fractions import Fraction

import numpy as np

from .hypergroup import FiniteHypergroup, _freeze
from .scheme import GeneralizedScheme, RelationPartition


def encode_number(v):
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}" if v.denominator != 1 \
            else str(v.numerator)
    if isinstance(v, (int, np.integer)):
        return int(v)
    return float(format(float(v), ".17g"))


def decode_number(v):
    if isinstance(v, str):
        if "/" in v:
            p, q = v.split("/")
            return Fraction(int(p), int(q))
        return Fraction(int(v))
    if isinstance(v, int):
        return Fraction(v)
    return float(v)


def scheme_to_dict(obj) -> dict:
    """Serialize a RelationPartition or GeneralizedScheme."""
    if isinstance(obj, GeneralizedScheme):
        part = obj.partition
        return {
            "n_points": part.n_points,
            "relations": part.label.tolist(),
            "kernels": [k.tolist() for k in obj.kernels],
            "omega_x": obj.omega_x.tolist(),
        }
    part = obj.partition if hasattr(obj, "partition") else obj
    return {"n_points": part.n_points, "relations": part.label.tolist()}


def scheme_from_dict(data: dict):
    """Returns a RelationPartition, or a GeneralizedScheme when kernels are
    present."""
    label = np.asarray(data["relations"], dtype=np.int64)
    n = int(data["n_points"])
    partition = RelationPartition(n_points=n,
                                  n_relations=int(label.max()) + 1,
                                  label=label)
    if "kernels" in data:
        omega_x = np.asarray(data.get("omega_x", np.ones(n)), dtype=float)
        return GeneralizedScheme(partition=partition,
                                 kernels=np.asarray(data["kernels"], dtype=float),
                                 omega_x=omega_x)
    return partition


def hypergroup_to_dict(h: FiniteHypergroup) -> dict:
    return {
        "n": h.n,
        "identity": h.identity,
        "involution": h.involution.tolist(),
        "conv": [[[encode_number(c) for c in row] for row in plane]
                 for plane in h.conv],
    }


def hypergroup_from_dict(data: dict) -> FiniteHypergroup:
    conv = [[[decode_number(c) for c in row] for row in plane]
            for plane in data["conv"]]
    exact = all(isinstance(c, Fraction) for plane in conv for row in plane
                for c in row)
    if not exact:
        conv = [[[float(c) for c in row] for row in plane] for plane in conv]
    return FiniteHypergroup(
        n=int(data["n"]), conv=_freeze(conv), identity=int(data["identity"]),
        involution=np.asarray(data["involution"], dtype=np.int64),
        scheme_derived=bool(data.get("scheme_derived", False)))


def group_from_dict(data: dict) -> np.ndarray:
    """Group file: {"n": int, "table": [[int,...],...]} multiplication table."""
    return np.asarray(data["table"], dtype=np.int64)


def load(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def save(path: str, data: dict):
    with open(path, "w") as fh:
        json.dump(data, fh, indent=1)
        fh.write("\n")
