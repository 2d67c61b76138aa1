"""JSON serialisation of radial Wigner functions.

Every document carries ``"convention": "vacuum-identity"``, meaning the
vacuum has identity covariance and Wigner function ``exp(-r) / pi``.  Files
in any other normalisation are rejected rather than silently rescaled.

Examples::

    {"type": "thermal", "C": 1.0, "convention": "vacuum-identity"}
    {"type": "fock", "n": 3, "convention": "vacuum-identity"}
    {"type": "extremal", "branch": "two_root", "mu_g": 0.5, "param": 1.2,
     "convention": "vacuum-identity"}
    {"type": "sampled", "r": [...], "w": [...], "convention": "vacuum-identity"}

Extremal files give either the coefficients ``A1, A2, A3, C, r_lo, r_hi``
or a ``(branch, mu_g, param)`` triple that is solved on load.
"""

import json

import jsonschema
import numpy as np

from .errors import SchemaError
from .phase_space import Extremal, Fock, RadialFunction, Sampled, Thermal

CONVENTION = "vacuum-identity"

_NUM = {"type": "number"}
_POS = {"type": "number", "exclusiveMinimum": 0}

SCHEMA = {
    "type": "object",
    "required": ["type", "convention"],
    "properties": {
        "type": {"enum": ["thermal", "extremal", "fock", "sampled"]},
        "convention": {"const": CONVENTION},
    },
    "allOf": [
        {"if": {"properties": {"type": {"const": "thermal"}}},
         "then": {"required": ["C"], "properties": {"C": _POS}}},
        {"if": {"properties": {"type": {"const": "fock"}}},
         "then": {"required": ["n"], "properties": {"n": {"type": "integer", "minimum": 0}}}},
        {"if": {"properties": {"type": {"const": "sampled"}}},
         "then": {"required": ["r", "w"],
                  "properties": {"r": {"type": "array", "items": _NUM, "minItems": 4},
                                 "w": {"type": "array", "items": _NUM, "minItems": 4}}}},
        {"if": {"properties": {"type": {"const": "extremal"}}},
         "then": {"oneOf": [
             {"required": ["A1", "A2", "A3", "C", "r_lo", "r_hi"],
              "properties": {"A1": _NUM, "A2": _NUM, "A3": _NUM, "C": _POS,
                             "r_lo": {"type": "number", "minimum": 0}, "r_hi": _NUM}},
             {"required": ["branch", "mu_g", "param"],
              "properties": {"branch": {"enum": ["two_root", "one_root"]},
                             "mu_g": {"type": "number", "exclusiveMinimum": 0, "maximum": 1},
                             "param": _POS}},
         ]}},
    ],
}


def _field(error):
    path = "/".join(str(p) for p in error.absolute_path)
    return path or "<document>"


def validate(doc):
    """Raise :class:`SchemaError` naming the offending field."""
    try:
        jsonschema.validate(doc, SCHEMA)
    except jsonschema.ValidationError as exc:
        best = jsonschema.exceptions.best_match([exc]) or exc
        raise SchemaError(f"field '{_field(best)}': {best.message}") from None
    if doc["type"] == "sampled":
        r = np.asarray(doc["r"], dtype=float)
        if len(r) != len(doc["w"]):
            raise SchemaError("field 'w': must have the same length as 'r'")
        if r[0] < 0:
            raise SchemaError("field 'r': first grid point must be >= 0")
        if np.any(np.diff(r) <= 0):
            raise SchemaError("field 'r': grid must be strictly increasing")
    if doc["type"] == "extremal" and "r_hi" in doc and not doc["r_hi"] > doc["r_lo"]:
        raise SchemaError("field 'r_hi': must exceed r_lo")


def from_dict(doc):
    validate(doc)
    kind = doc["type"]
    if kind == "thermal":
        return Thermal(float(doc["C"]))
    if kind == "fock":
        return Fock(int(doc["n"]))
    if kind == "sampled":
        return Sampled(np.asarray(doc["r"], dtype=float), np.asarray(doc["w"], dtype=float))
    if "A1" in doc:
        return Extremal(*(float(doc[k]) for k in ("A1", "A2", "A3", "C", "r_lo", "r_hi")))
    from .extremal import ExtremalSpec, solve
    return solve(ExtremalSpec(float(doc["mu_g"]), doc["branch"], float(doc["param"]))).form


def to_dict(W):
    if isinstance(W, Thermal):
        doc = {"type": "thermal", "C": W.C}
    elif isinstance(W, Fock):
        doc = {"type": "fock", "n": W.n}
    elif isinstance(W, Extremal):
        doc = {"type": "extremal", "A1": W.A1, "A2": W.A2, "A3": W.A3, "C": W.C,
               "r_lo": W.r_lo, "r_hi": W.r_hi}
    elif isinstance(W, Sampled):
        doc = {"type": "sampled", "r": W.r.tolist(), "w": W.w.tolist()}
    else:
        raise TypeError(f"cannot serialise {type(W).__name__}")
    doc["convention"] = CONVENTION
    return doc


def sample(W, r_grid):
    """Tabulate a radial function on ``r_grid`` as a :class:`Sampled` variant."""
    if not isinstance(W, RadialFunction):
        raise TypeError("only radial functions can be sampled")
    r = np.asarray(r_grid, dtype=float)
    return Sampled(r, np.asarray(W(r), dtype=float))


def load(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON ({exc})") from None
    return from_dict(doc)


def dump(W, path):
    with open(path, "w") as fh:
        json.dump(to_dict(W), fh, indent=1)
        fh.write("\n")
