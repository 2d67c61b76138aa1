import json

import numpy as np
import pytest

from wigner_bounds import wignerfile
from wigner_bounds.errors import SchemaError
from wigner_bounds.extremal import ExtremalSpec, solve
from wigner_bounds.phase_space import Extremal, Fock, Sampled, Thermal

CONV = {"convention": "vacuum-identity"}


@pytest.mark.parametrize("W", [Thermal(1.5), Fock(3)])
def test_round_trip(W, tmp_path):
    path = tmp_path / "w.json"
    wignerfile.dump(W, path)
    assert wignerfile.load(path) == W


def test_extremal_round_trip(tmp_path):
    form = solve(ExtremalSpec(0.5, "one_root", 3.0)).form
    path = tmp_path / "ex.json"
    wignerfile.dump(form, path)
    back = wignerfile.load(path)
    r = np.linspace(0, form.r_hi, 40)
    np.testing.assert_allclose(back(r), form(r), atol=1e-13)


def test_extremal_by_parameters():
    W = wignerfile.from_dict({"type": "extremal", "branch": "two_root", "mu_g": 0.5, "param": 1.2, **CONV})
    assert isinstance(W, Extremal)
    assert W.r_hi - W.r_lo == pytest.approx(2.4)


def test_sampled_round_trip(tmp_path):
    S = wignerfile.sample(Thermal(1.0), np.linspace(0, 40, 200))
    path = tmp_path / "s.json"
    wignerfile.dump(S, path)
    back = wignerfile.load(path)
    assert isinstance(back, Sampled)
    np.testing.assert_array_equal(back.w, S.w)


@pytest.mark.parametrize("doc,field", [
    ({"type": "thermal", "C": 1.0}, "<document>"),
    ({"type": "thermal", "C": 1.0, "convention": "hbar=1"}, "convention"),
    ({"type": "thermal", "C": -1.0, **CONV}, "C"),
    ({"type": "fock", "n": 1.5, **CONV}, "n"),
    ({"type": "bogus", **CONV}, "type"),
    ({"type": "sampled", "r": [0, 1, 2, 3], "w": [1, 1, 1], **CONV}, "w"),
    ({"type": "sampled", "r": [0, 2, 1, 3], "w": [1, 1, 1, 1], **CONV}, "r"),
    ({"type": "extremal", "A1": 0, "A2": 1, "A3": 0, "C": 1, "r_lo": 2, "r_hi": 1, **CONV}, "r_hi"),
])
def test_schema_errors_name_the_field(doc, field):
    with pytest.raises(SchemaError, match=f"field '{field}'"):
        wignerfile.from_dict(doc)


def test_invalid_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(SchemaError):
        wignerfile.load(path)


def test_document_always_carries_convention():
    assert json.loads(json.dumps(wignerfile.to_dict(Fock(0))))["convention"] == "vacuum-identity"
