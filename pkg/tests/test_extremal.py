import numpy as np
import pytest

from wigner_bounds import bounds, extremal
from wigner_bounds.bounds import Branch
from wigner_bounds.errors import ParamOutOfRange
from wigner_bounds.extremal import ExtremalSpec, solve, verify_against_closed_form
from wigner_bounds.phase_space import Extremal, normalization


@pytest.mark.parametrize("mu_g,branch,param", [
    (0.5, "two_root", 1e-3),
    (0.3, "two_root", 0.7),
    (0.9, "two_root", 2.0),
    (0.5, "one_root", 3.0),
    (0.1, "one_root", 12.0),
    (0.7, "one_root", 50.0),
])
def test_construction_reproduces_closed_forms(mu_g, branch, param):
    rep = verify_against_closed_form(ExtremalSpec(mu_g, branch, param))
    assert rep.max_rel_err < 1e-9
    assert rep.max_residual < 1e-9


def test_solution_has_expected_support():
    mu_g, alpha = 0.4, 1.5
    form = solve(ExtremalSpec(mu_g, Branch.TWO_ROOT, alpha)).form
    assert form.r_hi - form.r_lo == pytest.approx(alpha / mu_g, rel=1e-12)
    assert form.r_lo > 0
    assert form(form.r_lo - 1e-3) == 0.0 and form(form.r_hi + 1e-3) == 0.0
    assert extremal.minimum_on_support(form) >= -1e-12


def test_one_root_support_starts_at_origin():
    form = solve(ExtremalSpec(0.6, "one_root", 4.0)).form
    assert form.r_lo == 0.0
    assert form.r_hi == pytest.approx(4.0 / 0.6)
    assert float(form._eval(np.array(form.r_hi))) == pytest.approx(0.0, abs=1e-12)


def test_left_root_collapses_at_branch_boundary():
    form = solve(ExtremalSpec(0.5, "two_root", bounds.x_r_root())).form
    assert form.r_lo == pytest.approx(0.0, abs=1e-6)


def test_centred_and_raw_coefficients_agree():
    form = solve(ExtremalSpec(0.5, "one_root", 6.0)).form
    raw = Extremal(form.A1, form.A2, form.A3, form.C, form.r_lo, form.r_hi)
    r = np.linspace(0, form.r_hi, 50)
    np.testing.assert_allclose(raw(r), form(r), atol=1e-12)
    assert normalization(raw) == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("args", [(0.0, "two_root", 1.0), (0.5, "two_root", 1e-4), (0.5, "two_root", 2.5),
                                  (0.5, "one_root", 2.0), (1.2, "one_root", 3.0)])
def test_spec_validation(args):
    with pytest.raises(ParamOutOfRange):
        ExtremalSpec(*args)


def test_report_dict():
    rep = verify_against_closed_form(ExtremalSpec(0.5, "one_root", 3.0))
    d = rep.as_dict()
    assert d["branch"] == "one_root"
    assert d["purity_ratio_formula"] == pytest.approx(8 / 9, abs=1e-12)
    assert d["purity_ratio_num"] == pytest.approx(8 / 9, rel=1e-9)
