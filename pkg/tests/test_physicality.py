import math

import numpy as np
import pytest

from wigner_bounds import bounds
from wigner_bounds.errors import NormalizationViolation
from wigner_bounds.extremal import ExtremalSpec, solve
from wigner_bounds.phase_space import Fock, RadialMixture, Thermal
from wigner_bounds.physicality import (
    FAILED,
    MARGINAL_NEGATIVE,
    PASSED,
    check_candidate,
    hillery_fock_test,
    marginal_x,
)


@pytest.mark.parametrize("C", [0.5, 1.0, 5.0])
def test_thermal_passes_and_matches_populations(C):
    rep = check_candidate(Thermal(C))
    assert rep.verdict == PASSED and rep.first_negative_n is None
    nbar = C - 0.5
    for n, value in rep.overlaps:
        expected = (nbar / (nbar + 1)) ** n / (nbar + 1)
        assert value == pytest.approx(expected, abs=1e-12)
    assert len(rep.overlaps) == 41


def test_vacuum_overlaps_are_indeterminate_not_negative():
    rep = hillery_fock_test(Thermal(0.5), n_max=10)
    assert rep.verdict == PASSED
    assert set(rep.indeterminate) <= set(range(1, 11))


def test_fock_mixture_passes():
    M = RadialMixture((0.2, 0.5, 0.3), (Fock(0), Fock(2), Fock(5)))
    rep = hillery_fock_test(M, n_max=8)
    assert rep.verdict == PASSED
    assert rep.overlaps[2][1] == pytest.approx(0.5, abs=1e-10)


def test_affine_non_state_fails():
    # 1.3 |1><1| - 0.3 |0><0| has unit trace but a negative population
    M = RadialMixture((-0.3, 1.3), (Fock(0), Fock(1)))
    rep = hillery_fock_test(M, n_max=3)
    assert rep.verdict == FAILED and rep.first_negative_n == 0
    assert rep.verdict_label == "FailedAtN(0)"


@pytest.mark.parametrize("mu_g", [0.2, 0.5, 0.8])
def test_pure_extremal_solutions_are_unphysical(mu_g):
    branch, param = max(bounds.ratio_locus(1.0 / mu_g), key=lambda bp: bounds.delta_ex_of(*bp))
    form = solve(ExtremalSpec(mu_g, branch, param)).form
    rep = check_candidate(form)
    assert rep.verdict == FAILED
    assert rep.overlaps[rep.first_negative_n][1] < -1e-9


def test_marginal_of_thermal_is_gaussian():
    C = 2.0
    for x in (0.0, 1.0, 3.5):
        exact = math.exp(-x * x / (2 * C)) / math.sqrt(2 * math.pi * C)
        assert marginal_x(Thermal(C), x) == pytest.approx(exact, rel=1e-10)
        assert marginal_x(Thermal(C), -x) == marginal_x(Thermal(C), x)


def test_negative_marginal_stops_pipeline():
    # unit weight, but a narrow negative core drags the x = 0 marginal below zero
    a = 0.3
    M = RadialMixture((-a / (1 - a), 1 / (1 - a)), (Thermal(0.1), Thermal(2.0)))
    rep = check_candidate(M)
    assert rep.verdict == MARGINAL_NEGATIVE
    assert rep.marginal_min < 0 and rep.overlaps == []


def test_requires_normalisation():
    with pytest.raises(NormalizationViolation):
        check_candidate(RadialMixture((0.5,), (Thermal(1.0),)))


def test_n_max_validation():
    with pytest.raises(ValueError):
        hillery_fock_test(Thermal(1.0), n_max=-1)


def test_report_dict_shape():
    d = hillery_fock_test(Thermal(1.0), n_max=2).as_dict()
    assert d["verdict"] == "PassedUpToNmax"
    assert [n for n, _ in d["fock_overlaps"]] == [0, 1, 2]
    assert np.isnan(d["marginal_min"])
