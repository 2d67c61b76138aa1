import math

import numpy as np
import pytest

from wigner_bounds import NonConvergence
from wigner_bounds.quadrature import (
    GAUSS_WEIGHTS,
    GK_NODES,
    GK_WEIGHTS,
    TOL_ENV_VAR,
    default_rel_tol,
    integrate_planar,
    integrate_radial,
)


def test_kronrod_weights_match_scipy_rule():
    mod = pytest.importorskip("scipy.integrate._rules._gauss_kronrod")
    rule = mod.GaussKronrodQuadrature(21)
    nodes, weights = (np.asarray(a).ravel() for a in rule.nodes_and_weights)
    order = np.argsort(nodes)
    mine = np.argsort(GK_NODES)
    np.testing.assert_allclose(GK_NODES[mine], nodes[order], atol=1e-15)
    np.testing.assert_allclose(GK_WEIGHTS[mine], weights[order], atol=1e-15)


def test_rule_exactness():
    for k in range(0, 32):
        exact = 0.0 if k % 2 else 2.0 / (k + 1)
        assert GK_WEIGHTS @ GK_NODES ** k == pytest.approx(exact, abs=1e-14)
    for k in range(0, 20):
        exact = 0.0 if k % 2 else 2.0 / (k + 1)
        assert GAUSS_WEIGHTS @ GK_NODES ** k == pytest.approx(exact, abs=1e-14)


@pytest.mark.parametrize("lam", [0.05, 1.0, 30.0])
def test_exponential_tail(lam):
    val = integrate_radial(lambda r: np.exp(-r / lam), (0.0, math.inf), scale=lam)
    assert val == pytest.approx(lam, rel=1e-12)


def test_oscillatory_with_breakpoints():
    # int_0^inf exp(-r) cos(20 r) dr = 1 / 401
    f = lambda r: np.exp(-r) * np.cos(20 * r)  # noqa: E731
    val = integrate_radial(f, (0.0, math.inf), breakpoints=np.linspace(0, 10, 21))
    assert val == pytest.approx(1.0 / 401.0, rel=1e-10)


def test_finite_interval_polynomial():
    assert integrate_radial(lambda r: r ** 5, (1.0, 2.0)) == pytest.approx(63.0 / 6.0, rel=1e-14)


def test_degenerate_support_rejected():
    with pytest.raises(ValueError):
        integrate_radial(np.sin, (1.0, 1.0))


def test_non_convergence_is_reported():
    with pytest.raises(NonConvergence):
        integrate_radial(lambda r: 1.0 / np.sqrt(np.abs(r - 0.3)), (0.0, 1.0), rel_tol=1e-15, max_intervals=40)


def test_planar_gaussian_with_box_growth():
    f = lambda x, p: np.exp(-(x ** 2 + p ** 2) / 2.0)  # noqa: E731
    # the box is deliberately too small; growth must recover the tails
    val = integrate_planar(f, (-2, 2, -2, 2))
    assert val == pytest.approx(2.0 * math.pi, rel=1e-10)


def test_env_override(monkeypatch):
    monkeypatch.setenv(TOL_ENV_VAR, "1e-6")
    assert default_rel_tol() == 1e-6
    monkeypatch.setenv(TOL_ENV_VAR, "-1")
    with pytest.raises(ValueError):
        default_rel_tol()
