"""Closed-form extremal bounds on non-Gaussianity.

Both extremal branches scale trivially with the Gaussian purity ``mu_g``:
``mu_ex = mu_g * R(param)`` and ``overlap_ex = mu_g * O(param)``.  The
non-Gaussianity on the extremal surface therefore depends on the parameter
alone.  The two-root branch is parametrised by ``alpha = (r_B - r_A) mu_g``
on ``(0, x_r]``, the one-root branch by ``beta = r_B mu_g`` on ``[x_r, inf)``.
"""

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
import math

import numpy as np
from scipy.interpolate import PchipInterpolator
from scipy.optimize import brentq, minimize_scalar

from .errors import NoSolution, ParamOutOfRange
from .phase_space import (
    CovarianceMatrix,
    coherent_mixture_wigner,
    gaussian_reference,
    non_gaussianity,
    overlap,
    purity,
)

ALPHA_MIN = 1e-3
BETA_MAX = 50.0
BETA_RESCALE = 30.0
# the series below are used for small alpha, where the closed forms cancel
_SERIES_ALPHA = 1.0
_SERIES_TERMS = 30


class Branch(str, Enum):
    TWO_ROOT = "two_root"
    ONE_ROOT = "one_root"

    @property
    def order(self):
        return 0 if self is Branch.TWO_ROOT else 1


class Provenance(str, Enum):
    ULTIMATE_UPPER = "ultimate_upper"
    COHERENT_LOWER = "coherent_lower"
    CAUCHY_SCHWARZ = "cauchy_schwarz"


@dataclass(frozen=True)
class BranchPoint:
    branch: Branch
    param: float
    mu_g: float
    mu_ex: float
    overlap_ex: float
    delta_ex: float

    @property
    def ratio(self):
        return self.mu_ex / self.mu_g


@dataclass(frozen=True)
class BoundCurve:
    mu_g: np.ndarray
    delta: np.ndarray
    provenance: Provenance

    def __post_init__(self):
        mu_g = np.asarray(self.mu_g, dtype=float)
        delta = np.asarray(self.delta, dtype=float)
        if mu_g.shape != delta.shape:
            raise ValueError("mu_g and delta must have the same length")
        if np.any(np.diff(mu_g) <= 0):
            raise ValueError("mu_g must be strictly increasing")
        object.__setattr__(self, "mu_g", mu_g)
        object.__setattr__(self, "delta", delta)


def _xr_equation(x):
    return math.exp(x) * (x - 3.0) + 2.0 * x + 3.0


@lru_cache(maxsize=None)
def x_r_root():
    """Positive root of ``exp(x) (x - 3) + 2x + 3``: the branch boundary."""
    return brentq(_xr_equation, 2.0, 3.0, xtol=1e-15, rtol=4 * np.finfo(float).eps)


# Two-root branch.
#
# Taylor coefficients (in powers of alpha, leading powers removed) for
#   N = alpha^2 - 9 alpha sinh(alpha) + 2 (alpha^2 + 6) cosh(alpha) - 12
#   D = alpha cosh(alpha / 2) - 2 sinh(alpha / 2)
#   P = alpha + exp(alpha) (2 alpha - 3) + 3
#   Q = exp(alpha) (alpha - 2) + alpha + 2
# N ~ alpha^6, D ~ alpha^3, P ~ alpha^2 and Q ~ alpha^3, so the closed forms
# lose all precision as alpha -> 0.

def _series_coefficients():
    fact = [math.factorial(k) for k in range(2 * _SERIES_TERMS + 8)]
    n_coef = []
    for m in range(3, 3 + _SERIES_TERMS):
        n_coef.append(-9.0 / fact[2 * m - 1] + 2.0 / fact[2 * m - 2] + 12.0 / fact[2 * m])
    d_coef = [(1.0 / fact[2 * k] - 1.0 / fact[2 * k + 1]) / 4.0 ** k for k in range(1, 1 + _SERIES_TERMS)]
    p_coef = [(2.0 * n - 3.0) / fact[n] for n in range(2, 2 + 2 * _SERIES_TERMS)]
    q_coef = [(n - 2.0) / fact[n] for n in range(3, 3 + 2 * _SERIES_TERMS)]
    # highest power first for np.polyval
    return (np.array(n_coef[::-1]), np.array(d_coef[::-1]),
            np.array(p_coef[::-1]), np.array(q_coef[::-1]))


_N_COEF, _D_COEF, _P_COEF, _Q_COEF = _series_coefficients()


def two_root_ratios(alpha):
    """``(mu_ex / mu_g, overlap_ex / mu_g)`` on the two-root branch."""
    a = float(alpha)
    if a < _SERIES_ALPHA:
        a2 = a * a
        n = np.polyval(_N_COEF, a2)          # N / alpha^6
        d = np.polyval(_D_COEF, a2)          # D / alpha^3
        mu = 2.0 * n / (3.0 * a * d * d)
        p = np.polyval(_P_COEF, a)           # P / alpha^2
        q = np.polyval(_Q_COEF, a)           # Q / alpha^3
        exponent = -p / (3.0 * q)
    else:
        num = a * a - 9.0 * math.sinh(a) * a + 2.0 * (a * a + 6.0) * math.cosh(a) - 12.0
        den = 3.0 * a * (a * math.cosh(a / 2.0) - 2.0 * math.sinh(a / 2.0)) ** 2
        mu = 2.0 * num / den
        ea = math.exp(a)
        exponent = -a * (a + ea * (2.0 * a - 3.0) + 3.0) / (3.0 * (ea * (a - 2.0) + a + 2.0))
    ov = 2.0 * math.exp(exponent) * math.expm1(a) / a
    return float(mu), float(ov)


def one_root_ratios(beta):
    """``(mu_ex / mu_g, overlap_ex / mu_g)`` on the one-root branch."""
    b = float(beta)
    if b <= BETA_RESCALE:
        eb = math.exp(b)
        den = 2.0 * eb * (b - 3.0) + b * (b + 4.0) + 6.0
        mu = 4.0 * (eb * eb * (b - 3.0) ** 2 + 8.0 * eb * b * (b - 3.0)
                    + b * (b * (2.0 * b + 9.0) + 12.0) - 9.0) / den ** 2
        ov = 4.0 * (b * (math.cosh(b) + 2.0) - 3.0 * math.sinh(b)) / den
    else:
        # numerator and denominator multiplied by exp(-2 beta) (exp(-beta) for overlap)
        em = math.exp(-b)
        den = 2.0 * (b - 3.0) + em * (b * (b + 4.0) + 6.0)
        mu = 4.0 * ((b - 3.0) ** 2 + 8.0 * em * b * (b - 3.0)
                    + em * em * (b * (b * (2.0 * b + 9.0) + 12.0) - 9.0)) / den ** 2
        ov = 4.0 * (b * (0.5 * (1.0 + em * em) + 2.0 * em) - 1.5 * (1.0 - em * em)) / den
    return mu, ov


def _check_mu_g(mu_g):
    if not 0.0 < mu_g <= 1.0:
        raise ParamOutOfRange(f"mu_g must lie in (0, 1], got {mu_g}")


def _point(branch, param, mu_g, ratios):
    r_mu, r_ov = ratios
    mu_ex, ov_ex = mu_g * r_mu, mu_g * r_ov
    return BranchPoint(branch, float(param), float(mu_g), mu_ex, ov_ex,
                       non_gaussianity(mu_ex, mu_g, ov_ex))


def branch_two_root(mu_g, alpha):
    _check_mu_g(mu_g)
    if not 0.0 < alpha <= x_r_root():
        raise ParamOutOfRange(f"two-root parameter alpha must lie in (0, x_r={x_r_root():.6f}], got {alpha}")
    return _point(Branch.TWO_ROOT, alpha, mu_g, two_root_ratios(alpha))


def branch_one_root(mu_g, beta):
    _check_mu_g(mu_g)
    if not beta >= x_r_root():
        raise ParamOutOfRange(f"one-root parameter beta must be >= x_r={x_r_root():.6f}, got {beta}")
    return _point(Branch.ONE_ROOT, beta, mu_g, one_root_ratios(beta))


def branch_point(branch, mu_g, param):
    if Branch(branch) is Branch.TWO_ROOT:
        return branch_two_root(mu_g, param)
    return branch_one_root(mu_g, param)


def delta_ex_of(branch, param):
    """Extremal non-Gaussianity; independent of ``mu_g``."""
    return branch_point(branch, 1.0, param).delta_ex


def branch_params(samples_per_branch, include_beta3=True):
    """Parameter grids used for surface sweeps: log-spaced, both ending at x_r."""
    if samples_per_branch < 2:
        raise ValueError("need at least two samples per branch")
    xr = x_r_root()
    alphas = np.geomspace(ALPHA_MIN, xr, samples_per_branch)
    betas = np.geomspace(xr, BETA_MAX, samples_per_branch)
    alphas[-1] = betas[0] = xr
    if include_beta3:
        betas = np.unique(np.append(betas, 3.0))
    return alphas, betas


def upper_surface(mu_g_grid, samples_per_branch=25):
    """All extremal branch points for every ``mu_g`` of the grid.

    Sorted by ``(mu_g, branch, param)`` with the two-root branch first, so at
    each ``mu_g`` the points run continuously from small alpha through x_r to
    large beta.
    """
    alphas, betas = branch_params(samples_per_branch)
    out = []
    for mu_g in sorted(float(m) for m in mu_g_grid):
        out.extend(branch_two_root(mu_g, a) for a in alphas)
        out.extend(branch_one_root(mu_g, b) for b in betas)
    return out


def cs_delta_lower(mu, mu_g):
    """Lower bound on delta from ``Tr(rho rho_G) <= sqrt(mu mu_g)``."""
    return (math.sqrt(mu) - math.sqrt(mu_g)) ** 2 / (2.0 * mu)


def ratio_locus(target):
    """All ``(branch, param)`` with ``mu_ex / mu_g == target``.

    The ratio falls monotonically from infinity to R(x_r) along the two-root
    branch, keeps falling to 8/9 at beta = 3, then climbs towards 1 from below
    as beta -> inf.  Each monotone segment is searched separately.
    """
    xr = x_r_root()
    r_xr = one_root_ratios(xr)[0]
    sols = []
    if target >= r_xr:
        if target == r_xr:
            sols.append((Branch.TWO_ROOT, xr))
        else:
            lo = 1e-12
            f = lambda a: two_root_ratios(a)[0] - target  # noqa: E731
            if f(lo) < 0:
                raise NoSolution(f"ratio {target} beyond the reach of alpha >= {lo}")
            sols.append((Branch.TWO_ROOT, brentq(f, lo, xr, xtol=1e-15, rtol=1e-15)))
    f1 = lambda b: one_root_ratios(b)[0] - target  # noqa: E731
    if 8.0 / 9.0 <= target < r_xr:
        sols.append((Branch.ONE_ROOT, brentq(f1, xr, 3.0, xtol=1e-15, rtol=1e-15)))
    if 8.0 / 9.0 < target < 1.0:
        hi = 6.0
        while f1(hi) < 0 and hi < 1e3:
            hi *= 2.0
        # a target within roundoff of 1 is the beta -> inf limit, where delta -> 0
        if f1(hi) >= 0:
            sols.append((Branch.ONE_ROOT, brentq(f1, 3.0, hi, xtol=1e-15, rtol=1e-15)))
    return sols


def extremal_points_at(mu, mu_g):
    """Extremal branch points with purity ``mu`` at Gaussian purity ``mu_g``."""
    _check_mu_g(mu_g)
    return [branch_point(b, mu_g, p) for b, p in ratio_locus(mu / mu_g)]


def delta_ex_at(mu, mu_g):
    """Extremal (upper) non-Gaussianity at ``(mu, mu_g)``; max over solutions."""
    pts = extremal_points_at(mu, mu_g)
    if not pts:
        raise NoSolution(f"no extremal solution with mu={mu}, mu_g={mu_g}")
    return max(p.delta_ex for p in pts)


def ultimate_upper_points(mu_g):
    """Every extremal point on the pure-state plane ``mu_ex = 1``."""
    return extremal_points_at(1.0, mu_g)


def ultimate_upper(mu_g):
    """Purity-independent upper bound on delta at Gaussian purity ``mu_g``.

    The maximum of delta over all extremal solutions with ``mu_ex = 1``.  At
    ``mu_g = 1`` the covariance is that of a pure Gaussian; the zero-photon
    energy then forces ``rho = rho_G``, so the bound is exactly zero there
    even though an (unphysical) finite-beta extremal solution also reaches
    ``mu_ex = 1``.
    """
    _check_mu_g(mu_g)
    if mu_g == 1.0:
        return 0.0
    pts = ultimate_upper_points(mu_g)
    if not pts:
        raise NoSolution(f"mu_ex = 1 is unreachable for mu_g = {mu_g}")
    return max(p.delta_ex for p in pts)


def coherent_mixture_point(d, rel_tol=None):
    """``(mu_g, mu, overlap, delta)`` for the symmetric coherent mixture at ``d``."""
    W = coherent_mixture_wigner(d)
    mu_g = (1.0 + 2.0 * d * d) ** -0.5
    ref = gaussian_reference(CovarianceMatrix(1.0 + 2.0 * d * d, 0.0, 1.0))
    mu = purity(W, rel_tol=rel_tol)
    ov = overlap(W, ref.wigner(), rel_tol=rel_tol)
    return mu_g, mu, ov, non_gaussianity(mu, mu_g, ov)


def displacement_for(mu_g):
    """Inverse of ``mu_g = (1 + 2 d^2)^(-1/2)``."""
    return math.sqrt(max(mu_g ** -2 - 1.0, 0.0) / 2.0)


def coherent_lower_estimate(d_grid, rel_tol=None):
    """Lower estimate of the ultimate bound from symmetric coherent mixtures."""
    pts = {}
    for d in d_grid:
        if d < 0:
            raise ValueError("displacements must be non-negative")
        mu_g, _, _, delta = coherent_mixture_point(float(d), rel_tol=rel_tol)
        pts[mu_g] = delta
    mu_g = np.array(sorted(pts))
    return BoundCurve(mu_g, np.array([pts[m] for m in mu_g]), Provenance.COHERENT_LOWER)


def resample(curve, mu_g_grid):
    """Monotone (PCHIP) interpolation of a curve onto a new grid."""
    if len(curve.mu_g) < 2:
        raise ValueError("need at least two points to interpolate")
    return PchipInterpolator(curve.mu_g, curve.delta, extrapolate=False)(np.asarray(mu_g_grid, dtype=float))


def ultimate_upper_curve(mu_g_grid):
    grid = np.asarray(sorted(float(m) for m in mu_g_grid))
    return BoundCurve(grid, np.array([ultimate_upper(m) for m in grid]), Provenance.ULTIMATE_UPPER)


def purity_extremity_check():
    """``(ratio at beta = 3, argmin of the ratio over beta in [x_r, 20])``."""
    ratio_at_3 = one_root_ratios(3.0)[0]
    res = minimize_scalar(lambda b: one_root_ratios(b)[0], bounds=(x_r_root(), 20.0),
                          method="bounded", options={"xatol": 1e-10})
    return ratio_at_3, float(res.x)
