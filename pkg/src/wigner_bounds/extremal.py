"""Direct numerical construction of extremal radial Wigner functions.

The extremal form ``W(r) = A1 + A2 g(r) + A3 r`` with ``g`` the thermal
Wigner function is linear in the coefficients (solved for in the centred
basis used by :class:`~wigner_bounds.phase_space.Extremal`), and so are the normalisation,
variance and root constraints.  The one-root branch is therefore a single
3x3 solve.  For the two-root branch the support width is fixed by the
parameter and the left edge ``r_A`` is found by a scalar root search on the
variance residual.

All moment integrals are done by quadrature, so the purities and overlaps of
the constructed functions are an independent check on the closed forms in
:mod:`wigner_bounds.bounds`.
"""

from dataclasses import dataclass, field
import math

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from . import bounds
from .bounds import Branch
from .errors import NegativityDetected, NoBracket, ParamOutOfRange, SingularSystem
from .phase_space import (
    Extremal,
    Thermal,
    covariance_of,
    curvature_term,
    normalization,
    overlap,
    purity,
)
from .quadrature import integrate_radial

ALPHA_MIN = bounds.ALPHA_MIN
NEGATIVITY_TOL = 1e-10
GRID_POINTS = 2048
COND_LIMIT = 1e13
SEARCH_WINDOW = 50.0  # in units of C
_QUAD_TOL = 1e-13


@dataclass(frozen=True)
class ExtremalSpec:
    mu_g: float
    branch: Branch
    param: float

    def __post_init__(self):
        object.__setattr__(self, "branch", Branch(self.branch))
        if not 0.0 < self.mu_g <= 1.0:
            raise ParamOutOfRange(f"mu_g must lie in (0, 1], got {self.mu_g}")
        xr = bounds.x_r_root()
        if self.branch is Branch.TWO_ROOT and not ALPHA_MIN <= self.param <= xr:
            raise ParamOutOfRange(f"alpha must lie in [{ALPHA_MIN}, x_r={xr:.6f}], got {self.param}")
        if self.branch is Branch.ONE_ROOT and not self.param >= xr:
            raise ParamOutOfRange(f"beta must be >= x_r={xr:.6f}, got {self.param}")

    @property
    def C(self):
        return 0.5 / self.mu_g


@dataclass(frozen=True)
class ExtremalSolution:
    form: Extremal
    residuals: dict = field(default_factory=dict)

    @property
    def max_residual(self):
        return max(abs(v) for v in self.residuals.values())


def _basis(C, m):
    """Centred basis {1, r - m, curvature_term((r - m) / 2C)} spanning the extremal form."""
    return [
        lambda r: np.ones_like(r),
        lambda r: r - m,
        lambda r: curvature_term((r - m) / (2.0 * C)),
    ]


def _moments(C, lo, hi):
    """Integrals of the basis and of basis * r over [lo, hi]."""
    basis = _basis(C, 0.5 * (lo + hi))
    m0 = [integrate_radial(f, (lo, hi), rel_tol=_QUAD_TOL) for f in basis]
    m1 = [integrate_radial(lambda r, f=f: f(r) * r, (lo, hi), rel_tol=_QUAD_TOL) for f in basis]
    return np.array(m0), np.array(m1)


def _basis_at(C, lo, hi, r):
    return np.array([float(f(np.array(r))) for f in _basis(C, 0.5 * (lo + hi))])


def _solve(rows, rhs):
    rows = np.asarray(rows, dtype=float)
    scale = np.max(np.abs(rows), axis=0)
    scaled = rows / scale
    if np.linalg.cond(scaled) > COND_LIMIT:
        raise SingularSystem(f"constraint system condition number {np.linalg.cond(scaled):.3e}")
    return np.linalg.solve(scaled, rhs) / scale


def _residuals(form):
    C = form.C
    res = {
        "normalization": normalization(form, rel_tol=_QUAD_TOL) - 1.0,
        "variance": covariance_of(form, rel_tol=_QUAD_TOL).g_xx - 2.0 * C,
        "boundary_hi": float(form._eval(np.array(form.r_hi))),
    }
    if form.r_lo > 0:
        res["boundary_lo"] = float(form._eval(np.array(form.r_lo)))
    return res


def minimum_on_support(form, points=GRID_POINTS):
    """Minimum of the form on its support: dense grid plus local refinement."""
    lo, hi = form.support
    r = np.linspace(lo, hi, points)
    w = form._eval(r)
    k = int(np.argmin(w))
    a, b = r[max(k - 1, 0)], r[min(k + 1, points - 1)]
    best = float(w[k])
    if b > a:
        res = minimize_scalar(lambda x: float(form._eval(np.array(x))), bounds=(a, b), method="bounded",
                              options={"xatol": 1e-12 * max(1.0, hi)})
        best = min(best, float(res.fun))
    return best


def _finish(form):
    w_min = minimum_on_support(form)
    if w_min < -NEGATIVITY_TOL:
        raise NegativityDetected(f"extremal form reaches {w_min:.3e} on its support")
    return ExtremalSolution(form, _residuals(form))


def solve_one_root(mu_g, beta):
    """Extremal function vanishing only at ``r_B = beta / mu_g``."""
    spec = ExtremalSpec(mu_g, Branch.ONE_ROOT, beta)
    C = spec.C
    r_b = beta / mu_g
    m0, m1 = _moments(C, 0.0, r_b)
    rows = [_basis_at(C, 0.0, r_b, r_b), math.pi * m0, math.pi * m1]
    c = _solve(rows, np.array([0.0, 1.0, 2.0 * C]))
    return _finish(Extremal.from_centred(*map(float, c), C, 0.0, r_b))


def _two_root_coefficients(C, r_a, width):
    r_b = r_a + width
    m0, m1 = _moments(C, r_a, r_b)
    rows = [_basis_at(C, r_a, r_b, r_a), _basis_at(C, r_a, r_b, r_b), math.pi * m0]
    c = _solve(rows, np.array([0.0, 0.0, 1.0]))
    return c, math.pi * float(m1 @ c) - 2.0 * C


def solve_two_root(mu_g, alpha):
    """Extremal function vanishing at both ends of ``[r_A, r_A + alpha / mu_g]``.

    ``r_A`` is the point in ``[0, 50 C]`` where the variance matches the
    Gaussian reference.  At ``alpha = x_r`` the root sits at ``r_A = 0``.
    """
    spec = ExtremalSpec(mu_g, Branch.TWO_ROOT, alpha)
    C = spec.C
    width = alpha / mu_g

    def residual(r_a):
        return _two_root_coefficients(C, r_a, width)[1]

    hi = SEARCH_WINDOW * C
    f0, f_hi = residual(0.0), residual(hi)
    if abs(f0) <= 1e-10 * C:
        r_a = 0.0
    elif f0 * f_hi > 0:
        raise NoBracket(f"variance residual keeps its sign on [0, {hi:g}] "
                        f"(f(0)={f0:.3e}, f(hi)={f_hi:.3e}) for mu_g={mu_g}, alpha={alpha}")
    else:
        r_a = brentq(residual, 0.0, hi, xtol=1e-14 * C, rtol=4 * np.finfo(float).eps)
    c, _ = _two_root_coefficients(C, r_a, width)
    return _finish(Extremal.from_centred(*map(float, c), C, r_a, r_a + width))


def solve(spec):
    if spec.branch is Branch.TWO_ROOT:
        return solve_two_root(spec.mu_g, spec.param)
    return solve_one_root(spec.mu_g, spec.param)


@dataclass(frozen=True)
class OracleReport:
    spec: ExtremalSpec
    purity_num: float
    purity_formula: float
    overlap_num: float
    overlap_formula: float
    r_lo: float
    r_hi: float
    max_residual: float

    @property
    def purity_rel_err(self):
        return abs(self.purity_num - self.purity_formula) / abs(self.purity_formula)

    @property
    def overlap_rel_err(self):
        return abs(self.overlap_num - self.overlap_formula) / abs(self.overlap_formula)

    @property
    def max_rel_err(self):
        return max(self.purity_rel_err, self.overlap_rel_err)

    @property
    def purity_ratio(self):
        return self.purity_num / self.spec.mu_g

    def as_dict(self):
        return {
            "branch": self.spec.branch.value,
            "mu_g": self.spec.mu_g,
            "param": self.spec.param,
            "r_lo": self.r_lo,
            "r_hi": self.r_hi,
            "purity_num": self.purity_num,
            "purity_formula": self.purity_formula,
            "purity_ratio_num": self.purity_ratio,
            "purity_ratio_formula": self.purity_formula / self.spec.mu_g,
            "overlap_num": self.overlap_num,
            "overlap_formula": self.overlap_formula,
            "max_rel_err": self.max_rel_err,
            "max_constraint_residual": self.max_residual,
        }


def verify_against_closed_form(spec):
    """Compare the constructed solution's purity and overlap to the closed forms."""
    sol = solve(spec)
    form = sol.form
    kw = dict(check_normalization=False, rel_tol=_QUAD_TOL)
    mu_num = purity(form, **kw)
    ov_num = overlap(form, Thermal(form.C), **kw)
    pt = bounds.branch_point(spec.branch, spec.mu_g, spec.param)
    return OracleReport(spec, mu_num, pt.mu_ex, ov_num, pt.overlap_ex, form.r_lo, form.r_hi, sol.max_residual)
