"""Necessary physicality tests for candidate radial Wigner functions.

A phase-space function whose overlap with some pure state's Wigner function
is negative cannot be a Wigner function.  Number states are used as the test
pure states.  Passing every test proves nothing; failing one is conclusive.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from .phase_space import NORM_TOL, Fock, check_normalized, covariance_of, overlap
from .quadrature import integrate_radial

DEFAULT_N_MAX = 40
NEGATIVE_TOL = 1e-9
MARGINAL_POINTS = 129

PASSED = "PassedUpToNmax"
FAILED = "FailedAtN"
MARGINAL_NEGATIVE = "MarginalNegative"


@dataclass(frozen=True)
class PhysicalityReport:
    marginal_min: float
    n_max: int
    overlaps: list = field(default_factory=list)
    first_negative_n: int = None
    indeterminate: list = field(default_factory=list)
    verdict: str = PASSED

    @property
    def verdict_label(self):
        if self.verdict == FAILED:
            return f"{FAILED}({self.first_negative_n})"
        return self.verdict

    def as_dict(self):
        return {
            "verdict": self.verdict_label,
            "marginal_min": self.marginal_min,
            "n_max": self.n_max,
            "first_negative_n": self.first_negative_n,
            "indeterminate_n": list(self.indeterminate),
            "fock_overlaps": [[n, v] for n, v in self.overlaps],
        }


def marginal_x(W, x, rel_tol=None):
    """Position marginal ``integral(W(x**2 + p**2) dp)`` of a radial function."""
    x2 = float(x) ** 2
    lo, hi = W.support
    p_lo = math.sqrt(max(lo - x2, 0.0))
    if math.isfinite(hi):
        if hi <= x2:
            return 0.0
        p_hi = math.sqrt(hi - x2)
    else:
        p_hi = math.inf
    if not p_hi > p_lo:
        return 0.0
    f = lambda p: W(x2 + p * p)  # noqa: E731
    scale = math.sqrt(W.decay_scale)
    return 2.0 * integrate_radial(f, (p_lo, p_hi), rel_tol=rel_tol, scale=scale)


def marginal_scan(W, x_max, points=MARGINAL_POINTS, rel_tol=None):
    xs = np.linspace(0.0, x_max, points)
    return xs, np.array([marginal_x(W, x, rel_tol=rel_tol) for x in xs])


def hillery_fock_test(W, n_max=DEFAULT_N_MAX, tol=NEGATIVE_TOL, check_normalization=True,
                      norm_tol=NORM_TOL, rel_tol=None, marginal_min=math.nan):
    """Overlaps of ``W`` with the number states ``0..n_max``.

    Any overlap below ``-tol`` certifies that ``W`` is not a Wigner function.
    Overlaps in ``[-tol, 0)`` are recorded as indeterminate and the sweep
    carries on.
    """
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    if check_normalization:
        check_normalized(W, norm_tol, rel_tol)
    overlaps, indeterminate = [], []
    first = None
    for n in range(n_max + 1):
        value = overlap(W, Fock(n), check_normalization=False, rel_tol=rel_tol)
        overlaps.append((n, value))
        if value < -tol:
            if first is None:
                first = n
        elif value < 0:
            indeterminate.append(n)
    verdict = PASSED if first is None else FAILED
    return PhysicalityReport(marginal_min, n_max, overlaps, first, indeterminate, verdict)


def check_candidate(W, n_max=DEFAULT_N_MAX, tol=NEGATIVE_TOL, norm_tol=NORM_TOL, rel_tol=None):
    """Normalisation, then marginal positivity, then the number-state sweep.

    The marginal is scanned on 129 points of ``[0, 6 sqrt(C)]`` with ``2C``
    the variance of ``W``.  A negative marginal stops the pipeline.
    """
    check_normalized(W, norm_tol, rel_tol)
    C = 0.5 * covariance_of(W, rel_tol=rel_tol).g_xx
    _, marg = marginal_scan(W, 6.0 * math.sqrt(C), rel_tol=rel_tol)
    m_min = float(np.min(marg))
    if m_min < -tol:
        return PhysicalityReport(m_min, n_max, verdict=MARGINAL_NEGATIVE)
    return hillery_fock_test(W, n_max, tol=tol, check_normalization=False, rel_tol=rel_tol,
                             marginal_min=m_min)
