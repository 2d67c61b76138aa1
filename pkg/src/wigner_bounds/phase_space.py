"""Single-mode phase-space primitives.

Convention: quadratures are scaled so that the vacuum has covariance matrix
equal to the identity and Wigner function ``exp(-(x**2 + p**2)) / pi``.  With
this choice ``Tr(rho rho') = 2 pi * integral(W W' dx dp)`` and a thermal state
``W(r) = exp(-r / 2C) / (2 pi C)`` has purity ``1 / (2C)``.

Rotation-invariant functions are written in terms of ``r = x**2 + p**2``, for
which ``dx dp -> pi dr``.
"""

from dataclasses import dataclass, field
import logging
import math

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import DivergentMoment, NonConvergence, NormalizationViolation, NotPositiveDefinite
from .quadrature import integrate_planar, integrate_radial

log = logging.getLogger(__name__)

NORM_TOL = 1e-8


@dataclass(frozen=True)
class CovarianceMatrix:
    """Symmetric 2x2 second-moment matrix, ``gamma_ij = <{r_i, r_j}>``."""

    g_xx: float
    g_xp: float
    g_pp: float

    def __post_init__(self):
        if not (self.g_xx > 0 and self.det > 0):
            raise NotPositiveDefinite(f"covariance matrix {self.matrix.tolist()} is not positive definite")

    @classmethod
    def from_matrix(cls, m):
        m = np.asarray(m, dtype=float)
        if m.shape != (2, 2) or abs(m[0, 1] - m[1, 0]) > 1e-12 * max(1.0, abs(m[0, 1])):
            raise ValueError("expected a symmetric 2x2 matrix")
        return cls(float(m[0, 0]), float(0.5 * (m[0, 1] + m[1, 0])), float(m[1, 1]))

    @classmethod
    def isotropic(cls, value):
        return cls(float(value), 0.0, float(value))

    @property
    def matrix(self):
        return np.array([[self.g_xx, self.g_xp], [self.g_xp, self.g_pp]])

    @property
    def det(self):
        return self.g_xx * self.g_pp - self.g_xp ** 2

    def is_physical(self, tol=1e-12):
        """Heisenberg condition ``det gamma >= 1``."""
        return self.det >= 1.0 - tol


@dataclass(frozen=True)
class PlanarFunction:
    """A Wigner function ``W(x, p)`` with a bounding box for quadrature.

    ``func`` must accept broadcastable arrays.  Outside ``box`` the function
    is assumed negligible; planar quadrature grows the box to confirm this.
    """

    func: object
    box: tuple
    label: str = "planar"

    def __call__(self, x, p):
        return self.func(x, p)


class RadialFunction:
    """Rotation-invariant Wigner function of ``r = x**2 + p**2``.

    Subclasses define ``support``, ``decay_scale`` and ``_eval``; values are
    zero outside the support.
    """

    support = (0.0, math.inf)
    decay_scale = 1.0
    kind = "radial"

    def _eval(self, r):
        raise NotImplementedError

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        lo, hi = self.support
        inside = (r >= lo) & (r <= hi)
        with np.errstate(over="ignore", invalid="ignore"):
            val = self._eval(np.where(inside, r, lo))
        return np.where(inside, val, 0.0)

    def breakpoints(self):
        return None

    def box_half_width(self):
        lo, hi = self.support
        if math.isfinite(hi):
            return math.sqrt(hi)
        extra = 0.0 if self.breakpoints() is None else float(np.max(self.breakpoints()))
        return math.sqrt(lo + extra + 40.0 * self.decay_scale)

    def to_planar(self):
        b = self.box_half_width()
        return PlanarFunction(lambda x, p: self(x * x + p * p), (-b, b, -b, b), label=self.kind)


@dataclass(frozen=True)
class Thermal(RadialFunction):
    C: float
    kind = "thermal"

    def __post_init__(self):
        if not self.C > 0:
            raise ValueError(f"thermal parameter C must be positive, got {self.C}")

    @property
    def decay_scale(self):
        return 2.0 * self.C

    def _eval(self, r):
        return np.exp(-r / (2.0 * self.C)) / (2.0 * math.pi * self.C)


def curvature_term(u):
    """``expm1(-u) + u``, accurate for small ``u`` where it behaves like u**2 / 2."""
    u = np.asarray(u, dtype=float)
    small = np.abs(u) < 0.1
    us = np.where(small, u, 0.0)
    series = np.zeros_like(us)
    term = np.ones_like(us)
    for k in range(2, 14):
        term = term * (-us) / k if k > 2 else us * us / 2.0
        series = series + term
    with np.errstate(over="ignore"):
        direct = np.expm1(-u) + u
    return np.where(small, series, direct)


@dataclass(frozen=True)
class Extremal(RadialFunction):
    """``A1 + A2 * exp(-r/2C) / (2 pi C) + A3 * r`` on ``[r_lo, r_hi]``.

    Evaluation goes through the equivalent expansion about the support
    midpoint ``m``, ``w_m + c1 (r - m) + c2 * curvature_term((r - m) / 2C)``.
    On narrow supports the three A-terms are huge and nearly cancel; a solver
    that already has the centred coefficients passes them as ``centred`` so
    no precision is lost.
    """

    A1: float
    A2: float
    A3: float
    C: float
    r_lo: float
    r_hi: float
    centred: tuple = None
    kind = "extremal"

    def __post_init__(self):
        if self.centred is None:
            m = self.midpoint
            c2 = self.A2 * math.exp(-m / (2.0 * self.C)) / (2.0 * math.pi * self.C)
            w_m = self.A1 + c2 + self.A3 * m
            object.__setattr__(self, "centred", (w_m, self.A3 - c2 / (2.0 * self.C), c2))
        else:
            object.__setattr__(self, "centred", tuple(float(c) for c in self.centred))

    @classmethod
    def from_centred(cls, w_m, c1, c2, C, r_lo, r_hi):
        m = 0.5 * (r_lo + r_hi)
        A2 = c2 * 2.0 * math.pi * C * math.exp(m / (2.0 * C))
        A3 = c1 + c2 / (2.0 * C)
        A1 = w_m - c2 - A3 * m
        return cls(A1, A2, A3, C, r_lo, r_hi, centred=(w_m, c1, c2))

    @property
    def midpoint(self):
        return 0.5 * (self.r_lo + self.r_hi)

    @property
    def support(self):
        return (self.r_lo, self.r_hi)

    @property
    def decay_scale(self):
        return 2.0 * self.C

    def _eval(self, r):
        w_m, c1, c2 = self.centred
        d = r - self.midpoint
        return w_m + c1 * d + c2 * curvature_term(d / (2.0 * self.C))


@dataclass(frozen=True)
class Fock(RadialFunction):
    n: int
    kind = "fock"

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise ValueError(f"Fock index must be a non-negative integer, got {self.n}")

    def _eval(self, r):
        sign = -1.0 if self.n % 2 else 1.0
        return sign * np.exp(-r) * laguerre_eval(self.n, 2.0 * r) / math.pi

    def breakpoints(self):
        # L_n(2r) oscillates on [0, 2n + 1]; split into 4n panels there
        if self.n == 0:
            return None
        return np.linspace(0.0, 2.0 * self.n + 2.0, 4 * self.n + 1)


@dataclass(frozen=True, eq=False)
class Sampled(RadialFunction):
    """Tabulated W(r), interpolated by a monotone-preserving cubic (PCHIP).

    Integrals over sampled data are only as good as the sampling; callers
    should not expect the 1e-8 guarantees of the analytic variants.
    """

    r: np.ndarray
    w: np.ndarray
    kind = "sampled"
    _interp: object = field(init=False, repr=False)

    def __post_init__(self):
        r = np.asarray(self.r, dtype=float)
        w = np.asarray(self.w, dtype=float)
        if r.ndim != 1 or r.shape != w.shape or len(r) < 4:
            raise ValueError("sampled arrays must be 1-D, equal length and have at least 4 points")
        if not np.all(np.isfinite(r)) or not np.all(np.isfinite(w)):
            raise ValueError("sampled arrays must be finite")
        if r[0] < 0 or np.any(np.diff(r) <= 0):
            raise ValueError("sampled r-grid must be non-negative and strictly increasing")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "_interp", PchipInterpolator(r, w, extrapolate=False))

    @property
    def support(self):
        return (float(self.r[0]), float(self.r[-1]))

    def _eval(self, r):
        return self._interp(r)

    def breakpoints(self):
        return self.r


@dataclass(frozen=True, eq=False)
class RadialMixture(RadialFunction):
    """Convex (or affine) combination of radial functions, e.g. Fock mixtures."""

    weights: tuple
    components: tuple
    kind = "mixture"

    def __post_init__(self):
        if len(self.weights) != len(self.components) or not self.components:
            raise ValueError("need one weight per component")
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        object.__setattr__(self, "components", tuple(self.components))

    @property
    def support(self):
        return (min(c.support[0] for c in self.components), max(c.support[1] for c in self.components))

    @property
    def decay_scale(self):
        return max(c.decay_scale for c in self.components)

    def _eval(self, r):
        return sum(w * c(r) for w, c in zip(self.weights, self.components))

    def breakpoints(self):
        bps = [b for b in (c.breakpoints() for c in self.components) if b is not None]
        return np.unique(np.concatenate(bps)) if bps else None


def laguerre_eval(n, x):
    """Laguerre polynomial ``L_n(x)`` by the upward three-term recurrence."""
    if n < 0:
        raise ValueError("n must be non-negative")
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return prev
    cur = 1.0 - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 - x) * cur - k * prev) / (k + 1)
    return cur


def fock_wigner(n):
    """Wigner function of the number state ``|n>``."""
    return Fock(int(n))


def thermal_wigner(C):
    return Thermal(float(C))


def vacuum_wigner():
    return Thermal(0.5)


def coherent_mixture_wigner(d):
    """Equal mixture of coherent states displaced to ``x = +d`` and ``x = -d``."""
    if d < 0:
        raise ValueError("displacement must be non-negative")
    d = float(d)

    def w(x, p):
        q = np.exp(-(p * p))
        return (np.exp(-(x - d) ** 2) + np.exp(-(x + d) ** 2)) * q / (2.0 * math.pi)

    b = 7.0
    return PlanarFunction(w, (-d - b, d + b, -b, b), label=f"coherent_mixture(d={d:g})")


def _as_planar(W):
    return W.to_planar() if isinstance(W, RadialFunction) else W


def _intersect(s1, s2):
    lo, hi = max(s1[0], s2[0]), min(s1[1], s2[1])
    return (lo, hi) if hi > lo else None


def _radial_integral(f, W_list, support, rel_tol):
    bps = [b for b in (W.breakpoints() for W in W_list) if b is not None]
    breakpoints = np.concatenate(bps) if bps else None
    # the product decays at least as fast as its fastest-decaying factor
    scales = [W.decay_scale for W in W_list if math.isinf(W.support[1])]
    scale = min(scales) if scales else 1.0
    return integrate_radial(f, support, rel_tol=rel_tol, breakpoints=breakpoints, scale=scale)


def normalization(W, rel_tol=None):
    """Total weight ``integral(W dx dp)``; equals one for a valid Wigner function."""
    if isinstance(W, RadialFunction):
        return math.pi * _radial_integral(W, [W], W.support, rel_tol)
    return integrate_planar(W.func, W.box, rel_tol=rel_tol)


def check_normalized(W, tol=NORM_TOL, rel_tol=None):
    value = normalization(W, rel_tol=rel_tol)
    if abs(value - 1.0) > tol:
        raise NormalizationViolation(f"Wigner function integrates to {value!r}, not 1 (tolerance {tol:g})")
    return value


def overlap(W, W2, check_normalization=True, norm_tol=NORM_TOL, rel_tol=None):
    """``Tr(rho rho') = 2 pi * integral(W W2 dx dp)``.

    Two radial arguments take the one-dimensional path
    ``2 pi**2 * integral(W(r) W2(r) dr)`` over the intersection of supports.
    """
    if check_normalization:
        check_normalized(W, norm_tol, rel_tol)
        if W2 is not W:
            check_normalized(W2, norm_tol, rel_tol)
    if isinstance(W, RadialFunction) and isinstance(W2, RadialFunction):
        support = _intersect(W.support, W2.support)
        if support is None:
            return 0.0
        if W2 is W:
            integrand = lambda r: W(r) ** 2  # noqa: E731
        else:
            integrand = lambda r: W(r) * W2(r)  # noqa: E731
        value = 2.0 * math.pi ** 2 * _radial_integral(integrand, [W, W2], support, rel_tol)
    else:
        A, B = _as_planar(W), _as_planar(W2)
        box = (max(A.box[0], B.box[0]), min(A.box[1], B.box[1]),
               max(A.box[2], B.box[2]), min(A.box[3], B.box[3]))
        if box[1] <= box[0] or box[3] <= box[2]:
            box = A.box
        value = 2.0 * math.pi * integrate_planar(lambda x, p: A(x, p) * B(x, p), box, rel_tol=rel_tol)
    if not -2.0 <= value <= 2.0:
        log.warning("overlap %.6g outside [-2, 2]; inputs are probably not Wigner functions", value)
    return value


def purity(W, **kwargs):
    """``Tr(rho**2)`` computed as the self-overlap."""
    return overlap(W, W, **kwargs)


def covariance_of(W, rel_tol=None):
    """Covariance matrix of a centred Wigner function."""
    try:
        if isinstance(W, RadialFunction):
            # pi * integral(W r dr) = <x^2 + p^2> = gamma_xx = gamma_pp
            g = math.pi * _radial_integral(lambda r: W(r) * r, [W], W.support, rel_tol)
            return CovarianceMatrix.isotropic(g)
        gxx = 2.0 * integrate_planar(lambda x, p: x * x * W(x, p), W.box, rel_tol=rel_tol)
        gpp = 2.0 * integrate_planar(lambda x, p: p * p * W(x, p), W.box, rel_tol=rel_tol)
        gxp = 2.0 * integrate_planar(lambda x, p: x * p * W(x, p), W.box, rel_tol=rel_tol)
    except NonConvergence as exc:
        raise DivergentMoment(f"second moment of {getattr(W, 'kind', 'W')} did not converge") from exc
    if abs(gxp) < 1e-13 * math.sqrt(gxx * gpp):
        gxp = 0.0
    return CovarianceMatrix(gxx, gxp, gpp)


@dataclass(frozen=True)
class GaussianState:
    """Centred Gaussian state with covariance ``cov``."""

    cov: CovarianceMatrix

    @property
    def purity(self):
        return self.cov.det ** -0.5

    @property
    def thermal_C(self):
        """Thermal parameter of the symplectically equivalent thermal state."""
        return 0.5 * math.sqrt(self.cov.det)

    def is_thermal(self, tol=1e-14):
        c = self.cov
        return abs(c.g_xp) <= tol * c.g_xx and abs(c.g_xx - c.g_pp) <= tol * c.g_xx

    def radial(self):
        if not self.is_thermal():
            raise ValueError("only rotation-invariant Gaussians have a radial form")
        return Thermal(0.5 * self.cov.g_xx)

    def wigner(self):
        inv = np.linalg.inv(self.cov.matrix)
        a, b, c = inv[0, 0], inv[0, 1], inv[1, 1]
        norm = 1.0 / (math.pi * math.sqrt(self.cov.det))

        def w(x, p):
            return norm * np.exp(-(a * x * x + 2.0 * b * x * p + c * p * p))

        hx = math.sqrt(40.0 * self.cov.g_xx)
        hp = math.sqrt(40.0 * self.cov.g_pp)
        return PlanarFunction(w, (-hx, hx, -hp, hp), label="gaussian")


def gaussian_reference(cov):
    """The centred Gaussian state sharing covariance matrix ``cov``."""
    if not isinstance(cov, CovarianceMatrix):
        cov = CovarianceMatrix.from_matrix(cov)
    return GaussianState(cov)


def non_gaussianity(mu, mu_g, overlap):
    """``(mu + mu_g - 2 * overlap) / (2 * mu)``."""
    return (mu + mu_g - 2.0 * overlap) / (2.0 * mu)


def williamson_1mode(cov):
    """Symplectic ``S`` (det 1) with ``S gamma S^T = 2C * I``.

    Returns ``(S, C)`` where ``2C = sqrt(det gamma)``.  ``S`` rotates onto the
    principal axes of gamma and then squeezes them to equal variance.
    """
    if not isinstance(cov, CovarianceMatrix):
        cov = CovarianceMatrix.from_matrix(cov)
    nu = math.sqrt(cov.det)
    theta = 0.5 * math.atan2(2.0 * cov.g_xp, cov.g_xx - cov.g_pp)
    c, s = math.cos(theta), math.sin(theta)
    rot = np.array([[c, -s], [s, c]])
    lam = np.diag(rot.T @ cov.matrix @ rot)
    S = np.diag(np.sqrt(nu / lam)) @ rot.T
    return S, 0.5 * nu


def symplectic_transform(W, S):
    """Wigner function of the state transformed by the linear map ``S``.

    ``W'(z) = W(S^-1 z)``; for det S = 1 this preserves normalisation,
    overlaps and positivity.
    """
    S = np.asarray(S, dtype=float)
    Si = np.linalg.inv(S)
    P = _as_planar(W)

    def w(x, p):
        return P(Si[0, 0] * x + Si[0, 1] * p, Si[1, 0] * x + Si[1, 1] * p)

    x0, x1, p0, p1 = P.box
    corners = S @ np.array([[x0, x0, x1, x1], [p0, p1, p0, p1]])
    box = (corners[0].min(), corners[0].max(), corners[1].min(), corners[1].max())
    return PlanarFunction(w, box, label=f"S*{P.label}")
