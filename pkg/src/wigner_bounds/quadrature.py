"""Adaptive quadrature used by every phase-space integral in the package.

Radial integrals use a vectorised adaptive Gauss-Kronrod (10, 21) scheme with
QUADPACK-style error estimates.  Semi-infinite ranges are mapped onto [0, 1)
with ``r = a + s * t / (1 - t)`` where ``s`` is the decay length of the
integrand.  Planar integrals use tensor-product Gauss-Legendre panels on a
bounding box that is refined and grown until the result stops moving.
"""

import math
import os

import numpy as np

from .errors import NonConvergence

DEFAULT_REL_TOL = 1e-10
DEFAULT_ABS_TOL = 1e-14
TOL_ENV_VAR = "WIGNER_BOUNDS_TOL"

# Positive Kronrod nodes of the 21-point rule; every second one is a
# 10-point Gauss-Legendre node.
_KRONROD_NODES = np.array([
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.0,
])

_EPS = np.finfo(float).eps


def _kronrod_rule():
    """Return (nodes, kronrod weights, gauss weights) on [-1, 1].

    Weights are recovered from the nodes by requiring exactness on the
    Legendre polynomials of even degree up to 30; the rule is exact to
    degree 31 only if the nodes are right, so the least-squares residual
    doubles as a self-check.
    """
    pos = _KRONROD_NODES
    nodes = np.concatenate([pos, -pos[-2::-1]])
    degrees = np.arange(0, 31, 2)
    # sum_j w_j P_k(x_j) = 2 * [k == 0]; symmetric weights -> unknowns on pos.
    mult = np.where(pos == 0.0, 1.0, 2.0)
    A = np.array([np.polynomial.legendre.legval(pos, np.eye(k + 1)[k]) * mult for k in degrees])
    rhs = np.zeros(len(degrees))
    rhs[0] = 2.0
    w_pos, *_ = np.linalg.lstsq(A, rhs, rcond=None)
    residual = np.max(np.abs(A @ w_pos - rhs))
    if residual > 1e-13:
        raise RuntimeError(f"Kronrod rule construction failed (residual {residual:.2e})")
    wk = np.concatenate([w_pos, w_pos[-2::-1]])

    gx, gw = np.polynomial.legendre.leggauss(10)
    wg = np.zeros_like(nodes)
    for x, w in zip(gx, gw):
        wg[np.argmin(np.abs(nodes - x))] = w
    return nodes, wk, wg


GK_NODES, GK_WEIGHTS, GAUSS_WEIGHTS = _kronrod_rule()


def default_rel_tol():
    """Relative tolerance for integrals, overridable by ``WIGNER_BOUNDS_TOL``."""
    value = os.environ.get(TOL_ENV_VAR)
    if value is None:
        return DEFAULT_REL_TOL
    tol = float(value)
    if not tol > 0:
        raise ValueError(f"{TOL_ENV_VAR} must be positive, got {value!r}")
    return tol


def _gk21(f, a, b):
    """Apply the rule to arrays of intervals; returns (integral, error, resabs)."""
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    x = mid[:, None] + half[:, None] * GK_NODES[None, :]
    fx = np.asarray(f(x), dtype=float).reshape(x.shape)
    k = fx @ GK_WEIGHTS
    g = fx @ GAUSS_WEIGHTS
    mean = 0.5 * k
    resabs = np.abs(fx) @ GK_WEIGHTS
    resasc = np.abs(fx - mean[:, None]) @ GK_WEIGHTS
    err = np.abs(k - g) * np.abs(half)
    resabs = resabs * np.abs(half)
    resasc = resasc * np.abs(half)
    with np.errstate(divide="ignore", invalid="ignore"):
        scaled = resasc * np.minimum(1.0, (200.0 * err / resasc) ** 1.5)
    err = np.where((resasc != 0) & (err != 0), scaled, err)
    floor = 50.0 * _EPS * resabs
    err = np.maximum(err, floor)
    return k * half, err, floor


def _adaptive(f, edges, rel_tol, abs_tol, max_intervals):
    a = np.asarray(edges[:-1], dtype=float)
    b = np.asarray(edges[1:], dtype=float)
    vals, errs, floors = _gk21(f, a, b)
    width_total = float(np.sum(b - a))
    while True:
        total = float(np.sum(vals))
        err_total = float(np.sum(errs))
        target = max(rel_tol * abs(total), abs_tol)
        if err_total <= target:
            return total, err_total
        share = target * (b - a) / width_total
        split = (errs > share) & (errs > 1.01 * floors)
        if not np.any(split):
            # every offending panel sits at its roundoff floor
            return total, err_total
        if len(a) + np.count_nonzero(split) > max_intervals:
            raise NonConvergence(
                f"quadrature did not reach tolerance: estimate {total:.6e}, "
                f"error {err_total:.2e} > {target:.2e} after {len(a)} intervals"
            )
        sa, sb = a[split], b[split]
        sm = 0.5 * (sa + sb)
        na = np.concatenate([sa, sm])
        nb = np.concatenate([sm, sb])
        nv, ne, nf = _gk21(f, na, nb)
        keep = ~split
        a = np.concatenate([a[keep], na])
        b = np.concatenate([b[keep], nb])
        vals = np.concatenate([vals[keep], nv])
        errs = np.concatenate([errs[keep], ne])
        floors = np.concatenate([floors[keep], nf])


def integrate_radial(f, support, rel_tol=None, abs_tol=DEFAULT_ABS_TOL,
                     breakpoints=None, scale=1.0, max_intervals=20000):
    """Integrate a vectorised function of ``r`` over ``support = (lo, hi)``.

    ``hi`` may be ``inf``; the tail beyond the last breakpoint is then mapped
    to a finite interval using ``scale`` as the decay length.  Breakpoints
    inside the support start the adaptive scheme on separate panels, which
    matters for oscillatory integrands.

    Raises
    ------
    NonConvergence
        If the refinement limit is reached before the tolerance is met.
    """
    if rel_tol is None:
        rel_tol = default_rel_tol()
    lo, hi = float(support[0]), float(support[1])
    if not hi > lo:
        raise ValueError(f"degenerate support [{lo}, {hi}]")
    if math.isinf(lo):
        raise ValueError("support must start at a finite point")
    pts = [lo]
    if breakpoints is not None:
        bp = np.unique(np.asarray(breakpoints, dtype=float))
        pts.extend(x for x in bp if lo < x < hi)
    finite_end = hi if math.isfinite(hi) else None
    if finite_end is not None:
        pts.append(finite_end)

    total = 0.0
    if len(pts) >= 2:
        part, _ = _adaptive(f, np.array(pts), rel_tol, abs_tol, max_intervals)
        total += part
    if finite_end is None:
        start = pts[-1]
        cutoff = 800.0 * scale

        def mapped(t):
            u = t / (1.0 - t)
            r = start + scale * u
            with np.errstate(over="ignore", invalid="ignore"):
                val = np.asarray(f(r), dtype=float) * scale / (1.0 - t) ** 2
            return np.where(u > cutoff / scale, 0.0, val)

        part, _ = _adaptive(mapped, np.array([0.0, 0.5, 1.0]), rel_tol, abs_tol, max_intervals)
        total += part
    return total


_GL_ORDER = 16
_GL_X, _GL_W = np.polynomial.legendre.leggauss(_GL_ORDER)


def _tensor_gl(f, box, nx, npp):
    x0, x1, p0, p1 = box
    hx = (x1 - x0) / nx
    hp = (p1 - p0) / npp
    xs = (x0 + hx * (np.arange(nx)[:, None] + 0.5 * (_GL_X[None, :] + 1.0))).ravel()
    ps = (p0 + hp * (np.arange(npp)[:, None] + 0.5 * (_GL_X[None, :] + 1.0))).ravel()
    wx = np.tile(_GL_W, nx) * 0.5 * hx
    wp = np.tile(_GL_W, npp) * 0.5 * hp
    X, P = np.meshgrid(xs, ps, indexing="ij")
    vals = np.asarray(f(X, P), dtype=float)
    return float(wx @ vals @ wp)


def integrate_planar(f, box, rel_tol=None, abs_tol=DEFAULT_ABS_TOL,
                     growth=1.5, max_growths=6, max_panels=512):
    """Integrate ``f(x, p)`` over the plane.

    ``box = (x_lo, x_hi, p_lo, p_hi)`` is the caller's estimate of where the
    integrand lives.  Panels are doubled until the estimate stabilises, then
    the box is enlarged by ``growth`` until the tail stops contributing.
    """
    if rel_tol is None:
        rel_tol = default_rel_tol()

    def converged(new, old):
        return abs(new - old) <= max(rel_tol * abs(new), abs_tol)

    def on_box(bx, start_panels):
        nx, npp = start_panels
        old = _tensor_gl(f, bx, nx, npp)
        while True:
            nx, npp = 2 * nx, 2 * npp
            if max(nx, npp) > max_panels:
                raise NonConvergence(f"planar quadrature did not converge on box {bx}")
            new = _tensor_gl(f, bx, nx, npp)
            if converged(new, old):
                return new, (nx // 2, npp // 2)
            old = new

    x0, x1, p0, p1 = (float(v) for v in box)
    panels = (8, 8)
    value, panels = on_box((x0, x1, p0, p1), panels)
    for _ in range(max_growths):
        cx, cp = 0.5 * (x0 + x1), 0.5 * (p0 + p1)
        hx, hp = 0.5 * (x1 - x0) * growth, 0.5 * (p1 - p0) * growth
        x0, x1, p0, p1 = cx - hx, cx + hx, cp - hp, cp + hp
        panels = (int(math.ceil(panels[0] * growth)), int(math.ceil(panels[1] * growth)))
        grown, panels = on_box((x0, x1, p0, p1), panels)
        if converged(grown, value):
            return grown
        value = grown
    raise NonConvergence("planar quadrature: tail contribution did not vanish under box growth")
