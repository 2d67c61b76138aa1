"""Command-line front end: ``wigner-bounds {surface,ultimate,check,verify}``.

Exit codes: 0 success, 2 usage or schema error, 3 numerical failure,
4 oracle mismatch (``verify`` only).
"""

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile

import numpy as np

from . import __version__, bounds, extremal, physicality, wignerfile
from .errors import ParamOutOfRange, SchemaError, WignerBoundsError
from .phase_space import NORM_TOL, Sampled, Thermal, covariance_of, non_gaussianity, normalization, overlap, purity
from .quadrature import TOL_ENV_VAR, default_rel_tol

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_ORACLE = 0, 2, 3, 4
ORACLE_TOL = 1e-6
SAMPLED_NORM_TOL = 1e-6


class UsageError(Exception):
    pass


class NumericFailure(Exception):
    pass


def fmt(x):
    """17 significant digits: round-trips every double."""
    return format(float(x), ".17g")


def _branch(text):
    key = text.replace("-", "_").lower()
    aliases = {"tworoot": "two_root", "oneroot": "one_root", "i": "two_root", "ii": "one_root"}
    key = aliases.get(key, key)
    try:
        return bounds.Branch(key)
    except ValueError:
        raise argparse.ArgumentTypeError(f"unknown branch {text!r}; use two_root or one_root") from None


def _positive_int(min_value):
    def parse(text):
        value = int(text)
        if value < min_value:
            raise argparse.ArgumentTypeError(f"must be an integer >= {min_value}")
        return value
    return parse


def _meta_line(args, command):
    return f"# wigner-bounds {__version__} command={command} rel_tol={args.rel_tol:g}"


def _write(text, out):
    """Write ``text`` to ``out`` atomically (temp file + rename), or stdout."""
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".wigner-bounds-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _csv_text(meta, header, rows):
    buf = io.StringIO()
    buf.write(meta + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _grid(lo, hi, steps):
    if not 0.0 < lo <= hi <= 1.0:
        raise UsageError(f"mu_g range must satisfy 0 < min <= max <= 1, got [{lo}, {hi}]")
    # rounding keeps grid values such as 0.5 exact
    return sorted(set(round(float(v), 12) for v in np.linspace(lo, hi, steps)))


def cmd_surface(args):
    grid = _grid(args.mu_g_min, args.mu_g_max, args.mu_g_steps)
    alphas, betas = bounds.branch_params(args.params_per_branch)
    rows = []
    for mu_g in grid:
        for branch, params in ((bounds.Branch.TWO_ROOT, alphas), (bounds.Branch.ONE_ROOT, betas)):
            for p in params:
                try:
                    pt = bounds.branch_point(branch, mu_g, p)
                except (WignerBoundsError, ArithmeticError) as exc:
                    raise NumericFailure(f"failed at mu_g={mu_g}, param={p}: {exc}") from exc
                if not all(math.isfinite(v) for v in (pt.mu_ex, pt.overlap_ex, pt.delta_ex)):
                    raise NumericFailure(f"non-finite value at mu_g={mu_g}, param={p}")
                rows.append([fmt(mu_g), branch.value, fmt(p), fmt(pt.mu_ex), fmt(pt.overlap_ex), fmt(pt.delta_ex)])
    header = ["mu_g", "branch", "param", "mu_ex", "overlap_ex", "delta_ex"]
    _write(_csv_text(_meta_line(args, "surface"), header, rows), args.out)
    return EXIT_OK


def cmd_ultimate(args):
    grid = _grid(args.mu_g_min, 1.0, args.mu_g_steps)
    rows = []
    upper = []
    for mu_g in grid:
        try:
            upper.append(bounds.ultimate_upper(mu_g))
        except WignerBoundsError as exc:
            raise NumericFailure(f"ultimate bound failed at mu_g={mu_g}: {exc}") from exc
    header = ["mu_g", "delta_upper"]
    if args.with_lower:
        header.append("delta_lower")
        d_grid = [bounds.displacement_for(m) for m in grid]
        curve = bounds.coherent_lower_estimate(d_grid, rel_tol=args.rel_tol)
        lower = bounds.resample(curve, grid)
    for i, mu_g in enumerate(grid):
        row = [fmt(mu_g), fmt(upper[i])]
        if args.with_lower:
            row.append(fmt(lower[i]))
        rows.append(row)
    _write(_csv_text(_meta_line(args, "ultimate"), header, rows), args.out)
    return EXIT_OK


def check_report(W, max_n, rel_tol=None):
    """Everything ``check`` reports about a radial candidate, as a dict."""
    norm_tol = SAMPLED_NORM_TOL if isinstance(W, Sampled) else NORM_TOL
    norm = normalization(W, rel_tol=rel_tol)
    cov = covariance_of(W, rel_tol=rel_tol)
    mu = purity(W, check_normalization=False, rel_tol=rel_tol)
    ref = Thermal(0.5 * cov.g_xx)
    mu_g = 1.0 / cov.g_xx
    ov = overlap(W, ref, check_normalization=False, rel_tol=rel_tol)
    delta = non_gaussianity(mu, mu_g, ov)
    report = {
        "input": W.kind,
        "normalization_residual": norm - 1.0,
        "covariance": cov.matrix.tolist(),
        "purity": mu,
        "mu_g": mu_g,
        "overlap_with_gaussian": ov,
        "delta": delta,
        "delta_cs_lower": bounds.cs_delta_lower(mu, mu_g) if 0 < mu_g <= 1 and mu > 0 else None,
    }
    delta_upper = None
    if 0 < mu_g <= 1 and mu > 0:
        pts = bounds.extremal_points_at(mu, mu_g)
        if pts:
            delta_upper = max(p.delta_ex for p in pts)
    report["delta_upper"] = delta_upper
    report["exceeds_upper_bound"] = None if delta_upper is None else bool(delta > delta_upper + 1e-9)
    report["below_purity_extremity"] = bool(mu < (8.0 / 9.0) * mu_g)
    phys = physicality.check_candidate(W, n_max=max_n, norm_tol=norm_tol, rel_tol=rel_tol)
    report["physicality"] = phys.as_dict()
    return report


def cmd_check(args):
    try:
        W = wignerfile.load(args.input)
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc}") from exc
    report = check_report(W, args.max_n, rel_tol=args.rel_tol)
    report = {"meta": _meta_dict(args, "check"), **report}
    _write(json.dumps(report, indent=1) + "\n", args.out)
    return EXIT_OK


def _meta_dict(args, command):
    return {"tool": "wigner-bounds", "version": __version__, "command": command, "rel_tol": args.rel_tol}


def cmd_verify(args):
    try:
        spec = extremal.ExtremalSpec(args.mu_g, args.branch, args.param)
    except ParamOutOfRange as exc:
        raise UsageError(str(exc)) from exc
    rep = extremal.verify_against_closed_form(spec)
    doc = {"meta": _meta_dict(args, "verify"), **rep.as_dict(), "tolerance": ORACLE_TOL,
           "passed": bool(rep.max_rel_err <= ORACLE_TOL)}
    _write(json.dumps(doc, indent=1) + "\n", args.out)
    return EXIT_OK if doc["passed"] else EXIT_ORACLE


def build_parser():
    parser = argparse.ArgumentParser(prog="wigner-bounds", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rel-tol", type=float, default=None,
                        help=f"quadrature relative tolerance (default: ${TOL_ENV_VAR} or 1e-10)")
    common.add_argument("--seed", type=int, default=0, help="reserved; the computations are deterministic")
    common.add_argument("--out", default=None, help="output file (default: stdout)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("surface", parents=[common], help="extremal upper-bound surface as CSV")
    p.add_argument("--mu-g-min", type=float, default=0.1)
    p.add_argument("--mu-g-max", type=float, default=1.0)
    p.add_argument("--mu-g-steps", type=_positive_int(2), default=10)
    p.add_argument("--params-per-branch", type=_positive_int(2), default=25)
    p.set_defaults(func=cmd_surface)

    p = sub.add_parser("ultimate", parents=[common], help="ultimate upper bound (and coherent lower estimate) as CSV")
    p.add_argument("--mu-g-min", type=float, default=0.02)
    p.add_argument("--mu-g-steps", type=_positive_int(2), default=50)
    p.add_argument("--with-lower", action="store_true")
    p.set_defaults(func=cmd_ultimate)

    p = sub.add_parser("check", parents=[common], help="physicality and bound checks for a Wigner file")
    p.add_argument("--input", required=True)
    p.add_argument("--max-n", type=_positive_int(0), default=physicality.DEFAULT_N_MAX)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify", parents=[common], help="oracle check of the closed-form branches")
    p.add_argument("--branch", type=_branch, required=True)
    p.add_argument("--mu-g", type=float, required=True)
    p.add_argument("--param", type=float, required=True)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.rel_tol is None:
            args.rel_tol = default_rel_tol()
        if not args.rel_tol > 0:
            raise UsageError("--rel-tol must be positive")
        return args.func(args)
    except (UsageError, SchemaError, ParamOutOfRange, ValueError) as exc:
        print(f"wigner-bounds: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericFailure, WignerBoundsError, ArithmeticError) as exc:
        print(f"wigner-bounds: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
