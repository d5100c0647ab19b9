"""The ``siegellab`` command line tool.

Subcommands:

* ``verify-examples``  -- reproduce the reference branch solutions at c = 2, -2
* ``tune``             -- prefactor angle hitting a target rotation number
* ``boundary``         -- sample a boundary curve to CSV (+ figure)
* ``crossratio``       -- quasicircle diagnostic over random quadruples (JSON)
* ``xi-scan``          -- distance d(c, boundary_c) over a parameter grid (+ figure)
* ``thurston-check``   -- leading eigenvalue and obstruction verdict for a spec
* ``render``           -- orbit-trap raster of the rotation domain as PPM
* ``comparability``    -- closest-return ratio families of the tuned circle map

Exit status: 0 on success, 1 on a domain/convergence error, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import asdict, dataclass

import numpy as np

from . import blaschke, maps, render, rotation, siegel, thurston
from .cfrac import RotationNumber
from .errors import SiegelLabError, DomainError
from .plane import INF, fmt, is_inf, parse_point, point_fields


@dataclass(frozen=True)
class RunConfig:
    """Shared run parameters, serializable for reproducibility records."""

    theta: str = "golden"
    c: str = "inf"
    tol: float = 1e-4
    seed: int = 0
    out: str | None = None
    as_json: bool = False

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        return cls(**json.loads(text))

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        return cls(
            theta=getattr(args, "theta", "golden"),
            c=getattr(args, "c", "inf"),
            tol=getattr(args, "tol", 1e-4),
            seed=getattr(args, "seed", 0),
            out=getattr(args, "out", None),
            as_json=getattr(args, "json", False),
        )

    def rotation_number(self) -> RotationNumber:
        if self.theta.strip().lower() == "golden":
            return RotationNumber.golden()
        try:
            value = float(self.theta)
        except ValueError:
            raise DomainError(f"cannot parse theta {self.theta!r}; use 'golden' or a decimal")
        return RotationNumber.from_value(value)

    def parameter(self):
        return parse_point(self.c)


def _round_floats(obj):
    """12-significant-digit floats throughout a JSON payload."""
    if isinstance(obj, float):
        if math.isfinite(obj):
            return float(fmt(obj))
        return str(obj)
    if isinstance(obj, complex):
        return [_round_floats(obj.real), _round_floats(obj.imag)]
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def _emit_json(payload):
    print(json.dumps(_round_floats(payload), sort_keys=True))


# ---------------------------------------------------------------------------
# verify-examples

_REFERENCE_CASES = (
    # (case, c, expected v, expected w, expected roots, tolerance)
    ("example1-case1", 2.0 + 0j, 0.8 + 0j, 1.8 + 0j, (1.0 + 0j, 0.8 + 0j), 1e-9),
    (
        "example1-case2",
        2.0 + 0j,
        12.0 / 13.0 + 0j,
        27.0 / 13.0 + 0j,
        (1.432575 + 0j, 0.644348 + 0j),
        1e-5,
    ),
    ("example2-case1", -2.0 + 0j, -0.8 + 0j, 0.2 + 0j, (1.0 + 0j, -0.8 + 0j), 1e-9),
    (
        "example2-case2",
        -2.0 + 0j,
        4.0 + 0j,
        -1.0 + 0j,
        (-0.5 + 1.936491j, -0.5 - 1.936491j),
        1e-5,
    ),
)


def _pair_residual(got, want):
    a, b = got
    c, d = want
    return min(max(abs(a - c), abs(b - d)), max(abs(a - d), abs(b - c)))


def reference_example_rows():
    """Computed-vs-expected rows for the two worked parameter values."""
    rows = []
    by_c = {}
    for case, c, v_exp, w_exp, roots_exp, tol in _REFERENCE_CASES:
        if c not in by_c:
            by_c[c] = blaschke.all_branches(c)
        idx = 0 if case.endswith("case1") else 1
        br = by_c[c][idx]
        residual = max(
            _pair_residual(br.roots, roots_exp), abs(br.v - v_exp), abs(br.w - w_exp)
        )
        p, q = sorted(br.roots, key=lambda z: (-abs(z), -z.imag))
        rows.append(
            {
                "case": case,
                "v": br.v,
                "w": br.w,
                "p": p,
                "q": q,
                "residual": float(residual),
                "tolerance": tol,
            }
        )
    return rows


def cmd_verify_examples(args) -> int:
    rows = reference_example_rows()
    ok = all(r["residual"] < r["tolerance"] for r in rows)
    if args.json:
        _emit_json(rows)
    else:
        print(f"{'case':<16} {'v':>24} {'w':>24} {'p':>28} {'q':>28} {'residual':>12}")
        for r in rows:
            print(
                f"{r['case']:<16} {_cfmt(r['v']):>24} {_cfmt(r['w']):>24}"
                f" {_cfmt(r['p']):>28} {_cfmt(r['q']):>28} {fmt(r['residual']):>12}"
            )
        print("all cases reproduced" if ok else "MISMATCH against reference values")
    return 0 if ok else 1


def _cfmt(z) -> str:
    z = complex(z)
    if z.imag == 0:
        return fmt(z.real)
    sign = "+" if z.imag >= 0 else "-"
    return f"{fmt(z.real)}{sign}{fmt(abs(z.imag))}i"


# ---------------------------------------------------------------------------
# tune

def cmd_tune(args) -> int:
    cfg = RunConfig.from_args(args)
    theta = cfg.rotation_number()
    c = cfg.parameter()
    B = blaschke.phi_inverse(c)
    result = rotation.tune_prefactor(B.p, B.q, theta, tol=cfg.tol, n_final=args.n)
    if cfg.as_json:
        _emit_json({"t": result.t, "rho": result.rho, "iterations": result.iterations})
    else:
        print(f"t = {fmt(result.t)}")
        print(f"rho = {fmt(result.rho)}")
        print(f"iterations = {result.iterations}")
    return 0


# ---------------------------------------------------------------------------
# boundary

def cmd_boundary(args) -> int:
    cfg = RunConfig.from_args(args)
    curve = siegel.boundary_orbit(cfg.parameter(), cfg.rotation_number(), args.n)
    from . import reports

    reports.write_csv(
        args.out,
        ["angle", "re", "im"],
        [(a, z.real, z.imag) for a, z in zip(curve.angles, curve.points)],
    )
    if not args.no_plot:
        reports.boundary_figure(curve, reports.figure_path(args.out))
    print(f"wrote {len(curve)} samples to {args.out}")
    return 0


# ---------------------------------------------------------------------------
# crossratio

def cmd_crossratio(args) -> int:
    cfg = RunConfig.from_args(args)
    curve = siegel.boundary_orbit(cfg.parameter(), cfg.rotation_number(), args.n)
    report = siegel.quasicircle_delta(curve, trials=args.trials, rng_seed=cfg.seed)
    _emit_json(
        {
            "min_abs": report.min_abs,
            "quadruple": [[z.real, z.imag] for z in report.arg_quadruple],
            "trials": report.quadruples_tested,
            "seed": cfg.seed,
        }
    )
    return 0


# ---------------------------------------------------------------------------
# xi-scan

def _read_grid(path):
    grid = []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row or row[0].strip().lower() in ("re", "#"):
                continue
            grid.append(parse_point(",".join(row)))
    if not grid:
        raise DomainError(f"grid file {path} holds no parameter values")
    return grid


def cmd_xi_scan(args) -> int:
    cfg = RunConfig.from_args(args)
    grid = _read_grid(args.grid_file)
    results = siegel.xi_scan(grid, cfg.rotation_number(), args.n, workers=args.workers)
    from . import reports

    rows = []
    for r in results:
        re_s, im_s = point_fields(r.c)
        if r.error is not None:
            rows.append((re_s, im_s, "nan", f"error: {r.error}"))
        else:
            rows.append((re_s, im_s, r.distance, "ok"))
    reports.write_csv(args.out, ["re", "im", "distance", "status"], rows)
    if not args.no_plot:
        reports.xi_scan_figure(results, reports.figure_path(args.out))
    failures = sum(1 for r in results if r.error is not None)
    print(f"scanned {len(results)} parameters ({failures} failed) -> {args.out}")
    return 0


# ---------------------------------------------------------------------------
# thurston-check

def cmd_thurston_check(args) -> int:
    with open(args.spec) as fh:
        spec = thurston.MulticurveSpec.from_json(fh.read())
    matrix = thurston.thurston_matrix(spec)
    result = thurston.leading_eigenvalue(matrix)
    if args.json:
        _emit_json(
            {
                "n": spec.n,
                "lambda": result.value,
                "obstructed": result.obstructed,
                "iterations": result.iterations,
            }
        )
    else:
        print(f"lambda = {fmt(result.value)}")
        print("obstruction: " + ("YES (lambda >= 1)" if result.obstructed else "no"))
    return 0


# ---------------------------------------------------------------------------
# render

def cmd_render(args) -> int:
    cfg = RunConfig.from_args(args)
    theta = cfg.rotation_number()
    c = cfg.parameter()
    g = maps.make_map(c, theta)
    if args.trap_radius is not None:
        trap = args.trap_radius
    else:
        curve = siegel.boundary_orbit(c, theta, args.boundary_n)
        trap = render.trap_radius_from_curve(curve)
    try:
        w_s, h_s = args.px.lower().split("x")
        px_w, px_h = int(w_s), int(h_s)
    except ValueError:
        raise DomainError(f"cannot parse resolution {args.px!r}; expected WxH")
    spec = render.RasterSpec(
        center=parse_point(args.center),
        width=args.width,
        px_w=px_w,
        px_h=px_h,
        max_iter=args.iters,
        trap_radius=trap,
    )
    labels = render.classify_grid(g, spec)
    render.write_image(labels, args.out)
    unresolved = float(np.mean(labels == render.UNRESOLVED))
    print(f"wrote {px_w}x{px_h} raster to {args.out} (unresolved fraction {fmt(unresolved)})")
    return 0


# ---------------------------------------------------------------------------
# comparability

def cmd_comparability(args) -> int:
    cfg = RunConfig.from_args(args)
    theta = cfg.rotation_number()
    c = cfg.parameter()
    B = blaschke.phi_inverse(c)
    tuned = rotation.tune_prefactor(B.p, B.q, theta, tol=cfg.tol)
    report = rotation.comparability_report(
        B.with_prefactor(tuned.t), theta, n_max=args.nmax, samples=args.samples
    )
    if cfg.as_json:
        _emit_json(
            {
                "t": tuned.t,
                "rho": tuned.rho,
                "K": report.comparability_constant,
                "rows": [asdict(row) for row in report.rows],
                "failed_samples": report.failed_samples,
            }
        )
    else:
        print(f"tuned prefactor t = {fmt(tuned.t)} (rho = {fmt(tuned.rho)})")
        print(f"{'n':>3} {'q_n':>6} {'q_n+1':>6} {'bwd/fwd min':>12} {'max':>12} {'step min':>12} {'max':>12}")
        for row in report.rows:
            print(
                f"{row.n:>3} {row.q_n:>6} {row.q_next:>6}"
                f" {fmt(row.backward_min):>12} {fmt(row.backward_max):>12}"
                f" {fmt(row.step_min):>12} {fmt(row.step_max):>12}"
            )
        print(f"comparability constant K = {fmt(report.comparability_constant)}")
    if args.out is not None:
        from . import reports

        reports.write_csv(
            args.out,
            ["n", "q_n", "q_next", "backward_min", "backward_max", "step_min", "step_max"],
            [
                (str(r.n), str(r.q_n), str(r.q_next), r.backward_min, r.backward_max, r.step_min, r.step_max)
                for r in report.rows
            ],
        )
        if not args.no_plot:
            reports.comparability_figure(report, reports.figure_path(args.out))
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="siegellab",
        description="Numerical lab for bounded-type rotation domains of quadratic rational maps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, c_default="inf"):
        p.add_argument("--theta", default="golden", help="'golden' or a decimal in (0,1)")
        p.add_argument("--c", default=c_default, help="critical parameter 're,im' or 'inf'")
        p.add_argument("--seed", type=int, default=0, help="RNG seed for randomized reports")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("verify-examples", help="reproduce the reference branch solutions")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify_examples)

    p = sub.add_parser("tune", help="tune the prefactor to a target rotation number")
    add_common(p)
    p.add_argument("--tol", type=float, default=1e-4)
    p.add_argument("--n", type=int, default=1_000_000, help="iterates for the final estimate")
    p.set_defaults(func=cmd_tune)

    p = sub.add_parser("boundary", help="sample a boundary curve to CSV")
    add_common(p)
    p.add_argument("--n", type=int, default=10_000, help="orbit samples")
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--no-plot", action="store_true", help="skip the companion figure")
    p.set_defaults(func=cmd_boundary)

    p = sub.add_parser("crossratio", help="quasicircle diagnostic (JSON report)")
    add_common(p)
    p.add_argument("--n", type=int, default=10_000, help="orbit samples")
    p.add_argument("--trials", type=int, default=10_000, help="random quadruples")
    p.set_defaults(func=cmd_crossratio)

    p = sub.add_parser("xi-scan", help="distance from each grid parameter to its boundary")
    add_common(p)
    p.add_argument("--grid-file", required=True, help="CSV of parameters (re,im per row)")
    p.add_argument("--n", type=int, default=2_000, help="orbit samples per parameter")
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--workers", type=int, default=None, help="process pool size")
    p.add_argument("--no-plot", action="store_true")
    p.set_defaults(func=cmd_xi_scan)

    p = sub.add_parser("thurston-check", help="leading eigenvalue of a transition spec")
    p.add_argument("--spec", required=True, help="JSON file {n, preimages: [[j,i,d],...]}")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_thurston_check)

    p = sub.add_parser("render", help="orbit-trap raster as binary PPM")
    add_common(p)
    p.add_argument("--center", default="0,0", help="viewport center 're,im'")
    p.add_argument("--width", type=float, default=4.0, help="viewport width")
    p.add_argument("--px", default="400x400", help="resolution WxH")
    p.add_argument("--iters", type=int, default=200, help="iteration budget")
    p.add_argument("--out", required=True, help="output PPM path")
    p.add_argument("--trap-radius", type=float, default=None, help="override the trap radius")
    p.add_argument("--boundary-n", type=int, default=4096, help="orbit samples for trap sizing")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("comparability", help="closest-return ratio families of the tuned map")
    add_common(p)
    p.add_argument("--tol", type=float, default=1e-4, help="tuning tolerance")
    p.add_argument("--nmax", type=int, default=5, help="largest return index")
    p.add_argument("--samples", type=int, default=50, help="circle sample count")
    p.add_argument("--out", default=None, help="optional CSV path")
    p.add_argument("--no-plot", action="store_true")
    p.set_defaults(func=cmd_comparability)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SiegelLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
