"""Command-line front end: verify | sweep | region | profile | solve1d.

Emits machine-readable CSV (RFC-4180-style, header row, LF endings, 12
significant digits) or JSON (single object, stable key order, round-trip
float formatting).  Exit codes: 0 = all checks passed, 1 = checks ran and
failed, 2 = invalid input.  Identical configuration (including seeds)
produces byte-identical output files.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from .bvp1d import Bvp1dProblem, diagnose, solve
from .counterexample import (
    BallGeometry,
    NonnegativityClass,
    check_superharmonic_constraint,
    derive_model,
    f_eval,
    f_of_radius,
    laplacian_phi,
    laplacian_radial,
    nonlinearity_min_scan,
    pde_residual,
    phi,
    robin_residual,
    superharmonic_threshold,
)
from .errors import DivergenceError, DomainError, InvalidParameterError, NoConvergenceError
from .oracle import ResidualReport, StencilConfig, residual_audit, sample_boundary, sample_interior

__all__ = ["main", "run", "build_parser"]

# Closed-form residual tolerances (relative to the local scale, floored at 1).
PDE_TOL = 1e-10
ROBIN_TOL = 1e-12
REGION_SOUNDNESS_TOL = 1e-12

_CASTS = {
    "n": int,
    "samples": int,
    "seed": int,
    "steps": int,
    "a_steps": int,
    "beta_steps": int,
    "circle_samples": int,
    "segment_samples": int,
    "order": int,
    "R": float,
    "a": float,
    "beta": float,
    "h": float,
    "a_min": float,
    "a_max": float,
    "beta_min": float,
    "beta_max": float,
    "seed_value": float,
    "tol": float,
    "circle_radius": float,
    "f": str,
    "out": str,
    "format": str,
}


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".12g")
    return str(x)


def _write_csv(out: str | None, header: list[str], rows: list[list]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    _emit(out, buf.getvalue())


def _write_json(out: str | None, obj) -> None:
    _emit(out, json.dumps(obj, indent=2) + "\n")


def _emit(out: str | None, text: str) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="")
    else:
        sys.stdout.write(text)


def _flatten(obj, prefix="", rows=None):
    rows = [] if rows is None else rows
    if isinstance(obj, dict):
        for k, v in obj.items():
            _flatten(v, f"{prefix}{k}." if isinstance(v, dict) else f"{prefix}{k}", rows)
    else:
        rows.append([prefix, _fmt(obj)])
    return rows


def _geometry(args) -> BallGeometry:
    x0 = np.zeros(args.n)
    x0[0] = args.a
    return BallGeometry(n=args.n, R=args.R, x0=x0)


def _audit_dict(report: ResidualReport) -> dict:
    return {
        "h": report.h,
        "n_interior": report.n_interior,
        "n_boundary": report.n_boundary,
        "max_pde_residual_fd": report.max_pde_residual_fd,
        "max_robin_residual_fd": report.max_robin_residual_fd,
        "observed_order": report.observed_order,
        "pde_threshold": report.pde_threshold,
        "robin_threshold": report.robin_threshold,
        "passed": report.passed,
    }


def cmd_verify(args) -> int:
    geom = _geometry(args)
    model = derive_model(geom, args.beta)
    cls = check_superharmonic_constraint(geom, args.beta)

    pts = sample_interior(geom, args.samples, margin=0.0, seed=args.seed)
    max_pde = max(abs(pde_residual(model, q)) for q in pts)
    scale = max(abs(laplacian_phi(model, q)) for q in pts)
    bpts = sample_boundary(geom, 360)
    max_robin = max(abs(robin_residual(model, b)) for b in bpts)
    robin_scale = args.beta * max(phi(model, b) for b in bpts)
    closed_pass = max_pde <= PDE_TOL * max(1.0, scale) and max_robin <= ROBIN_TOL * max(1.0, robin_scale)

    report = residual_audit(model, args.samples, StencilConfig(h=args.h, order=args.order), seed=args.seed)
    passed = bool(closed_pass and report.passed)

    doc = {
        "command": "verify",
        "params": {"n": geom.n, "R": geom.R, "a": geom.offset, "beta": args.beta},
        "constraint_class": cls.value,
        "closed_form": {
            "interior_samples": int(len(pts)),
            "boundary_samples": int(len(bpts)),
            "max_pde_residual": max_pde,
            "max_robin_residual": max_robin,
            "pde_tolerance": PDE_TOL * max(1.0, scale),
            "robin_tolerance": ROBIN_TOL * max(1.0, robin_scale),
            "passed": bool(closed_pass),
        },
        "oracle": _audit_dict(report),
        "passed": passed,
    }
    if args.format == "json":
        _write_json(args.out, doc)
    else:
        _write_csv(args.out, ["key", "value"], _flatten(doc))
    return 0 if passed else 1


def _grid(args) -> tuple[np.ndarray, np.ndarray]:
    a_vals = np.linspace(args.a_min, args.a_max, args.a_steps)
    beta_vals = np.linspace(args.beta_min, args.beta_max, args.beta_steps)
    return a_vals, beta_vals


def cmd_region(args) -> int:
    rows = []
    sound = True
    a_vals, beta_vals = _grid(args)
    for a in a_vals:
        x0 = np.zeros(args.n)
        x0[0] = a
        geom = BallGeometry(n=args.n, R=args.R, x0=x0)
        threshold = superharmonic_threshold(geom)
        for beta in beta_vals:
            model = derive_model(geom, float(beta))
            guaranteed = int(
                check_superharmonic_constraint(geom, float(beta)) is NonnegativityClass.GUARANTEED_NONNEGATIVE
            )
            min_f = nonlinearity_min_scan(model, args.samples)
            if guaranteed and min_f < -REGION_SOUNDNESS_TOL:
                sound = False
            rows.append([float(a), float(beta), threshold, guaranteed, min_f])
    if args.format == "json":
        _write_json(
            args.out,
            {
                "command": "region",
                "params": {"n": args.n, "R": args.R},
                "rows": [
                    {"a": r[0], "beta": r[1], "threshold": r[2], "guaranteed": r[3], "min_f_composed_phi": r[4]}
                    for r in rows
                ],
            },
        )
    else:
        _write_csv(args.out, ["a", "beta", "threshold", "guaranteed", "min_f_composed_phi"], rows)
    return 0 if sound else 1


def cmd_sweep(args) -> int:
    rows = []
    all_pass = True
    r_probe = np.linspace(0.0, 1.0, args.samples)
    a_vals, beta_vals = _grid(args)
    for a in a_vals:
        x0 = np.zeros(args.n)
        x0[0] = a
        geom = BallGeometry(n=args.n, R=args.R, x0=x0)
        for beta in beta_vals:
            model = derive_model(geom, float(beta))
            radii = r_probe * model.r_max
            res = np.abs(-laplacian_radial(model, radii) - f_of_radius(model, radii))
            scale = float(np.max(np.abs(laplacian_radial(model, radii))))
            bpts = sample_boundary(geom, 360)
            max_robin = max(abs(robin_residual(model, b)) for b in bpts)
            robin_scale = float(beta) * max(phi(model, b) for b in bpts)
            ok = bool(
                float(res.max()) <= PDE_TOL * max(1.0, scale) and max_robin <= ROBIN_TOL * max(1.0, robin_scale)
            )
            all_pass = all_pass and ok
            rows.append([float(a), float(beta), float(res.max()), max_robin, ok])
    if args.format == "json":
        _write_json(
            args.out,
            {
                "command": "sweep",
                "params": {"n": args.n, "R": args.R},
                "rows": [
                    {"a": r[0], "beta": r[1], "max_pde_residual": r[2], "max_robin_residual": r[3], "passed": r[4]}
                    for r in rows
                ],
            },
        )
    else:
        _write_csv(args.out, ["a", "beta", "max_pde_residual", "max_robin_residual", "passed"], rows)
    return 0 if all_pass else 1


def cmd_profile(args) -> int:
    geom = _geometry(args)
    model = derive_model(geom, args.beta)
    rho = args.circle_radius if args.circle_radius is not None else geom.R
    rows = []

    def add(kind: str, x: np.ndarray) -> None:
        r = float(np.linalg.norm(x - geom.x0))
        value = phi(model, x)
        x2 = float(x[1]) if geom.n >= 2 else 0.0
        rows.append([kind, float(x[0]), x2, r, value, f_eval(model, value), laplacian_phi(model, x)])

    if geom.n == 1:
        for sign in (1.0, -1.0):
            add("circle", np.array([sign * rho]))
    else:
        angles = 2.0 * np.pi * np.arange(args.circle_samples) / args.circle_samples
        for t in angles:
            x = np.zeros(geom.n)
            x[0] = rho * np.cos(t)
            x[1] = rho * np.sin(t)
            add("circle", x)

    end = np.zeros(geom.n)
    end[0] = geom.R
    for t in np.linspace(0.0, 1.0, args.segment_samples):
        add("segment", geom.x0 + t * (end - geom.x0))

    header = ["kind", "x1", "x2", "r", "phi", "f_phi", "lap_phi"]
    if args.format == "json":
        _write_json(
            args.out,
            {
                "command": "profile",
                "params": {"n": geom.n, "R": geom.R, "a": geom.offset, "beta": args.beta},
                "rows": [dict(zip(header, r)) for r in rows],
            },
        )
    else:
        _write_csv(args.out, header, rows)
    return 0


def _resolve_f(args):
    """Named nonlinearity registry: const:C | power:K | model-n1."""
    name = args.f
    if name.startswith("const:"):
        c = float(name.split(":", 1)[1])
        return (lambda u: c), c >= 0.0
    if name.startswith("power:"):
        k = float(name.split(":", 1)[1])
        return (lambda u: max(u, 0.0) ** k), True
    if name == "model-n1":
        model = derive_model(BallGeometry(n=1, R=args.R, x0=np.array([args.a])), args.beta)
        c1, c2, c3, p = model.c1, model.c2, model.c3, model.p

        def f(u: float) -> float:
            if u <= 0.0:
                return 0.0
            up = u**p
            return c1 * u * (c2 * up + c3 * up * up)

        return f, False
    raise InvalidParameterError("f-registry", f"unknown nonlinearity {name!r}; use const:C, power:K or model-n1")


def cmd_solve1d(args) -> int:
    f, nonneg = _resolve_f(args)
    problem = Bvp1dProblem(R=args.R, beta=args.beta, f=f, claims_nonnegative=nonneg)
    base = {
        "command": "solve1d",
        "f": args.f,
        "params": {"R": args.R, "beta": args.beta, "a": args.a, "seed_value": args.seed_value, "tol": args.tol},
    }
    try:
        solution = solve(problem, args.seed_value, tol=args.tol, n_steps=args.steps)
    except (NoConvergenceError, DivergenceError) as exc:
        doc = {**base, "converged": False, "error": str(exc)}
        if args.format == "json":
            _write_json(args.out, doc)
        else:
            _write_csv(args.out, ["key", "value"], _flatten(doc))
        print(f"solver failure: {exc}", file=sys.stderr)
        return 1

    report = diagnose(solution)
    diag = {
        "symmetry_defect": report.symmetry_defect,
        "endpoint_gap": report.endpoint_gap,
        "min_value": report.min_value,
        "max_value": report.max_value,
        "argmax": report.argmax,
        "monotone_decreasing_right": report.monotone_decreasing_right,
        "positive": report.positive,
    }
    if args.format == "json":
        doc = {
            **base,
            "converged": True,
            "solution": {
                "shooting_param": solution.shooting_param,
                "newton_iters": solution.newton_iters,
                "bc_residuals": [solution.bc_residuals[0], solution.bc_residuals[1]],
                "nodes": [float(v) for v in solution.nodes],
                "u": [float(v) for v in solution.u],
                "du": [float(v) for v in solution.du],
            },
            "diagnostics": diag,
        }
        _write_json(args.out, doc)
    else:
        _write_csv(args.out, ["x", "u", "du"], [[x, u, d] for x, u, d in zip(solution.nodes, solution.u, solution.du)])
        for key, value in diag.items():
            print(f"{key}={_fmt(value)}")
    return 0


def _add_point_params(p, beta_default=0.25):
    p.add_argument("--n", type=int, default=2, help="space dimension")
    p.add_argument("--R", type=float, default=1.0, help="ball radius")
    p.add_argument("--a", type=float, default=0.5, help="offset |x0| of the symmetry center along the first axis")
    p.add_argument("--beta", type=float, default=beta_default, help="Robin boundary parameter")


def _add_grid_params(p):
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--R", type=float, default=1.0)
    p.add_argument("--a-min", type=float, default=0.1)
    p.add_argument("--a-max", type=float, default=0.9)
    p.add_argument("--a-steps", type=int, default=9)
    p.add_argument("--beta-min", type=float, default=0.05)
    p.add_argument("--beta-max", type=float, default=1.0)
    p.add_argument("--beta-steps", type=int, default=20)


def _add_io_params(p):
    p.add_argument("--out", default=None, help="output file (stdout when omitted)")
    p.add_argument("--format", choices=["json", "csv"], default=None)
    p.add_argument("--config", default=None, help="flat key=value defaults file; explicit flags override")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="robinball", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="closed-form residual sweep plus finite-difference audit at one parameter point")
    _add_point_params(p)
    p.add_argument("--h", type=float, default=1e-3, help="finite-difference spacing")
    p.add_argument("--order", type=int, choices=[2, 4], default=2)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    _add_io_params(p)
    p.set_defaults(handler=cmd_verify, default_format="json")

    p = sub.add_parser("region", help="classify nonnegativity of f(phi) over an (a, beta) grid")
    _add_grid_params(p)
    p.add_argument("--samples", type=int, default=10000, help="scan resolution per cell")
    _add_io_params(p)
    p.set_defaults(handler=cmd_region, default_format="csv")

    p = sub.add_parser("sweep", help="closed-form residual maxima over an (a, beta) grid")
    _add_grid_params(p)
    p.add_argument("--samples", type=int, default=2001, help="radial residual samples per cell")
    _add_io_params(p)
    p.set_defaults(handler=cmd_sweep, default_format="csv")

    p = sub.add_parser("profile", help="sample phi, f(phi) and lap(phi) along a circle and a radial segment")
    _add_point_params(p)
    p.add_argument("--circle-radius", type=float, default=None, help="|x| of the angular sweep (default R)")
    p.add_argument("--circle-samples", type=int, default=360)
    p.add_argument("--segment-samples", type=int, default=200)
    _add_io_params(p)
    p.set_defaults(handler=cmd_profile, default_format="csv")

    p = sub.add_parser("solve1d", help="shooting solve of -u'' = f(u) with Robin endpoints, plus diagnostics")
    p.add_argument("--f", default="const:1", help="nonlinearity: const:C | power:K | model-n1")
    p.add_argument("--R", type=float, default=1.0)
    p.add_argument("--a", type=float, default=0.5, help="offset of the model-n1 nonlinearity")
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--seed-value", type=float, default=1.0, help="initial guess for u(-R)")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--steps", type=int, default=2000)
    _add_io_params(p)
    p.set_defaults(handler=cmd_solve1d, default_format="json")

    return parser


def _provided_keys(argv: list[str]) -> set[str]:
    keys = set()
    for tok in argv:
        if tok.startswith("--"):
            keys.add(tok[2:].split("=", 1)[0].replace("-", "_"))
    return keys


def _apply_config(args, argv: list[str]) -> None:
    path = getattr(args, "config", None)
    if not path:
        return
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InvalidParameterError("config", f"cannot read config file {path!r}: {exc}")
    provided = _provided_keys(argv)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise InvalidParameterError("config", f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        dest = key.replace("-", "_")
        if dest not in _CASTS:
            raise InvalidParameterError("config", f"{path}:{lineno}: unknown key {key!r}")
        if dest in provided or not hasattr(args, dest):
            continue
        try:
            setattr(args, dest, _CASTS[dest](value))
        except ValueError as exc:
            raise InvalidParameterError("config", f"{path}:{lineno}: bad value for {key!r}: {exc}")


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config(args, argv)
        if args.format is None:
            args.format = args.default_format
        return args.handler(args)
    except InvalidParameterError as exc:
        print(f"error ({exc.code}): {exc}", file=sys.stderr)
        return 2
    except (DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NoConvergenceError, DivergenceError) as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return 1


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
