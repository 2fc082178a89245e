"""Command-line interface: ``piezoplate {solve,control,verify,sweep}``.

Exit status: 0 success, 2 malformed input, 3 solver error (the error class
name is printed on stderr), 4 a verification tolerance was exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .bcp import (StateSample, boundary_checks, field_residuals, load_problem, problem_to_dict,
                  sample_profile, solve_panel)
from .control import ControlQuery, TargetField, achieved, invert, sensitivity
from .errors import (ControlError, GridTooCoarse, MaterialError, OutOfDomain, OutOfSchedule,
                     SchemaError, SolverError, SpecMismatch)
from .fd import compare, solve_fd
from .material import load_material, sample_material
from .quasistatic import load_schedule, sweep

EXIT_OK, EXIT_SCHEMA, EXIT_SOLVER, EXIT_VERIFY = 0, 2, 3, 4

DEFAULT_TOL = {"solve": 1e-10, "control": 1e-10, "verify": 1e-6, "sweep": 1e-10}


@dataclass(frozen=True)
class RunConfig:
    command: str
    material: Path | None
    problem: Path
    schedule: Path | None = None
    out: str = "-"
    samples: int = 201
    grid: int = 1024
    tol: float | None = None

    def __post_init__(self):
        if self.samples < 2:
            raise SchemaError("--samples must be at least 2")
        if self.grid < 8:
            raise SchemaError("--grid must be at least 8")
        if self.command == "sweep" and self.schedule is None:
            raise SchemaError("sweep needs --schedule")

    @property
    def tolerance(self) -> float:
        return DEFAULT_TOL[self.command] if self.tol is None else self.tol


class VerificationFailed(Exception):
    pass


def _fmt(v: float) -> str:
    return repr(float(v))


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(out: str, text: str):
    if out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _load(cfg: RunConfig):
    material = load_material(cfg.material) if cfg.material else sample_material()
    return load_problem(cfg.problem, material)


def _checks_report(sol):
    checks = boundary_checks(sol)
    x = np.linspace(-sol.spec.h, sol.spec.h, 21)
    res, scale = field_residuals(sol, x)
    rel = np.abs(res) / np.where(scale > 0, scale, 1.0)
    return {
        "boundary": {c.name: {"computed": c.computed, "prescribed": c.prescribed,
                              "relative_error": c.relative_error} for c in checks},
        "max_boundary_error": max(c.relative_error for c in checks),
        "max_field_residual": float(rel.max()),
    }


def cmd_solve(cfg: RunConfig) -> int:
    spec = _load(cfg)
    sol = solve_panel(spec)
    profile = sample_profile(sol, cfg.samples)
    _emit(cfg.out, _csv(StateSample.COLUMNS, (s.row() for s in profile)))
    checks = _checks_report(sol)
    report = {
        "problem": spec.name,
        "input": problem_to_dict(spec),
        "reduced": {k: float(getattr(sol.params, k)) for k in ("a", "K", "A", "B", "V")},
        "coefficients": dict(zip(sol.coeffs.NAMES, map(float, sol.coeffs.as_array()))),
        "x_ref": sol.coeffs.x_ref,
        "checks": checks,
    }
    if cfg.out != "-":
        _emit(str(Path(cfg.out).with_suffix(".json")), _json(report))
    if max(checks["max_boundary_error"], checks["max_field_residual"]) > cfg.tolerance:
        raise VerificationFailed(f"closed-form checks exceed {cfg.tolerance:g}")
    return EXIT_OK


def _control_query(spec, raw):
    raw = raw.get("control") if isinstance(raw, dict) else None
    if not isinstance(raw, dict):
        raise SchemaError("problem file needs a 'control' object for the control command")
    unknown = set(raw) - {"free", "field", "x", "target"}
    if unknown:
        raise SchemaError(f"unknown control fields: {sorted(unknown)}")
    try:
        free, x, target = raw["free"], raw["x"], raw["target"]
    except KeyError as exc:
        raise SchemaError(f"missing control field {exc}") from exc
    if not isinstance(free, str):
        raise SchemaError("control.free must be a datum name")
    for key in ("x", "target"):
        if isinstance(raw[key], bool) or not isinstance(raw[key], (int, float)):
            raise SchemaError(f"control.{key} must be a number")
    field = raw.get("field", "T")
    if field not in ("T", "phi"):
        raise SchemaError("control.field must be 'T' or 'phi'")
    return ControlQuery(spec, free, TargetField(field), float(x), float(target))


def cmd_control(cfg: RunConfig) -> int:
    spec = _load(cfg)
    query = _control_query(spec, json.loads(Path(cfg.problem).read_text()))
    value, sol = invert(query)
    got = achieved(sol, query.field, query.x_target)
    residual = abs(got - query.target_value)
    relative = residual / max(1.0, abs(query.target_value))
    report = {
        "problem": spec.name,
        "free": query.free,
        "value": value,
        "field": query.field.value,
        "x": query.x_target,
        "target": query.target_value,
        "achieved": got,
        "sensitivity": sensitivity(spec, query.free, query.field, query.x_target),
        "residual": residual,
        "relative_residual": relative,
        "data": sol.spec.data.to_dict(),
    }
    _emit(cfg.out, _json(report))
    if relative > cfg.tolerance:
        raise VerificationFailed(f"control residual {relative:.3g} exceeds {cfg.tolerance:g}")
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    spec = _load(cfg)
    sol = solve_panel(spec)
    coarse, fine = solve_fd(spec, cfg.grid), solve_fd(spec, 2 * cfg.grid)
    report = compare(sol, fine, coarse)
    out = {"problem": spec.name, "tolerance": cfg.tolerance, **report.to_dict()}
    out["passed"] = report.max_rel <= cfg.tolerance
    _emit(cfg.out, _json(out))
    if not out["passed"]:
        raise VerificationFailed(f"FD discrepancy {report.max_rel:.3g} exceeds {cfg.tolerance:g}")
    return EXIT_OK


def cmd_sweep(cfg: RunConfig) -> int:
    spec = _load(cfg)
    sched = load_schedule(cfg.schedule)
    results = sweep(spec, sched, sched.taus)
    rows = []
    for tau, sol in results:
        rows.extend([tau, *s.row()] for s in sample_profile(sol, cfg.samples))
    _emit(cfg.out, _csv(("tau",) + StateSample.COLUMNS, rows))
    return EXIT_OK


COMMANDS = {"solve": cmd_solve, "control": cmd_control, "verify": cmd_verify, "sweep": cmd_sweep}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="piezoplate", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "solve": "closed-form profile (CSV) and coefficient report (JSON)",
        "control": "invert for the free datum named in the problem's 'control' object",
        "verify": "compare against the finite-difference oracle on grids N and 2N",
        "sweep": "quasi-static sweep over a schedule (long-format CSV)",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, help=text)
        p.add_argument("--material", type=Path, help="material JSON (default: bundled sample)")
        p.add_argument("--problem", type=Path, required=True, help="problem JSON")
        p.add_argument("--schedule", type=Path, help="schedule JSON (sweep)")
        p.add_argument("--out", default="-", help="output path, '-' for stdout (default)")
        p.add_argument("--samples", type=int, default=201, help="profile points (default 201)")
        p.add_argument("--grid", type=int, default=1024, help="FD intervals (default 1024)")
        p.add_argument("--tol", type=float, help="pass/fail tolerance")
    return parser


def run(cfg: RunConfig) -> int:
    return COMMANDS[cfg.command](cfg)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(args.command, args.material, args.problem, args.schedule, args.out,
                        args.samples, args.grid, args.tol)
        return run(cfg)
    except (SchemaError, MaterialError, json.JSONDecodeError, OSError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except (SolverError, ControlError, OutOfDomain, OutOfSchedule, GridTooCoarse, SpecMismatch) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except VerificationFailed as exc:
        print(f"VerificationFailed: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
