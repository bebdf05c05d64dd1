"""Command-line front end: coefficient tables and verification reports.

Subcommands:
  coeffs             print all constants for each (theta, m)
  table              write the grid as CSV or JSON
  verify-ball        spectral fit on the disc/ball vs the closed forms
  verify-cylinder    integrated kernel identities and the t-integral
  verify-identities  hypergeometric consistency web

Exit status: 0 all residuals within tolerance, 1 tolerance failure (report
still written), 2 configuration error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np

from . import ball_spectrum, cylinder, identities
from .clifford import build_gamma
from .coefficients import (a1_eta_ball, ball_heat_coefficients,
                           eta_constants, universal_constants)

CSV_FIELDS = ["theta", "m", "c1", "c2", "c3", "c4", "c5", "c6", "c7",
              "d1", "d2", "d3", "d4", "a1_ball", "a2_ball", "a1_eta"]


def _fmt(x: float) -> str:
    if x == 0.0:
        x = 0.0  # normalize -0.0
    return f"{x:.12g}"


def _parse_theta(text: str) -> list[float]:
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"theta range must be start:stop:step, "
                             f"got {text!r}")
        start, stop, step = (float(p) for p in parts)
        if step <= 0:
            raise ValueError("theta step must be positive")
        n = int(math.floor((stop - start) / step + 1e-9)) + 1
        if n < 1:
            raise ValueError("empty theta range")
        return [start + k * step for k in range(n)]
    vals = [float(v) for v in text.split(",") if v.strip()]
    if not vals:
        raise ValueError("empty theta list")
    return vals


def _parse_m(text: str) -> list[int]:
    ms = [int(v) for v in text.split(",") if v.strip()]
    if not ms:
        raise ValueError("empty m list")
    for m in ms:
        if m % 2 or not (2 <= m <= 12):
            raise ValueError(f"m must be even in [2, 12], got {m}")
    return ms


def _env_float(name: str, default: float) -> float:
    return float(os.environ.get(name, default))


def _row(theta: float, m: int) -> dict:
    uc = universal_constants(theta, m)
    ec = eta_constants(theta, m, "cylinder_form")
    ball = ball_heat_coefficients(theta, m)
    return {"theta": theta, "m": m,
            "c1": uc.c1, "c2": uc.c2, "c3": uc.c3, "c4": uc.c4,
            "c5": uc.c5, "c6": uc.c6, "c7": uc.c7,
            "d1": ec.d1, "d2": ec.d2, "d3": ec.d3, "d4": ec.d4,
            "a1_ball": ball["a1"], "a2_ball": ball["a2"],
            "a1_eta": a1_eta_ball(theta, m)}


def _emit(text: str, out_path) -> None:
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for r in rows:
        w.writerow([_fmt(r[k]) if isinstance(r[k], float) else r[k]
                    for k in CSV_FIELDS])
    return buf.getvalue()


def _rows_to_json(rows: list[dict]) -> str:
    clean = [{k: (float(_fmt(v)) if isinstance(v, float) else v)
              for k, v in r.items()} for r in rows]
    return json.dumps(clean, indent=2) + "\n"


def cmd_coeffs(args) -> int:
    lines = []
    for m in args.m:
        for theta in args.theta:
            r = _row(theta, m)
            ball_d = eta_constants(theta, m, "ball_form")
            lines.append(f"theta={_fmt(theta)} m={m}")
            lines.append("  c1..c7: " + " ".join(
                _fmt(r[f"c{i}"]) for i in range(1, 8)))
            lines.append("  d1..d4 (cylinder): " + " ".join(
                _fmt(r[k]) for k in ("d1", "d2", "d3", "d4")))
            lines.append("  d1..d3 (ball):     " + " ".join(
                _fmt(v) for v in (ball_d.d1, ball_d.d2, ball_d.d3)))
            lines.append(f"  a1_ball={_fmt(r['a1_ball'])} "
                         f"a2_ball={_fmt(r['a2_ball'])} "
                         f"a1_eta={_fmt(r['a1_eta'])}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_table(args) -> int:
    rows = [_row(theta, m) for m in args.m for theta in args.theta]
    text = _rows_to_csv(rows) if args.format == "csv" else _rows_to_json(rows)
    _emit(text, args.out)
    return 0


def cmd_verify_ball(args) -> int:
    mu_max = _env_float("CHIRALBAG_MU_MAX", args.mu_max)
    t_min = _env_float("CHIRALBAG_T_MIN", args.t_min)
    t_max = _env_float("CHIRALBAG_T_MAX", args.t_max)
    ok = True
    rows = []
    for m in args.m:
        for theta in args.theta:
            samples = ball_spectrum.geometric_samples(
                theta, m, mu_max, t_min=t_min, t_max=t_max,
                n_samples=args.n_samples)
            fit = ball_spectrum.fit_heat_coefficients(samples, m, K=args.K)
            ball = ball_heat_coefficients(theta, m)
            a1, a2 = fit.coeffs[1], fit.coeffs[2]
            if abs(ball["a1"]) > 1e-10:
                a1_ok = abs(a1 - ball["a1"]) / abs(ball["a1"]) < args.a1_rtol
            else:
                a1_ok = abs(a1) < 3.0 * max(fit.coeff_errors[1], 1e-12)
            a2_ok = abs(a2 - ball["a2"]) < args.a2_atol
            ok = ok and a1_ok and a2_ok
            rows.append({"theta": theta, "m": m,
                         "a1_fit": a1, "a1_closed": ball["a1"],
                         "a2_fit": a2, "a2_closed": ball["a2"],
                         "fit_residual": fit.residual,
                         "pass": bool(a1_ok and a2_ok)})
    _emit(_report_text(rows, args.format), args.out)
    return 0 if ok else 1


def cmd_verify_cylinder(args) -> int:
    rep = build_gamma(args.m[0])
    ok = True
    rows = []
    for omega in args.omega:
        for theta in args.theta:
            for t in args.t:
                p = cylinder.ModeParams(omega=omega, theta=theta, t=t,
                                        rep=rep)
                r1 = cylinder.check_U1_integral(p)
                r2 = cylinder.check_U2_integral(p)
                passed = r1 < args.tol and r2 < args.tol
                ok = ok and passed
                rows.append({"omega": omega, "theta": theta, "t": t,
                             "U1_residual": r1, "U2_residual": r2,
                             "pass": passed})
    for s in args.s:
        for omega in args.omega:
            for theta in args.theta:
                rt = cylinder.check_t_integral(s, omega, theta)
                passed = rt < args.tol
                ok = ok and passed
                rows.append({"s": s, "omega": omega, "theta": theta,
                             "t_integral_residual": rt, "pass": passed})
    _emit(_report_text(rows, args.format), args.out)
    return 0 if ok else 1


def cmd_verify_identities(args) -> int:
    report = identities.grid_report(thetas=args.theta, ms=tuple(args.m))
    ok = all(v < args.tol for v in report.values())
    rows = [{"identity": k, "max_residual": v, "pass": v < args.tol}
            for k, v in report.items()]
    _emit(_report_text(rows, args.format), args.out)
    return 0 if ok else 1


def _report_text(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        clean = [{k: (float(_fmt(v)) if isinstance(v, (float, np.floating))
                      else v) for k, v in r.items()} for r in rows]
        return json.dumps(clean, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(list(rows[0].keys()))
    for r in rows:
        w.writerow([_fmt(v) if isinstance(v, (float, np.floating)) else v
                    for v in r.values()])
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="chiralbag",
        description="Boundary heat-kernel constants for chiral bag "
                    "conditions: tables and numerical verification.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--m", type=_parse_m, default=[2],
                       help="comma list of even dimensions in [2, 12]")
        p.add_argument("--theta", type=_parse_theta, default=[0.0],
                       help="comma list or start:stop:step")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", default=None, help="output path (stdout "
                       "if omitted)")

    common(sub.add_parser("coeffs", help="print all constants"))
    common(sub.add_parser("table", help="write the coefficient grid"))

    vb = sub.add_parser("verify-ball", help="spectral fit vs closed forms")
    common(vb)
    vb.add_argument("--mu-max", type=float, default=100.0)
    vb.add_argument("--t-min", type=float, default=0.02)
    vb.add_argument("--t-max", type=float, default=0.3)
    vb.add_argument("--n-samples", type=int, default=20)
    vb.add_argument("--K", type=int, default=5)
    vb.add_argument("--a1-rtol", type=float, default=0.01)
    vb.add_argument("--a2-atol", type=float, default=0.01)

    vc = sub.add_parser("verify-cylinder", help="kernel identity checks")
    common(vc)
    vc.add_argument("--omega", type=lambda s: [float(v) for v in
                                               s.split(",")],
                    default=[0.5, 1.3, 2.0])
    vc.add_argument("--t", type=lambda s: [float(v) for v in s.split(",")],
                    default=[0.1, 0.25])
    vc.add_argument("--s", type=lambda s: [float(v) for v in s.split(",")],
                    default=[1.5, 2.5])
    vc.add_argument("--tol", type=float, default=1e-8)

    vi = sub.add_parser("verify-identities", help="consistency web")
    common(vi)
    vi.add_argument("--tol", type=float, default=1e-11)
    return ap


def _merge_negative_values(argv: list[str]) -> list[str]:
    """Join flags with values that start with a minus sign (negative thetas,
    ranges like -2:2:0.25) so argparse does not mistake them for options."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok.startswith("--") and "=" not in tok and i + 1 < len(argv) \
                and argv[i + 1].startswith("-") and len(argv[i + 1]) > 1 \
                and argv[i + 1][1].isdigit():
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    ap = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = ap.parse_args(_merge_negative_values(list(argv)))
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        if args.command == "coeffs":
            return cmd_coeffs(args)
        if args.command == "table":
            return cmd_table(args)
        if args.command == "verify-ball":
            return cmd_verify_ball(args)
        if args.command == "verify-cylinder":
            return cmd_verify_cylinder(args)
        if args.command == "verify-identities":
            return cmd_verify_identities(args)
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
