"""Command-line front door.

Subcommands: roots, check, scan, reproduce, crosspoly.  Machine-readable
output is JSON (default) or CSV; ``--svg PATH`` adds a root-locus plot of
the complex plane with the radius circles.  All numeric output is printed
with 12 significant digits; CSV column orders are frozen and documented
in docs/formats.md.  The environment variable STEINER_THREADS caps scan
parallelism; rows are sorted by parameter before emission either way.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import bodies, checker, hurwitz
from .bodies import BodySpecError, parse_body_spec, realize_body
from .quermass import build_polynomial, vieta_sums
from .reproduce import SCENARIOS, ScenarioResult, run_scenario
from .rootfind import RootFindingError, annulus_bounds, find_roots

SCAN_CSV_HEADER = ("family,n,param,value,max_re,"
                   "negativity_margin,inradius_margin,circumradius_margin")
ROOTS_CSV_HEADER = "re,im,mult,err"


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _round12(obj):
    """Round every float to 12 significant digits for stable output."""
    if isinstance(obj, float):
        return float(_fmt(obj))
    if isinstance(obj, dict):
        return {k: _round12(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round12(v) for v in obj]
    return obj


def _print_json(obj, out=sys.stdout):
    json.dump(_round12(obj), out, indent=2)
    out.write("\n")


def _report_dict(report) -> dict:
    return json.loads(report.to_json())


def _rootset_dict(rs) -> dict:
    return json.loads(rs.to_json())


def _analyze_body(text: str, tol: float):
    spec = parse_body_spec(text)
    body = realize_body(spec)
    poly = build_polynomial(body.quermass)
    rs = find_roots(poly)
    try:
        ring = annulus_bounds(poly)
    except ValueError:
        ring = None
    report = checker.check_conjecture(rs, body.radii, tol=tol)
    return body, poly, rs, ring, report


def cmd_roots(args) -> int:
    body, poly, rs, ring, report = _analyze_body(args.body, args.tol)
    if args.svg:
        _write_svg(args.svg, body, rs)
    if args.csv:
        print(ROOTS_CSV_HEADER)
        for r in rs.roots:
            print(",".join([_fmt(r.value.real), _fmt(r.value.imag),
                            str(r.multiplicity), _fmt(r.error_radius)]))
        return 0
    obj = {
        "body": body.label,
        "quermass": json.loads(body.quermass.to_json()),
        "polynomial": json.loads(poly.to_json()),
        "radii": {"r": body.radii.r, "R": body.radii.R},
        "roots": _rootset_dict(rs)["roots"],
        "annulus": json.loads(ring.to_json()) if ring else None,
        "vieta": dict(zip(("root_sum", "product_term"), vieta_sums(poly)))
        if poly.coeffs[poly.n] != 0 else None,
        "report": _report_dict(report),
    }
    if body.lens:
        obj["lens"] = {"phi": body.lens.phi, "A": body.lens.A}
    _print_json(obj)
    return 0


def cmd_check(args) -> int:
    body, poly, rs, ring, report = _analyze_body(args.body, args.tol)
    obj = {"body": body.label, "report": _report_dict(report)}
    _print_json(obj)
    failed = any(v == checker.FAILS for v in
                 (report.negativity.verdict, report.inradius.verdict,
                  report.circumradius.verdict))
    return 1 if failed else 0


def _scan_values(args) -> list[float]:
    if args.steps < 2:
        raise ValueError("need at least 2 steps")
    if args.log:
        if args.start <= 0 or args.stop <= 0:
            raise ValueError("logarithmic range needs positive endpoints")
        return list(np.geomspace(args.start, args.stop, args.steps))
    return list(np.linspace(args.start, args.stop, args.steps))


def _scan_one(family: str, n: int, r_gauge: float, value: float):
    if family == "cap":
        q, rad = bodies.make_cap_body(n, value)
        param = "alpha"
    elif family == "twotan":
        q, rad = bodies.make_two_tangential(n, value, value)
        param = "beta_alpha"
    elif family == "lens":
        _, q, rad = bodies.make_lens(r_gauge, value)
        param = "p"
    elif family == "cross":
        if n % 2:
            raise ValueError("cross scan needs even n")
        lams = [value] * (n // 2) + [1.0] * (n // 2)
        q, rad = bodies.crosspolytope_quermass(sorted(lams))
        param = "lam"
    else:
        raise ValueError(f"unknown scan family {family!r}")
    rs = find_roots(build_polynomial(q))
    report = checker.check_conjecture(rs, rad)
    return (family, n, param, value, rs.max_real,
            report.negativity.margin, report.inradius.margin,
            report.circumradius.margin)


def _thread_budget() -> int:
    env = os.environ.get("STEINER_THREADS")
    if env:
        return max(1, int(env))
    return min(8, os.cpu_count() or 1)


def cmd_scan(args) -> int:
    values = _scan_values(args)
    workers = _thread_budget()
    if workers > 1 and len(values) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(
                lambda v: _scan_one(args.family, args.n, args.r, v), values))
    else:
        rows = [_scan_one(args.family, args.n, args.r, v) for v in values]
    rows.sort(key=lambda row: row[3])
    print(SCAN_CSV_HEADER)
    for family, n, param, value, max_re, neg, inr, circ in rows:
        print(",".join([
            family, str(n), param, _fmt(value), _fmt(max_re),
            _fmt(neg), _fmt(inr), "" if circ is None else _fmt(circ)]))
    return 0


def _scenario_lines(res: ScenarioResult) -> list[str]:
    lines = [f"scenario {res.scenario}: {res.description}"]
    for c in res.checks:
        status = "PASS" if c.passed else "FAIL"
        detail = f"computed={_maybe_fmt(c.computed)} {c.mode} target={_maybe_fmt(c.target)}"
        if c.tolerance is not None:
            detail += f" tol={_fmt(c.tolerance)}"
        lines.append(f"  [{status}] {c.name}: {detail}")
    return lines


def _maybe_fmt(v) -> str:
    if isinstance(v, float):
        return _fmt(v)
    return str(v)


def cmd_reproduce(args) -> int:
    names = list(SCENARIOS) if args.scenario == "all" else [args.scenario]
    bad = [n for n in names if n not in SCENARIOS]
    if bad:
        print(f"unknown scenario(s) {bad}; choose from "
              f"{sorted(SCENARIOS)} or 'all'", file=sys.stderr)
        return 2
    results = [run_scenario(n) for n in names]
    if args.json:
        payload = [{
            "scenario": r.scenario,
            "description": r.description,
            "inputs": r.inputs,
            "passed": r.passed,
            "checks": [{
                "name": c.name, "computed": _jsonable(c.computed),
                "target": _jsonable(c.target), "tolerance": c.tolerance,
                "mode": c.mode, "passed": c.passed} for c in r.checks],
        } for r in results]
        _print_json(payload)
    else:
        for r in results:
            for line in _scenario_lines(r):
                print(line)
    return 0 if all(r.passed for r in results) else 1


def _jsonable(v):
    if isinstance(v, (bool, int, float, str, type(None))):
        return v
    return str(v)


def cmd_crosspoly(args) -> int:
    lams = sorted(bodies._parse_lams(args.lams, args.lams, 0))
    q, rad = bodies.crosspolytope_quermass(list(lams))
    obj = {
        "n": q.n,
        "lams": list(lams),
        "quermass": json.loads(q.to_json()),
        "radii": {"r": rad.r, "R": rad.R},
        "vertex_angle_sum": bodies.vertex_angle_sum(list(lams)),
        "log_concave": q.is_log_concave(),
    }
    if args.roots:
        rs = find_roots(build_polynomial(q))
        obj["roots"] = _rootset_dict(rs)["roots"]
        obj["max_real_part"] = rs.max_real
    _print_json(obj)
    return 0


# ---------------------------------------------------------------------------
# SVG root locus


def _write_svg(path: str, body, rs) -> None:
    size = 640
    margin = 50
    extent = max([abs(r.value.real) for r in rs.roots]
                 + [abs(r.value.imag) for r in rs.roots]
                 + [body.radii.r, body.radii.R or 0.0, 1e-9]) * 1.15

    def sx(x: float) -> float:
        return margin + (x + extent) / (2 * extent) * (size - 2 * margin)

    def sy(y: float) -> float:
        return size - margin - (y + extent) / (2 * extent) * (size - 2 * margin)

    def circle(rad: float, color: str, label: str) -> list[str]:
        if rad <= 0:
            return []
        px = (size - 2 * margin) * rad / (2 * extent)
        return [
            f'<circle cx="{sx(0):.2f}" cy="{sy(0):.2f}" r="{px:.2f}" '
            f'fill="none" stroke="{color}" stroke-dasharray="6 4"/>',
            f'<text x="{sx(rad * 0.7071):.2f}" y="{sy(rad * 0.7071) - 4:.2f}" '
            f'fill="{color}" font-size="12">{label}={_fmt(rad)}</text>',
        ]

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" '
        f'height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
        f'<line x1="{margin}" y1="{sy(0):.2f}" x2="{size - margin}" '
        f'y2="{sy(0):.2f}" stroke="#999"/>',
        f'<line x1="{sx(0):.2f}" y1="{margin}" x2="{sx(0):.2f}" '
        f'y2="{size - margin}" stroke="#999"/>',
        f'<text x="{size - margin + 4}" y="{sy(0) + 4:.2f}" font-size="12">Re</text>',
        f'<text x="{sx(0) + 6:.2f}" y="{margin - 6}" font-size="12">Im</text>',
        f'<text x="{margin}" y="{margin - 20}" font-size="14">'
        f'roots of {body.label}</text>',
    ]
    parts += circle(body.radii.r, "#2a7", "r")
    if body.radii.R is not None:
        parts += circle(body.radii.R, "#27b", "R")
    for r in rs.roots:
        parts.append(
            f'<circle cx="{sx(r.value.real):.2f}" cy="{sy(r.value.imag):.2f}" '
            f'r="4" fill="#c22"/>')
        if r.multiplicity > 1:
            parts.append(
                f'<text x="{sx(r.value.real) + 6:.2f}" '
                f'y="{sy(r.value.imag) - 6:.2f}" fill="#c22" font-size="12">'
                f'x{r.multiplicity}</text>')
    parts.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(parts) + "\n")


# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="steinerpoly",
        description="Steiner polynomials of convex bodies: roots, bounds, "
                    "and conjecture checks.")
    ap.add_argument("--json", action="store_true",
                    help="JSON output (default for most commands)")
    ap.add_argument("--csv", action="store_true", help="CSV output")
    ap.add_argument("--svg", metavar="PATH", help="write a root-locus SVG")
    ap.add_argument("--tol", type=float, default=checker.MARGIN_TOL,
                    help="margin tolerance for conjecture verdicts")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("roots", help="roots and verdicts for one body")
    p.add_argument("body", help="body spec, e.g. lens:R=1,p=5.2 or ball:n=3")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("check", help="conjecture report only; exit 1 on failure")
    p.add_argument("body")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("scan", help="parameter sweep, CSV per sample")
    p.add_argument("family", choices=["cap", "twotan", "lens", "cross"])
    p.add_argument("--n", type=int, default=3, help="ambient dimension")
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--steps", type=int, default=25)
    p.add_argument("--log", action="store_true", help="geometric spacing")
    p.add_argument("--r", type=float, default=1.0,
                   help="circumradius of the lens family")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("reproduce", help="run a pinned scenario against "
                                         "its reference targets")
    p.add_argument("scenario", help=f"one of {sorted(SCENARIOS)} or 'all'")
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("crosspoly", help="crosspolytope quermassintegrals")
    p.add_argument("--lams", required=True,
                   help="axis half-lengths, e.g. 0.01x10,1x10")
    p.add_argument("--roots", action="store_true", help="also solve for roots")
    p.set_defaults(func=cmd_crosspoly)
    return ap


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BodySpecError as exc:
        print(f"body spec error: {exc}", file=sys.stderr)
        return 2
    except (RootFindingError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
