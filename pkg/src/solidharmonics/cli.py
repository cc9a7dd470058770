"""Command-line interface.

Every command prints one JSON document (a run report) on stdout. Exit
codes: 0 success, 1 tolerance breach, 2 usage or parse error (including
invalid harmonic indices), 3 domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
import time

import numpy as np

from . import coupling, expansions, harmonics, quadrature, rotation
from .checks import SUITES, run_suite
from .errors import DomainError, HarmonicIndexError

EXIT_OK, EXIT_TOLERANCE, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3


class UsageError(Exception):
    """Malformed input detected after argument parsing."""


def cjson(z) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def _floats(text: str, n: int | None = None, what: str = "value") -> list:
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"could not parse {what} {text!r}") from None
    if n is not None and len(vals) != n:
        raise UsageError(f"{what} needs {n} comma-separated numbers")
    return vals


def _ints(text: str, n: int, what: str) -> list:
    try:
        vals = [int(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"could not parse {what} {text!r}") from None
    if len(vals) != n:
        raise UsageError(f"{what} needs {n} comma-separated integers")
    return vals


def _csv_rows(path: str):
    with open(path, newline="") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if line:
                yield lineno, next(csv.reader([line]))


# -- commands ---------------------------------------------------------------------

def cmd_eval(args) -> dict:
    idx = harmonics.HarmonicIndex(args.l, args.m)
    if args.kind == "surface":
        if args.theta is None or args.phi is None:
            raise UsageError("surface evaluation needs --theta and --phi")
        val = harmonics.eval_Y(idx, args.theta, args.phi)
        params = {"l": args.l, "m": args.m, "theta": args.theta, "phi": args.phi, "kind": "surface"}
    else:
        if None in (args.x, args.y, args.z):
            raise UsageError("solid evaluation needs --x, --y and --z")
        val = harmonics.eval_solid(args.kind, idx, [args.x, args.y, args.z])
        params = {"l": args.l, "m": args.m, "r": [args.x, args.y, args.z], "kind": args.kind}
    return {"parameters": params, "result": cjson(val)}


def cmd_check(args) -> dict:
    res = run_suite(args.suite, args.l_max, args.seed)
    return {"parameters": {"suite": args.suite, "l_max": args.l_max, "seed": args.seed},
            "result": {"cases": res.cases, "tolerance": res.tolerance, "passed": res.passed},
            "max_residual": res.max_residual,
            "_exit": EXIT_OK if res.passed else EXIT_TOLERANCE}


_BUILTINS = {
    "one": lambda t, p: np.ones_like(t),
    "cos-theta": lambda t, p: np.cos(t),
    "exp-cos-theta": lambda t, p: np.exp(np.cos(t)),
}


def _builtin(name: str):
    if name in _BUILTINS:
        return _BUILTINS[name]
    m = re.fullmatch(r"Y(\d+)(-?\d+)", name)
    if m:
        idx = harmonics.HarmonicIndex(int(m.group(1)), int(m.group(2)))
        return lambda t, p: harmonics.eval_Y(idx, t, p)
    raise UsageError(f"unknown builtin {name!r}; use one of {sorted(_BUILTINS)} or Y<l><m>")


def _samples_on_grid(path: str):
    """Read theta,phi,value[,imag] samples that lie on a build_grid node set."""
    rows = []
    for lineno, fields in _csv_rows(path):
        if fields[0].strip() == "theta":
            continue
        if len(fields) not in (3, 4):
            raise UsageError(f"line {lineno}: expected theta,phi,value[,imag]")
        try:
            v = [float(x) for x in fields]
        except ValueError:
            raise UsageError(f"line {lineno}: non-numeric field") from None
        rows.append((v[0], v[1], complex(v[2], v[3] if len(v) == 4 else 0.0)))
    if not rows:
        raise UsageError("no samples found")
    n = len(rows)
    # n = (L + 1)(2L + 2) = 2 (L + 1)^2
    L = int(round(math.sqrt(n / 2))) - 1
    if L < 0 or 2 * (L + 1) ** 2 != n:
        raise UsageError("sample count does not match any quadrature grid; export one with 'grid'")
    grid = quadrature.build_grid(L)
    th, ph, w = grid.flat()
    lookup = {}
    for t, p, v in rows:
        lookup[(round(t, 9), round(p % (2 * math.pi), 9))] = v
    vals = []
    for t, p in zip(th, ph):
        key = (round(t, 9), round(p, 9))
        if key not in lookup:
            raise UsageError("samples are not on the quadrature grid nodes; export one with 'grid'")
        vals.append(lookup[key])
    return grid, np.array(vals)


def cmd_project(args) -> dict:
    if (args.input is None) == (args.builtin is None):
        raise UsageError("give exactly one of --input or --builtin")
    if args.builtin is not None:
        coeffs = quadrature.project(_builtin(args.builtin), args.l_max, tol=args.tol)
        source = {"builtin": args.builtin}
    else:
        grid, vals = _samples_on_grid(args.input)
        th, ph, w = grid.flat()
        if args.l_max > grid.exactness // 2:
            raise UsageError(f"grid supports l_max <= {grid.exactness // 2}")
        coeffs = quadrature.SHCoefficients(args.l_max)
        for l in range(args.l_max + 1):
            for m in range(-l, l + 1):
                a = quadrature.pairwise_sum(w * vals * np.conj(harmonics.eval_Y((l, m), th, ph)))
                if abs(a) > args.tol:
                    coeffs[(l, m)] = a
        source = {"input": args.input}
    return {"parameters": {**source, "l_max": args.l_max},
            "result": {"l_max": coeffs.l_max, "coefficients": coeffs.to_json_dict()}}


def cmd_energy(args) -> dict:
    try:
        s1 = expansions.PointChargeSet.from_csv(args.charges1)
        s2 = expansions.PointChargeSet.from_csv(args.charges2)
    except (OSError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    r = _floats(args.r, 3, "--r")
    conj = not args.unconjugated
    m1 = expansions.multipole_moments(s1, args.l_max, conjugate=conj)
    m2 = expansions.multipole_moments(s2, args.l_max, conjugate=conj)
    e, last, imag = expansions.interaction_energy(m1, m2, r, args.l_max, full=True, strict=conj,
                                                  truncation=args.truncation)
    direct = expansions.coulomb_energy(s1, s2, r)
    return {"parameters": {"charges1": args.charges1, "charges2": args.charges2, "r": r,
                           "l_max": args.l_max, "truncation": args.truncation,
                           "conjugated_moments": conj},
            "result": {"energy": e, "direct_coulomb": direct, "last_shell": last,
                       "imag_residue": imag},
            "max_residual": abs(e - direct)}


def cmd_image(args) -> dict:
    R = _floats(args.R, 3, "--R")
    q_img, pos = expansions.image_charge(args.a, R, args.q)
    return {"parameters": {"a": args.a, "R": R, "q": args.q},
            "result": {"q_img": q_img, "pos": [float(v) for v in pos]}}


def cmd_3j(args) -> dict:
    if args.batch:
        return _batch_triples(args, coupling.wigner_3j)
    if args.triple is None:
        raise UsageError("give --triple or --batch")
    t = coupling.TripleIndex(*_ints(args.triple, 6, "--triple"))
    return {"parameters": {"triple": args.triple}, "result": coupling.wigner_3j(t)}


def cmd_gaunt(args) -> dict:
    if args.batch:
        return _batch_triples(args, coupling.gaunt)
    if args.triple is None:
        raise UsageError("give --triple or --batch")
    t = coupling.TripleIndex(*_ints(args.triple, 6, "--triple"))
    return {"parameters": {"triple": args.triple}, "result": coupling.gaunt(t)}


def _batch_triples(args, fn) -> dict:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["lb", "mb", "lc", "mc", "ld", "md", "value"])
    for lineno, fields in _csv_rows(args.batch):
        try:
            vals = [int(v) for v in fields]
        except ValueError:
            raise UsageError(f"line {lineno}: expected six integers") from None
        if len(vals) != 6:
            raise UsageError(f"line {lineno}: expected six integers")
        writer.writerow(vals + [repr(fn(coupling.TripleIndex(*vals)))])
    return {"_raw": out.getvalue()}


def _spinor_from_args(args) -> rotation.SpinorParams:
    a, b, g = _floats(args.euler, 3, "--euler")
    return rotation.cd_from_euler(rotation.EulerAngles(a, b, g))


def cmd_rotate(args) -> dict:
    try:
        with open(args.coeffs) as fh:
            doc = json.load(fh)
        # accept a bare coefficient document or a 'project' run report
        coeffs = quadrature.SHCoefficients.from_json(doc.get("result", doc))
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"could not read coefficients: {exc}") from None
    p = _spinor_from_args(args)
    out = rotation.rotate_coefficients(coeffs, p)
    return {"parameters": {"coeffs": args.coeffs, "euler": args.euler},
            "result": {"l_max": out.l_max, "coefficients": out.to_json_dict()}}


def cmd_wigner_d(args) -> dict:
    p = _spinor_from_args(args)
    D = rotation.wigner_D(args.l, p)
    return {"parameters": {"l": args.l, "euler": args.euler},
            "result": {"rows": [[cjson(v) for v in row] for row in D]}}


def cmd_planewave(args) -> dict:
    k = _floats(args.k, 3, "--k")
    r = _floats(args.r, 3, "--r")
    val, last = expansions.plane_wave_partial_sum(k, r, args.l_max, full=True)
    exact = complex(math.cos(np.dot(k, r)), math.sin(np.dot(k, r)))
    return {"parameters": {"k": k, "r": r, "l_max": args.l_max},
            "result": {"value": cjson(val), "exact": cjson(exact), "last_shell": last},
            "max_residual": abs(val - exact)}


def cmd_grid(args) -> dict:
    out = io.StringIO()
    quadrature.write_grid_csv(quadrature.build_grid(args.l_max), out)
    return {"_raw": out.getvalue()}


# -- parser -------------------------------------------------------------------------

def _add_lmax(p, default=None, required=True):
    p.add_argument("--l-max", "--lmax", dest="l_max", type=int, default=default,
                   required=required and default is None, help="truncation degree")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="solidharmonics",
                                     description="Spherical and solid harmonics toolkit.")
    parser.add_argument("--pretty", action="store_true", help="print a key/value table instead of JSON")
    parser.add_argument("--timing", action="store_true",
                        help="include elapsed wall time (output is then not reproducible)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate Y_lm or a solid harmonic")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--theta", type=float)
    p.add_argument("--phi", type=float)
    p.add_argument("--x", type=float)
    p.add_argument("--y", type=float)
    p.add_argument("--z", type=float)
    p.add_argument("--kind", choices=["surface", "regular", "irregular"], default="surface")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("check", help="run a seeded identity suite")
    p.add_argument("--suite", choices=sorted(SUITES), required=True)
    _add_lmax(p)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("project", help="spherical-harmonic coefficients of a function")
    p.add_argument("--input", help="CSV of theta,phi,value[,imag] on a 'grid' node set")
    p.add_argument("--builtin", help="one, cos-theta, exp-cos-theta or Y<l><m> (e.g. Y32)")
    p.add_argument("--tol", type=float, default=1e-12, help="omit smaller coefficients")
    _add_lmax(p)
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("energy", help="multipole interaction energy of two charge sets")
    p.add_argument("--charges1", required=True)
    p.add_argument("--charges2", required=True)
    p.add_argument("--r", required=True, help="separation x,y,z from set 1 to set 2")
    p.add_argument("--unconjugated", action="store_true",
                   help="use unconjugated moments (does not reproduce Coulomb in general)")
    p.add_argument("--truncation", choices=["total", "box"], default="total",
                   help="keep l1+l2 <= l_max (total) or l1, l2 <= l_max (box)")
    _add_lmax(p)
    p.set_defaults(func=cmd_energy)

    p = sub.add_parser("image", help="image charge for a grounded sphere")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--R", required=True)
    p.add_argument("--q", type=float, required=True)
    p.set_defaults(func=cmd_image)

    for name, func in (("3j", cmd_3j), ("gaunt", cmd_gaunt)):
        p = sub.add_parser(name, help=f"{name} coefficient of a triple")
        p.add_argument("--triple", help="lb,mb,lc,mc,ld,md")
        p.add_argument("--batch", help="CSV of triples; prints CSV of values")
        p.set_defaults(func=func)

    p = sub.add_parser("rotate", help="rotate expansion coefficients")
    p.add_argument("--coeffs", required=True, help="JSON file of coefficients")
    p.add_argument("--euler", required=True, help="alpha,beta,gamma (z, x', z'')")
    p.set_defaults(func=cmd_rotate)

    p = sub.add_parser("wigner-d", help="rotation matrix D^l as JSON")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--euler", required=True, help="alpha,beta,gamma (z, x', z'')")
    p.set_defaults(func=cmd_wigner_d)

    p = sub.add_parser("planewave", help="partial-wave sum of exp(i k.r)")
    p.add_argument("--k", required=True)
    p.add_argument("--r", required=True)
    _add_lmax(p)
    p.set_defaults(func=cmd_planewave)

    p = sub.add_parser("grid", help="export quadrature nodes as CSV")
    _add_lmax(p)
    p.set_defaults(func=cmd_grid)
    return parser


def _json_safe(obj):
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, complex):
        return cjson(obj)
    return obj


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        if set(obj) == {"re", "im"}:
            yield prefix, f"{obj['re']!r} {'+' if obj['im'] >= 0 else '-'} {abs(obj['im'])!r}i"
            return
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list) and obj and isinstance(obj[0], (dict, list)):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}[{i}]")
    else:
        yield prefix, json.dumps(obj)


def format_table(report: dict) -> str:
    """Two-column key/value rendering of a run report."""
    rows = list(_flatten(report))
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        payload = args.func(args)
    except (UsageError, HarmonicIndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if "_raw" in payload:
        sys.stdout.write(payload["_raw"])
        return EXIT_OK
    code = payload.pop("_exit", EXIT_OK)
    report = {"command": args.command, **payload}
    if args.timing:
        report["elapsed_s"] = time.perf_counter() - start
    report = _json_safe(report)
    print(format_table(report) if args.pretty else json.dumps(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
