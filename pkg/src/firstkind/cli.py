"""Command-line interface: ``firstkind classify | sweep | hadamard | bisect``.

Exit codes: 0 on any verdict, 2 for input errors, 3 for numerical failures,
4 when a Hadamard check disagrees.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys

import numpy as np

from .catalog import builtin_map
from .classify import classify
from .config import QuadratureConfig, load_config
from .deformations import CHECKS, WITNESSES, named_family, sweep, t_grid, threshold_bisect
from .errors import InputError, NumericalError
from .greens import hadamard_check
from .series import CoefficientMap

EXIT_OK, EXIT_INPUT, EXIT_NUMERICAL, EXIT_MISMATCH = 0, 2, 3, 4
HADAMARD_TOL = 1e-3
CSV_HEADER = ["t", "D", "kind", "maxima", "starlike", "univalent", "s_i_margin", "area", "status"]
FAMILIES = ("appendix3", "nonunivalent", "dilation", "disk-dilation", "scaling", "coefficient")


def fmt(x) -> str:
    """12 significant digits, '.' as decimal separator."""
    return format(float(x), ".12g")


def to_jsonable(obj):
    """Round floats to 12 significant digits; complex values become ``[re, im]``."""
    if isinstance(obj, dict):
        return {k: to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [to_jsonable(obj.real), to_jsonable(obj.imag)]
    if isinstance(obj, (float, np.floating)):
        return float(fmt(obj)) if math.isfinite(obj) else None
    return obj


def parse_complex(text: str) -> complex:
    """Accepts ``0.2``, ``0.2i``, ``-i``, ``0.1+0.2i`` and Python's ``j`` form."""
    s = text.strip().replace(" ", "").replace("i", "j")
    s = re.sub(r"(^|[+-])j", r"\g<1>1j", s)
    try:
        return complex(s)
    except ValueError:
        raise InputError(f"cannot parse {text!r} as a complex number") from None


def map_from_spec(data) -> CoefficientMap:
    """Build a map from a parsed DomainSpec object."""
    if not isinstance(data, dict):
        raise InputError("domain spec must be a JSON object")
    has_c, has_b = "coefficients" in data, "builtin" in data
    if has_c == has_b:
        raise InputError("domain spec needs exactly one of 'coefficients' or 'builtin'")
    label = str(data.get("label", ""))
    if has_b:
        b = data["builtin"]
        if isinstance(b, str):
            b = {"name": b}
        if not isinstance(b, dict) or "name" not in b:
            raise InputError("'builtin' must be an object with a 'name'")
        f = builtin_map(b["name"], b.get("params"))
        return CoefficientMap(f.coefficients, label=label or f.label)
    coeffs = []
    for k, c in enumerate(data["coefficients"]):
        if isinstance(c, (int, float)) and not isinstance(c, bool):
            coeffs.append(complex(c))
        elif isinstance(c, list) and len(c) == 2 and all(isinstance(v, (int, float)) for v in c):
            coeffs.append(complex(c[0], c[1]))
        else:
            raise InputError(f"coefficient {k} must be a number or a [re, im] pair")
    return CoefficientMap(coeffs, label=label)


def load_spec(path: str) -> CoefficientMap:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return map_from_spec(data)


def build_config(args) -> QuadratureConfig:
    cfg = load_config(args.config) if args.config else QuadratureConfig()
    changes = {}
    if args.samples is not None:
        changes["boundary_samples"] = args.samples
    if getattr(args, "cross_check", False):
        changes["cross_check"] = True
    return cfg.replace(**changes) if changes else cfg


def _family(args):
    name = "dilation" if args.family == "disk-dilation" else args.family
    base = load_spec(args.base) if args.base else None
    return named_family(name, base)


def _emit_json(payload, out):
    out.write(json.dumps(to_jsonable(payload), indent=2, allow_nan=False) + "\n")


def cmd_classify(args, out) -> int:
    f = load_spec(args.spec)
    cfg = build_config(args)
    res = classify(f, cfg)
    if args.json:
        payload = res.to_dict()
        payload["label"] = f.label
        payload["summary"] = res.summary()
        _emit_json(payload, out)
        return EXIT_OK
    d = "nan" if not math.isfinite(res.D_value) else f"{res.D_value:.6f}"
    out.write(f"{res.summary()}, D = {d}\n")
    if res.A_value is not None:
        out.write(f"A = {res.A_value:.12g}\n")
    if res.critical_points:
        out.write(f"{'kind':<10} {'z (disk)':>28} {'w (domain)':>28} {'gamma':>14} {'residual':>10}\n")
        for p in res.critical_points:
            out.write(
                f"{p.kind:<10} {p.z_disk.real:>13.8f}{p.z_disk.imag:>+14.8f}i"
                f" {p.w_domain.real:>13.8f}{p.w_domain.imag:>+14.8f}i"
                f" {p.gamma_value:>14.10f} {p.gradient_residual:>10.2e}\n"
            )
    out.write(
        f"univalent: {str(res.univalent).lower()}  regular_boundary: {str(res.regular_boundary).lower()}"
        f"  maxima: {res.maxima_count}\n"
    )
    if res.diagnostics:
        out.write(f"notes: {res.diagnostics}\n")
    return EXIT_OK


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return fmt(v)
    return str(v)


def sweep_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        d = r.to_dict()
        w.writerow([_csv_cell(d[k]) for k in CSV_HEADER])
    return buf.getvalue()


def cmd_sweep(args, out) -> int:
    fam = _family(args)
    cfg = build_config(args)
    checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    rows = sweep(fam, t_grid(args.t_min, args.t_max, args.steps), checks, cfg)
    text = sweep_csv(rows)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            fh.write(text)
    if args.json:
        _emit_json([r.to_dict() for r in rows], out)
    elif not args.csv:
        out.write(text)
    return EXIT_OK


def cmd_hadamard(args, out) -> int:
    fam = _family(args)
    cfg = build_config(args)
    x, y = parse_complex(args.x), parse_complex(args.y)
    res = hadamard_check(fam, args.t, x, y, cfg)
    ok = res.rel_err < HADAMARD_TOL
    if args.json:
        payload = res.to_dict()
        payload["pass"] = ok
        _emit_json(payload, out)
    else:
        out.write(f"lhs = {fmt(res.lhs_fd)}\nrhs = {fmt(res.rhs_integral)}\nrel_err = {res.rel_err:.3e}\n")
        out.write("agreement\n" if ok else f"MISMATCH (rel_err >= {HADAMARD_TOL:g})\n")
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_bisect(args, out) -> int:
    fam = _family(args)
    cfg = build_config(args)
    tol = args.tol if args.tol is not None else (1e-3 if args.witness == "maxima" else 1e-8)
    res = threshold_bisect(fam, args.witness, (args.t_lo, args.t_hi), tol, cfg)
    if args.json:
        _emit_json(res.to_dict(), out)
    else:
        lo, hi = res.interval
        out.write(f"t* = {res.t_star:.8f}  interval [{fmt(lo)}, {fmt(hi)}]  ({res.iterations} steps)\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--samples", type=int, help="boundary samples (power of two)")
    common.add_argument("--config", help="JSON run-config overlay")

    fam = argparse.ArgumentParser(add_help=False)
    fam.add_argument("family", choices=FAMILIES)
    fam.add_argument("--base", help="domain spec of the base map (scaling / coefficient families)")

    p = argparse.ArgumentParser(prog="firstkind", description="Classify planar domains given by Riemann-map coefficients.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", parents=[common], help="classify one domain")
    c.add_argument("spec", help="domain spec JSON file")
    c.add_argument("--cross-check", action="store_true", help="also evaluate the regularized integral")
    c.set_defaults(func=cmd_classify)

    s = sub.add_parser("sweep", parents=[common, fam], help="tabulate checks along a family")
    s.add_argument("t_min", type=float)
    s.add_argument("t_max", type=float)
    s.add_argument("--steps", type=int, default=26)
    s.add_argument("--checks", default=",".join(CHECKS), help=f"comma list from {','.join(CHECKS)}")
    s.add_argument("--csv", help="write the table to this path")
    s.set_defaults(func=cmd_sweep)

    h = sub.add_parser("hadamard", parents=[common, fam], help="finite-difference vs boundary-integral check")
    h.add_argument("t", type=float)
    h.add_argument("x")
    h.add_argument("y")
    h.set_defaults(func=cmd_hadamard)

    b = sub.add_parser("bisect", parents=[common, fam], help="locate a threshold along a family")
    b.add_argument("witness", choices=WITNESSES)
    b.add_argument("t_lo", type=float)
    b.add_argument("t_hi", type=float)
    b.add_argument("--tol", type=float)
    b.set_defaults(func=cmd_bisect)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalError as exc:
        print(f"numerical error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
