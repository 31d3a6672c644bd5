"""Command-line entry point: ``hamshallow <subcommand> ...``.

Exit codes: 0 success, 1 bad input, 2 solver failure, 3 verification
failure. Errors are printed to stderr as one JSON object.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import composer, qsp, resources, simulator
from .composer import PARAM_NAMES, Atom
from .errors import HamshallowError, ParameterError, UsageError, ValidationError
from .hamiltonian import parse_hamiltonian
from .polyops import ChebyshevSeries, poly_from_dict

EXIT_VERIFY_FAIL = 3

# shorthand family names -> (family, basis)
FAMILY_ALIASES = {
    "monomial": ("monomial", "chebyshev"),
    "power": ("monomial", "chebyshev"),
    "exp": ("exp", "chebyshev"),
    "gauss": ("gauss", "chebyshev"),
    "erf": ("erf", "chebyshev"),
    "cospow": ("monomial", "laurent-cos"),
    "sinpow": ("monomial", "laurent-sin"),
    "expcos": ("exp", "laurent-cos"),
    "expsin": ("exp", "laurent-sin"),
    "gausscos": ("gauss", "laurent-cos"),
    "gausssin": ("gauss", "laurent-sin"),
    "erfcos": ("erf", "laurent-cos"),
    "erfsin": ("erf", "laurent-sin"),
}


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad flags, which would collide with solver failures
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------- parsing

def parse_atom(text: str) -> Atom:
    """``family:param=value[,basis=...]``, e.g. ``cospow:n=20`` or ``exp:beta=2``."""
    head, _, rest = text.strip().partition(":")
    key = head.strip().lower()
    if key not in FAMILY_ALIASES:
        raise ValidationError(f"unknown family {head!r}; expected one of {sorted(FAMILY_ALIASES)}")
    family, basis = FAMILY_ALIASES[key]
    fields = {}
    for item in filter(None, (s.strip() for s in rest.split(","))):
        k, eq, v = item.partition("=")
        if not eq:
            raise ValidationError(f"expected key=value in {item!r}")
        fields[k.strip().lower()] = v.strip()
    basis = fields.pop("basis", basis)
    name = PARAM_NAMES[family]
    raw = fields.pop(name, fields.pop("param", None))
    if raw is None:
        raise ValidationError(f"{family} needs '{name}=<value>'")
    if fields:
        raise ValidationError(f"unexpected fields {sorted(fields)} in {text!r}")
    try:
        value = float(raw)
    except ValueError as exc:
        raise ValidationError(f"parameter {raw!r} is not a number") from exc
    return Atom(family, int(value) if family == "monomial" and value.is_integer() else value, basis)


def _load_json_arg(arg: str):
    """JSON text, or a path to a JSON file."""
    text = arg.strip()
    if not text.startswith(("{", "[")):
        if not os.path.exists(arg):
            raise ValidationError(f"no such file: {arg}")
        with open(arg) as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid JSON in {arg!r}: {exc}") from exc


def load_spec(arg: str):
    """Atom mini-grammar, inline JSON spec, or a spec file."""
    if ":" in arg and not arg.strip().startswith("{") and not os.path.exists(arg):
        return parse_atom(arg)
    return composer.spec_from_dict(_load_json_arg(arg))


def parse_grid(text: str, integer: bool = False) -> list:
    """``a..b`` doubles from a up to b; otherwise a comma list."""
    text = text.strip()
    try:
        if ".." in text:
            lo_s, hi_s = text.split("..", 1)
            lo, hi = float(lo_s), float(hi_s)
            if not (0 < lo <= hi):
                raise ParameterError(f"grid {text!r} needs 0 < a <= b")
            vals, v = [], lo
            while v <= hi * (1 + 1e-12):
                vals.append(v)
                v *= 2
        else:
            vals = [float(s) for s in text.split(",") if s.strip()]
    except ValueError as exc:
        raise ValidationError(f"bad grid {text!r}") from exc
    if not vals:
        raise ValidationError(f"empty grid {text!r}")
    if integer:
        if any(not v.is_integer() for v in vals):
            raise ValidationError(f"grid {text!r} must contain integers")
        return [int(v) for v in vals]
    return vals


def parse_trotter(text: str | None):
    """``auto`` (v=2), ``v,auto`` or ``v,r``; ``None``/``exact`` means exact U."""
    if text is None or text == "exact":
        return "exact"
    if text == "auto":
        return ("trotter", 2, None)
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise ValidationError("--trotter expects 'auto', 'v,auto' or 'v,r'")
    try:
        v = int(parts[0])
        r = None if parts[1] == "auto" else int(parts[1])
    except ValueError as exc:
        raise ValidationError(f"bad --trotter value {text!r}") from exc
    return ("trotter", v, r)


def _dump(obj, out: str | None):
    text = json.dumps(obj, indent=2)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# ------------------------------------------------------------ subcommands

def cmd_approx(args) -> int:
    atom = parse_atom(args.function) if not args.function.strip().startswith("{") else load_spec(args.function)
    if not isinstance(atom, Atom):
        raise UsageError("approx takes a single atom; use 'compose' for composites")
    poly, rep = composer.approximate_atom(atom, args.delta, measure=not args.no_measure)
    _dump({"function": atom.to_dict(), "poly": poly.to_dict(), "report": rep.to_dict()}, args.out)
    return 0


def cmd_compose(args) -> int:
    spec = load_spec(args.spec)
    mixed, rep = composer.approximate(spec, args.delta, grid=args.grid, measure=not args.no_measure)
    _dump({"spec": spec.to_dict(), "approximation": mixed.to_dict(), "report": rep.to_dict()}, args.out)
    return 0


def _target_from(doc):
    if not isinstance(doc, dict):
        raise ValidationError("target must be a JSON object")
    for key in ("poly", "target"):
        if isinstance(doc.get(key), dict):
            return poly_from_dict(doc[key])
    return poly_from_dict(doc)


def cmd_phases(args) -> int:
    target = _target_from(_load_json_arg(args.target))
    if isinstance(target, ChebyshevSeries):
        comps = qsp.synthesize_chebyshev(target, args.tol)
    else:
        comps = qsp.synthesize_laurent(target)
    if len(comps) == 1 and comps[0].weight == 1:
        out = comps[0].program.to_dict()
    else:
        out = {"kind": "synthesis", "components": [c.to_dict() for c in comps]}
    _dump(out, args.out)
    return 0


def cmd_simulate(args) -> int:
    spec = load_spec(args.spec)
    h = parse_hamiltonian(_load_json_arg(args.hamiltonian))
    rep = simulator.verify(spec, h, args.delta, args.pipeline, tol=args.tol, u_mode=parse_trotter(args.trotter))
    _dump(rep.to_dict(), args.out)
    return 0 if rep.passed else EXIT_VERIFY_FAIL


def cmd_depth(args) -> int:
    spec = load_spec(args.spec)
    h = parse_hamiltonian(_load_json_arg(args.hamiltonian))
    rep = resources.depth_report(spec, h, args.delta, args.order)
    if args.json:
        _dump(rep.to_dict(), args.out)
    else:
        print(rep.table())
    return 0


SWEEP_COLUMNS = ("family", "param", "delta", "raw_degree", "approx_degree", "bound", "measured_error")


def _sweep_cell(family_key, param, delta, measure):
    family, basis = FAMILY_ALIASES[family_key]
    _, rep = composer.approximate_atom(Atom(family, param, basis), delta, measure=measure)
    err = rep.measured_sup_error
    return {
        "family": family_key,
        "param": param,
        "delta": delta,
        "raw_degree": rep.truncation_degree,
        "approx_degree": rep.approx_degree,
        "bound": rep.guaranteed_bound,
        "measured_error": float("nan") if err is None else err,
    }


def _fmt(v):
    if isinstance(v, float):
        return "nan" if math.isnan(v) else format(v, ".17g")
    return str(v)


def cmd_sweep(args) -> int:
    key = args.family.lower()
    if key not in FAMILY_ALIASES:
        raise ValidationError(f"unknown family {args.family!r}; expected one of {sorted(FAMILY_ALIASES)}")
    integer = FAMILY_ALIASES[key][0] == "monomial"
    params = parse_grid(args.param_grid, integer=integer)
    deltas = parse_grid(args.delta_grid)
    cells = [(key, p, d, not args.no_measure) for p in params for d in deltas]
    # pool.map keeps input order
    with ThreadPoolExecutor(max_workers=max(1, args.workers)) as pool:
        rows = list(pool.map(lambda c: _sweep_cell(*c), cells))
    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        w = csv.writer(fh)
        w.writerow(SWEEP_COLUMNS)
        for r in rows:
            w.writerow([_fmt(r[c]) for c in SWEEP_COLUMNS])
    finally:
        if args.out:
            fh.close()
    return 0


# ------------------------------------------------------------------ main

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hamshallow", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    a = sub.add_parser("approx", help="approximate one atom")
    a.add_argument("--function", required=True, help="e.g. monomial:n=100 or cospow:n=20")
    a.add_argument("--delta", type=float, required=True)
    a.add_argument("--out")
    a.add_argument("--no-measure", action="store_true", help="skip the grid oracle")
    a.set_defaults(func=cmd_approx)

    c = sub.add_parser("compose", help="approximate a composite spec")
    c.add_argument("--spec", required=True, help="spec JSON file, inline JSON or atom grammar")
    c.add_argument("--delta", type=float, required=True)
    c.add_argument("--grid", type=int, default=300)
    c.add_argument("--out")
    c.add_argument("--no-measure", action="store_true")
    c.set_defaults(func=cmd_compose)

    ph = sub.add_parser("phases", help="solve QSP phases or GQSP angles")
    ph.add_argument("--target", required=True, help="polynomial JSON (or approx output)")
    ph.add_argument("--tol", type=float, default=qsp.DEFAULT_TOL)
    ph.add_argument("--out")
    ph.set_defaults(func=cmd_phases)

    s = sub.add_parser("simulate", help="verify the circuit block against f(H)")
    s.add_argument("--spec", required=True)
    s.add_argument("--hamiltonian", required=True)
    s.add_argument("--delta", type=float, required=True)
    s.add_argument("--pipeline", choices=("qsp", "gqsp", "mixed"), default=None)
    s.add_argument("--trotter", default=None, help="'auto', 'v,auto' or 'v,r' (default: exact U)")
    s.add_argument("--tol", type=float, default=qsp.DEFAULT_TOL)
    s.add_argument("--out")
    s.set_defaults(func=cmd_simulate)

    d = sub.add_parser("depth", help="depth scaling estimates")
    d.add_argument("--spec", required=True)
    d.add_argument("--hamiltonian", required=True)
    d.add_argument("--delta", type=float, required=True)
    d.add_argument("--order", type=int, default=2, help="Trotter order parameter v")
    d.add_argument("--json", action="store_true", help="emit the report as JSON")
    d.add_argument("--out")
    d.set_defaults(func=cmd_depth)

    w = sub.add_parser("sweep", help="degree/error sweep as CSV")
    w.add_argument("--family", required=True, help=", ".join(sorted(FAMILY_ALIASES)))
    w.add_argument("--param-grid", required=True, help="a..b (doubling) or comma list")
    w.add_argument("--delta-grid", required=True, help="comma list")
    w.add_argument("--out")
    w.add_argument("--workers", type=int, default=1)
    w.add_argument("--no-measure", action="store_true")
    w.set_defaults(func=cmd_sweep)
    return p


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except HamshallowError as exc:
        print(json.dumps(exc.to_dict()), file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(json.dumps({"error": "io", "message": str(exc)}), file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
