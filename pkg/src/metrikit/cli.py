"""metrikit command line.

Exit status: 0 success, 1 input fails the distance axioms (violations are
printed), 2 usage, I/O or format errors.  Diagnostics are one line on stderr:
``metrikit: error: <category>: <message>``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .connectivity import components, critical_epsilon
from .constructions import chain_metric, chain_ultrametric, find_snowflake_exponent, snowflake
from .core import CantorSpec, cantor_points, cloud_to_space, validate_space
from .hausdorff import EXACT_THRESHOLD, ContentQuery, alpha_sweep, content
from .io import FormatError, dumps, fmt, format_cloud_json, format_matrix_csv, read_space
from .lipschitz import FiniteMap, RealFunction, function_calculus, lipschitz_constant
from .norms import (
    format_exponent,
    fuzz_vectors,
    parse_exponent,
    verify_comparisons,
    verify_norm_axioms,
    verify_quasinorm_p,
)
from .properties import classify


class CliError(Exception):
    def __init__(self, category: str, message: str, status: int = 2):
        super().__init__(message)
        self.category = category
        self.status = status


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError("usage", message)


def exact_number(text: str) -> float:
    """'1/3', '0.25', '2' -> float, going through Fraction so rationals are exact."""
    try:
        return float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def exponent(text: str) -> float:
    try:
        return parse_exponent(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a positive exponent: {text!r}") from None


def _jsonable(obj):
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return obj
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.generic):
        return _jsonable(obj.item())
    return obj


def _emit(text: str, path) -> None:
    if path is None or str(path) == "-":
        sys.stdout.write(text)
    else:
        try:
            Path(path).write_text(text)
        except OSError as exc:
            raise CliError("io", f"cannot write {path}: {exc.strerror}") from None


def _load(path, tol):
    try:
        return read_space(path, tol)
    except OSError as exc:
        raise CliError("io", f"cannot read {path}: {exc.strerror}") from None
    except FormatError as exc:
        raise CliError("format", f"{path}: {exc}") from None


def _load_valid(path, tol):
    space, cloud = _load(path, tol)
    bad = validate_space(space)
    if bad:
        for v in bad:
            print(f"violation: {v}", file=sys.stdout)
        raise CliError("validation", f"{path}: {len(bad)} axiom violation(s)", 1)
    return space, cloud


def _read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise CliError("io", f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise CliError("format", f"{path}: bad JSON: {exc.msg}") from None


def _subset(path, space):
    if path is None:
        return None
    obj = _read_json(path)
    items = obj.get("subset") if isinstance(obj, dict) else obj
    if not isinstance(items, list) or not items:
        raise CliError("format", f'{path}: expected a nonempty list or {{"subset": [...]}}')
    pos = {lab: i for i, lab in enumerate(space.labels)}
    out = []
    for it in items:
        if isinstance(it, int) and not isinstance(it, bool):
            if not 0 <= it < space.n:
                raise CliError("format", f"{path}: index {it} out of range")
            out.append(it)
        elif isinstance(it, str) and it in pos:
            out.append(pos[it])
        else:
            raise CliError("format", f"{path}: unknown point {it!r}")
    return sorted(set(out))


# ---------------------------------------------------------------- commands


def cmd_check(args):
    space, _ = _load(args.input, args.tolerance)
    bad = validate_space(space)
    out = {
        "n": space.n,
        "kind": space.kind,
        "valid": not bad,
        "violations": [str(v) for v in bad],
    }
    if not bad:
        out["report"] = classify(space).to_dict()
    _emit(dumps(_jsonable(out)), args.output)
    return 1 if bad else 0


def _closure_cmd(args, build):
    space, _ = _load_valid(args.input, args.tolerance)
    closed = build(space)
    _emit(format_matrix_csv(closed.space), args.output)
    wpath = args.witnesses
    if wpath is None and args.output not in (None, "-"):
        wpath = str(args.output) + ".witnesses.json"
    if wpath is not None:
        _emit(dumps(_jsonable({"mode": closed.mode, "witnesses": closed.witness_table()})), wpath)
    return 0


def cmd_metrize(args):
    return _closure_cmd(args, chain_metric)


def cmd_ultrametrize(args):
    return _closure_cmd(args, chain_ultrametric)


def cmd_snowflake(args):
    space, _ = _load_valid(args.input, args.tolerance)
    _emit(format_matrix_csv(snowflake(space, args.q)), args.output)
    return 0


def cmd_ms_exponent(args):
    space, _ = _load_valid(args.input, args.tolerance)
    if args.c_target < 1:
        raise CliError("usage", "--c-target must be >= 1")
    try:
        res = find_snowflake_exponent(space, args.c_target)
    except ValueError as exc:
        raise CliError("validation", str(exc), 1) from None
    out = {"c_target": args.c_target, **res.to_dict()}
    if not res.feasible:
        out["message"] = "infeasible at this c_target"
    _emit(dumps(_jsonable(out)), args.output)
    return 0


def cmd_norms(args):
    p, q = args.p, args.q
    if not p < q:
        raise CliError("usage", "--p must be smaller than --q")
    if args.samples:
        obj = _read_json(args.samples)
        rows = obj.get("samples", obj.get("points")) if isinstance(obj, dict) else obj
        try:
            xs = np.array(rows, dtype=np.float64)
        except (TypeError, ValueError):
            raise CliError("format", f"{args.samples}: samples must be equal-length number arrays") from None
        if xs.ndim != 2 or xs.size == 0:
            raise CliError("format", f"{args.samples}: samples must be a nonempty 2-d array")
    else:
        xs = fuzz_vectors(args.count, args.dim, args.seed)
        xs = np.vstack([xs, np.eye(args.dim), np.ones((1, args.dim))])
    lines = [f"p={format_exponent(p)} q={format_exponent(q)} samples={xs.shape[0]} dim={xs.shape[1]}"]
    lines.append("check\tviolations\tworst_slack")
    failed = False
    for row in verify_comparisons(p, q, xs):
        lines.append(f"{row.name}\t{row.violations}\t{fmt(row.worst_slack)}")
        failed |= row.violations > 0
    for label, e in (("p", p), ("q", q)):
        v = verify_norm_axioms(e, xs)
        note = "" if v.passed else f"\t{v.counterexample['axiom']}"
        lines.append(f"norm_axioms[{label}]\t{'pass' if v.passed else 'fail'}{note}")
        if e < 1:
            qv = verify_quasinorm_p(e, xs, cross_check=xs.shape[0] <= 400)
            lines.append(f"pth_power_triangle[{label}]\t{'pass' if qv.passed else 'fail'}")
            failed |= not qv.passed
        else:
            failed |= not v.passed
    _emit("\n".join(lines) + "\n", args.output)
    return 1 if failed else 0


def _space_from_csv(path, tol):
    space, _ = _load_valid(path, tol)
    return space


def _values(path, space):
    obj = _read_json(path)
    vals = obj.get("values") if isinstance(obj, dict) else obj
    try:
        return RealFunction(space, vals)
    except (TypeError, ValueError) as exc:
        raise CliError("format", f"{path}: {exc}") from None


def cmd_lipschitz(args):
    dom = _space_from_csv(args.domain, args.tolerance)
    cod = _space_from_csv(args.codomain, args.tolerance)
    obj = _read_json(args.map)
    assignment = obj.get("assignment") if isinstance(obj, dict) else None
    if not isinstance(assignment, list):
        raise CliError("format", f'{args.map}: expected {{"assignment": [...]}}')
    try:
        fmap = FiniteMap(dom, cod, assignment)
    except (TypeError, ValueError) as exc:
        raise CliError("format", f"{args.map}: {exc}") from None
    out = lipschitz_constant(fmap).to_dict()
    if args.f1:
        f1 = _values(args.f1, dom)
        f2 = _values(args.f2, dom) if args.f2 else RealFunction(dom, np.zeros(dom.n))
        try:
            rows = function_calculus(f1, f2, args.t)
        except ValueError as exc:
            raise CliError("validation", str(exc), 1) from None
        out["calculus"] = [
            {"rule": r.name, "measured": r.measured, "bound": r.bound, "holds": r.holds} for r in rows
        ]
    _emit(dumps(_jsonable(out)), args.output)
    return 0


def cmd_components(args):
    space, _ = _load_valid(args.input, args.tolerance)
    sub = _subset(args.subset, space)
    dec = components(space, sub, args.epsilon)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["index", "label", "component"])
    for block in dec.components:
        for i in block:
            w.writerow([i, space.labels[i], block[0]])
    _emit(buf.getvalue(), args.output)
    return 0


def cmd_critical_epsilon(args):
    space, _ = _load_valid(args.input, args.tolerance)
    res = critical_epsilon(space, _subset(args.subset, space))
    _emit(dumps(_jsonable(res.to_dict(space.labels))), args.output)
    return 0


def _sweep_grid(text):
    try:
        a0, a1, step = (exact_number(t) for t in text.split(":"))
    except (ValueError, argparse.ArgumentTypeError):
        raise CliError("usage", f"--sweep expects a0:a1:step, got {text!r}") from None
    if not (a0 > 0 and a1 >= a0 and step > 0):
        raise CliError("usage", "--sweep needs 0 < a0 <= a1 and step > 0")
    count = int(math.floor((a1 - a0) / step + 1e-9)) + 1
    return [a0 + k * step for k in range(count)]


def cmd_content(args):
    space, cloud = _load_valid(args.input, args.tolerance)
    sub = _subset(args.subset, space)
    if args.delta < 0:
        raise CliError("usage", "--delta must be nonnegative")
    if args.sweep:
        rows = alpha_sweep(space, sub, args.delta, _sweep_grid(args.sweep), args.exact_threshold, cloud)
        lines = ["alpha,value,exact"] + [f"{fmt(a)},{fmt(v)},{str(e).lower()}" for a, v, e in rows]
        _emit("\n".join(lines) + "\n", args.output)
        return 0
    if args.alpha is None:
        raise CliError("usage", "content needs --alpha or --sweep")
    res = content(space, ContentQuery(args.alpha, args.delta, None if sub is None else tuple(sub)), args.exact_threshold, cloud)
    out = {"alpha": args.alpha, "delta": args.delta, **res.to_dict(space.labels)}
    out.pop("candidates", None)
    _emit(dumps(_jsonable(out)), args.output)
    return 0


def cmd_cantor(args):
    if args.ratios:
        ratios = [Fraction(r.strip()) for r in args.ratios.split(",") if r.strip()]
        level = len(ratios) if args.level is None else args.level
        if len(ratios) != level:
            raise CliError("usage", f"--ratios has {len(ratios)} entries for level {level}")
    else:
        if args.level is None:
            raise CliError("usage", "cantor needs --level")
        level = args.level
        ratios = [args.ratio] * level
    try:
        spec = CantorSpec(level, tuple(ratios))
    except ValueError as exc:
        raise CliError("usage", str(exc)) from None
    cloud = cantor_points(spec)
    if args.points:
        _emit(format_cloud_json(cloud), args.output)
        return 0
    labels = [fmt(x) for x in cloud.points[:, 0]]
    _emit(format_matrix_csv(cloud_to_space(cloud, labels)), args.output)
    return 0


def _fraction(text):
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a fraction: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="metrikit", description="Analyze finite distance spaces.")
    parser.add_argument("--version", action="version", version=f"metrikit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name, func, help_, needs_input=True):
        p = sub.add_parser(name, help=help_)
        if needs_input:
            p.add_argument("input", help="CSV distance matrix or JSON point cloud")
        p.add_argument("-o", "--output", help="output path (default stdout)")
        p.add_argument("--tolerance", type=float, default=None, help="comparison tolerance (default 1e-12)")
        p.set_defaults(func=func)
        return p

    command("check", cmd_check, "validate and classify a space")
    for name, func, what in (("metrize", cmd_metrize, "chain metric"), ("ultrametrize", cmd_ultrametrize, "chain ultrametric")):
        p = command(name, func, f"write the induced {what} as CSV")
        p.add_argument("--witnesses", help="JSON witness table path")
    p = command("snowflake", cmd_snowflake, "raise every distance to the power q")
    p.add_argument("--q", type=exponent, required=True)
    p = command("ms-exponent", cmd_ms_exponent, "largest a with d**a almost a metric at a target constant")
    p.add_argument("--c-target", type=exact_number, required=True)

    p = command("norms", cmd_norms, "check p-norm inequalities on samples", needs_input=False)
    p.add_argument("--p", type=exponent, required=True)
    p.add_argument("--q", type=exponent, required=True)
    p.add_argument("--samples", help='JSON {"samples": [[...], ...]}; fuzzed when absent')
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)

    p = command("lipschitz", cmd_lipschitz, "Lipschitz constant of a map", needs_input=False)
    p.add_argument("--domain", required=True)
    p.add_argument("--codomain", required=True)
    p.add_argument("--map", required=True, help='JSON {"assignment": [...]}')
    p.add_argument("--f1", help='JSON {"values": [...]} on the domain')
    p.add_argument("--f2", help='JSON {"values": [...]} on the domain')
    p.add_argument("--t", type=exact_number, default=-2.5, help="scalar for the t*f1 rule")

    p = command("components", cmd_components, "eps-connected components as CSV")
    p.add_argument("--epsilon", type=exact_number, required=True)
    p.add_argument("--subset")
    p = command("critical-epsilon", cmd_critical_epsilon, "least eps making the set eps-connected")
    p.add_argument("--subset")

    p = command("content", cmd_content, "Hausdorff content with a resolution floor")
    p.add_argument("--alpha", type=exact_number)
    p.add_argument("--delta", type=exact_number, default=0.0)
    p.add_argument("--subset")
    p.add_argument("--sweep", help="a0:a1:step, emits CSV alpha,value,exact")
    p.add_argument("--exact-threshold", type=int, default=EXACT_THRESHOLD)

    p = command("cantor", cmd_cantor, "Cantor-stage endpoints as a distance matrix", needs_input=False)
    p.add_argument("--level", type=int)
    p.add_argument("--ratio", type=_fraction, default=Fraction(1, 3))
    p.add_argument("--ratios", help="comma-separated per-stage ratios")
    p.add_argument("--points", action="store_true", help="emit the JSON point cloud instead")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.tolerance is not None and not args.tolerance >= 0:
            raise CliError("usage", "--tolerance must be nonnegative")
        return args.func(args)
    except CliError as exc:
        print(f"metrikit: error: {exc.category}: {exc}", file=sys.stderr)
        return exc.status
    except (ValueError, IndexError) as exc:
        print(f"metrikit: error: input: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
