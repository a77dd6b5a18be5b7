"""Command-line front end.

Exit codes: 0 success, 1 an identity failed (or a computation broke down),
2 usage or parameter error.  Rows are JSON lines unless ``--csv`` is given;
floats are written with 17 significant digits.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
from typing import Any, Iterable, Sequence

from . import __version__
from .algebra import algebra_kind, ground_lowering
from .coherent import (
    branch_of,
    eigen_residual,
    identity_diagonals,
    make_coherent,
    norm_check,
    radial_measure,
)
from .eqclass import parse_class_spec
from .errors import (
    CutoffExceeded,
    DomainError,
    HypolyError,
    ParameterOutOfRange,
    PoleError,
    TruncationInsufficient,
    UnsupportedClass,
)
from .polyalg import build_psi, three_term
from .report import CheckResult
from .specfun import build_psi_lm, eval_rep, norm, norm_ladder
from .suites import SUITES, run_suite

USAGE_ERRORS = (
    ParameterOutOfRange,
    CutoffExceeded,
    DomainError,
    UnsupportedClass,
    TruncationInsufficient,
    PoleError,
    IndexError,
    KeyError,
    ValueError,
)
TOL_ENV = "HYPOLY_TOL"


class UsageError(Exception):
    pass


def fmt(x: float) -> str:
    x = float(x)
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return "%.17g" % x


_MARK = "@@f@@"
_FLOAT_MARK = re.compile('"' + _MARK + '([^"]*)' + _MARK + '"')


def _mark(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return _MARK + fmt(obj) + _MARK
    if isinstance(obj, complex):
        return [_mark(obj.real), _mark(obj.imag)]
    if isinstance(obj, dict):
        return {k: _mark(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_mark(v) for v in obj]
    return _mark(float(obj))


def json_line(obj: Any) -> str:
    """``json.dumps`` with every float rendered as ``%.17g``."""
    text = json.dumps(_mark(obj), separators=(", ", ": "))
    return _FLOAT_MARK.sub(lambda m: m.group(1), text)


class Emitter:
    def __init__(self, as_csv: bool, out=None):
        self.as_csv = as_csv
        self.out = out or sys.stdout
        self._buf = io.StringIO()
        self._writer = csv.writer(self._buf, lineterminator="\n")
        self._header_done = False

    def row(self, record: dict[str, Any]):
        if not self.as_csv:
            print(json_line(record), file=self.out)
            return
        flat = {}
        for k, v in record.items():
            if isinstance(v, (list, tuple)):
                for i, x in enumerate(v):
                    flat[f"{k}{i}"] = x
            else:
                flat[k] = v
        if not self._header_done:
            self._writer.writerow(flat.keys())
            self._header_done = True
        self._writer.writerow(fmt(v) if isinstance(v, float) else v for v in flat.values())
        self.out.write(self._buf.getvalue())
        self._buf.seek(0)
        self._buf.truncate()


def _parse_floats(values: Sequence[str]) -> list[float]:
    out = []
    for v in values:
        out.extend(float(x) for x in v.split(",") if x.strip())
    return out


def _parse_complex(text: str) -> complex:
    parts = [p for p in text.split(",")]
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) != 2:
        raise UsageError(f"--z expects 're,im', got {text!r}")
    return complex(float(parts[0]), float(parts[1]))


# commands

def cmd_eval(args) -> int:
    cls = parse_class_spec(args.cls)
    rep = build_psi_lm(cls, args.l, args.m)
    emit = Emitter(args.csv)
    scale = 1.0 / norm(cls, args.l, args.m)
    for s in _parse_floats(args.s):
        v = float(eval_rep(cls, rep, s))
        emit.row({"s": s, "psi": v, "psi_normalized": v * scale})
    return 0


def cmd_tabulate(args) -> int:
    cls = parse_class_spec(args.cls)
    emit = Emitter(args.csv)
    top = cls.cutoff().count(args.lmax + 1)
    if args.what == "coeffs":
        for l in range(top):
            coeffs: list[Any] = [float(c) for c in build_psi(cls, l).coeffs]
            if args.csv:
                coeffs += [""] * (top - len(coeffs))  # rectangular table
            emit.row({"l": l, "c": coeffs})
    elif args.what == "eigenvalues":
        for l in range(top):
            emit.row({"l": l, "lambda": cls.lambda_l(l)})
    elif args.what == "norms":
        for l in range(top):
            base = norm(cls, l, 0)
            for m in range(l + 1):
                emit.row({"l": l, "m": m, "norm": norm(cls, l, m), "norm_ladder": norm_ladder(cls, l, m, base)})
    else:
        for l in range(1, top - 1):
            b, g, res = three_term(cls, l)
            emit.row({"l": l, "b": b, "g": g, "residual": res})
    return 0


def _tolerance_override() -> float | None:
    raw = os.environ.get(TOL_ENV, "").strip()
    if not raw:
        return None
    try:
        tol = float(raw)
    except ValueError as exc:
        raise UsageError(f"{TOL_ENV} must be a number, got {raw!r}") from exc
    if not tol > 0:
        raise UsageError(f"{TOL_ENV} must be positive")
    return tol


def _report(results: Iterable[CheckResult], as_json: bool, suite: str, spec: str) -> int:
    results = list(results)
    failed = [r for r in results if not r.passed]
    for r in results:
        if as_json:
            d = r.to_dict()
            d["suite"] = suite
            print(json_line(d))
        else:
            extra = f" worst at {r.worst}" if (r.worst and not r.passed) else ""
            print(r.line() + extra)
            for key, val in r.details.items():
                print(f"    {key}: {_short(val)}")
    summary = {"class": spec, "suite": suite, "checks": len(results), "failed": len(failed), "passed": not failed}
    print(json_line(summary) if as_json else f"{len(results) - len(failed)}/{len(results)} checks passed")
    return 1 if failed else 0


def _short(val: Any, limit: int = 8) -> str:
    if isinstance(val, (list, tuple)):
        items = ", ".join(fmt(v) if isinstance(v, float) else str(v) for v in val[:limit])
        return f"[{items}{', ...' if len(val) > limit else ''}]"
    return fmt(val) if isinstance(val, float) else str(val)


def cmd_verify(args) -> int:
    cls = parse_class_spec(args.cls)
    tol = _tolerance_override()
    results = run_suite(args.suite, cls, args.lmax)
    if tol is not None:
        results = [r if r.skipped else r.with_tolerance(tol) for r in results]
    return _report(results, args.json, args.suite, cls.spec)


def cmd_coherent(args) -> int:
    cls = parse_class_spec(args.cls)
    branch_of(cls)
    z = _parse_complex(args.z)
    state = make_coherent(cls, args.m, z, args.ntrunc)
    computed, expected = norm_check(state)
    record = {
        "class": cls.spec,
        "branch": state.branch.value,
        "m": args.m,
        "z": z,
        "ntrunc": args.ntrunc,
        "eigen_residual": eigen_residual(state),
        "norm": computed,
        "norm_expected": expected,
    }
    if args.resolution:
        diag = identity_diagonals(cls, args.m, args.resolution, args.measure)
        record["measure"] = radial_measure(cls, args.m, args.measure).description
        record["identity_diagonals"] = [float(x) for x in diag]
    print(json_line(record))
    return 0


def cmd_info(args) -> int:
    cls = parse_class_spec(args.cls)
    cut = cls.cutoff()
    record: dict[str, Any] = {
        "class": cls.spec,
        "kind": cls.kind.value,
        "alpha": cls.alpha,
        "beta": cls.beta,
        "interval": list(cls.interval),
        "cutoff": str(cut),
        "max_index": cut.max_index,
        "algebra": algebra_kind(cls).value,
    }
    try:
        record["coherent_branch"] = branch_of(cls).value
    except UnsupportedClass:
        record["coherent_branch"] = None
    if args.lminus_ground:
        rows = []
        for l in range(cut.count(args.lminus_ground + 1)):
            _, vanishes = ground_lowering(cls, l)
            rows.append({"l": l, "vanishes": vanishes})
        record["lminus_ground"] = rows
    print(json_line(record))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hypoly",
        description="Polynomials of hypergeometric type, their associated functions and ladder algebras.",
        epilog=f"Class specs are kind:alpha:beta with kind in one, s, 1-s2, s2-1, s2, s2+1. "
        f"{TOL_ENV} overrides every residual tolerance of verify.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="evaluate Psi_{l,m} and its normalised version")
    e.add_argument("cls", metavar="CLASS")
    e.add_argument("--l", type=int, required=True)
    e.add_argument("--m", type=int, default=0)
    e.add_argument("--s", nargs="+", required=True, help="points, space or comma separated")
    e.add_argument("--csv", action="store_true")
    e.set_defaults(func=cmd_eval)

    t = sub.add_parser("tabulate", help="coefficients, norms, eigenvalues or three-term coefficients")
    t.add_argument("cls", metavar="CLASS")
    t.add_argument("--lmax", type=int, default=6)
    t.add_argument("--what", choices=("coeffs", "norms", "eigenvalues", "recurrence"), default="coeffs")
    t.add_argument("--csv", action="store_true")
    t.set_defaults(func=cmd_tabulate)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("cls", metavar="CLASS")
    v.add_argument("--suite", choices=(*SUITES, "all"), default="all")
    v.add_argument("--lmax", type=int, default=None, help="largest l (default: each suite's own range)")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("coherent", help="coherent-state checks")
    c.add_argument("cls", metavar="CLASS")
    c.add_argument("--m", type=int, default=0)
    c.add_argument("--z", default="1,0", help="re,im")
    c.add_argument("--ntrunc", type=int, default=80)
    c.add_argument("--resolution", type=int, default=0, metavar="N",
                   help="also compute the first N diagonal entries of the resolution of the identity")
    c.add_argument("--measure", choices=("corrected", "literal"), default="corrected")
    c.set_defaults(func=cmd_coherent)

    i = sub.add_parser("info", help="interval, cutoff and algebra type of a class")
    i.add_argument("cls", metavar="CLASS")
    i.add_argument("--lminus-ground", type=int, default=0, metavar="LMAX",
                   help="report whether L_- |l,0) vanishes for l <= LMAX")
    i.set_defaults(func=cmd_info)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "verify" and args.lmax is not None and args.lmax < 0:
            raise UsageError("--lmax must be non-negative")
        if getattr(args, "ntrunc", 2) < 2:
            raise UsageError("--ntrunc must be at least 2")
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except USAGE_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except HypolyError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
