"""Command-line front door: ``qeuclid verify | eval | report``.

Exit codes: 0 when every mandatory check passes, 1 on a mandatory failure,
2 on usage errors (unknown suite, malformed config, unparsable input).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from .checks import SUITES, CheckResult, Config, ConfigError, parse_config, run_suites
from .text import ParseError, parse_cpoly, render_cpoly

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "qeuclid verification report",
    "type": "object",
    "required": ["format", "suites", "checks", "summary"],
    "properties": {
        "format": {"const": "qeuclid-report/1"},
        "suites": {"type": "array", "items": {"type": "string"}},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["suite", "check-id", "paper-anchor", "status", "residual", "runtime-ms"],
                "properties": {
                    "suite": {"type": "string"},
                    "check-id": {"type": "string"},
                    "paper-anchor": {"type": "string"},
                    "status": {"enum": ["pass", "fail", "finding"]},
                    "residual": {"type": ["string", "null"]},
                    "runtime-ms": {"type": ["integer", "null"]},
                    "mandatory": {"type": "boolean"},
                    "detail": {"type": "string"},
                },
            },
        },
        "summary": {
            "type": "object",
            "required": ["status", "mandatory-failures", "findings"],
            "properties": {
                "status": {"enum": ["pass", "fail"]},
                "mandatory-failures": {"type": "integer"},
                "findings": {"type": "integer"},
            },
        },
    },
}

SUITE_NAMES = tuple(SUITES) + ("all",)


class UsageError(Exception):
    """Bad command-line input; reported with exit code 2."""


def build_report(suites: Sequence[str], results: Sequence[CheckResult], timing: bool = True) -> dict:
    checks = [r.to_json(timing) for r in results]
    failures = sum(1 for r in results if r.status == "fail")
    findings = sum(1 for r in results if r.status == "finding")
    return {
        "format": "qeuclid-report/1",
        "suites": list(suites),
        "checks": checks,
        "summary": {"status": "fail" if failures else "pass", "mandatory-failures": failures,
                    "findings": findings},
    }


def _load_config(path: Optional[str]) -> Config:
    if path is None:
        return Config()
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror}") from exc
    try:
        return parse_config(text)
    except ConfigError as exc:
        raise UsageError(f"malformed config {path}: {exc}") from exc


def _summary_line(r: CheckResult) -> str:
    extra = f" ({r.detail})" if r.detail else ""
    return f"{r.status.upper():8} {r.check_id}{extra}"


def cmd_verify(args) -> int:
    cfg = _load_config(args.config)
    if args.deg is not None:
        cfg.deg = args.deg
    if args.suite == "all":
        names = list(cfg.suites) or list(SUITES)
        unknown = [n for n in names if n not in SUITES]
        if unknown:
            raise UsageError(f"unknown suite in config: {', '.join(unknown)}")
    else:
        names = [args.suite]
    results = run_suites(names, cfg, workers=args.workers)
    report = build_report(names, results, timing=not args.no_timing)
    text = json.dumps(report, indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n")
    if not args.quiet:
        print(text)
    for r in results:
        print(_summary_line(r), file=sys.stderr)
    return EXIT_FAIL if report["summary"]["status"] == "fail" else EXIT_OK


def _parse(text: str):
    try:
        return parse_cpoly(text)
    except ParseError as exc:
        raise UsageError(str(exc)) from exc


def cmd_eval(args) -> int:
    from . import braided_maps as bm
    from . import derivative_actions as da
    from .qexponential import exp_px, exp_xp
    from .star_product import star

    kind, operands = args.kind, args.operands

    def need(n: int) -> List[str]:
        if len(operands) != n:
            raise UsageError(f"eval {kind} expects {n} operand(s), got {len(operands)}")
        return operands

    if kind == "star":
        a, b = need(2)
        out = star(_parse(a), _parse(b))
    elif kind == "translate":
        (a,) = need(1)
        out = (bm.translate_bar if args.bar else bm.translate)(_parse(a))
    elif kind == "invert":
        (a,) = need(1)
        out = (bm.invert_bar if args.bar else bm.invert)(_parse(a))
    elif kind == "dleft":
        axis, a = need(2)
        if axis not in ("+", "3", "-"):
            raise UsageError(f"axis must be +, 3 or -, got {axis!r}")
        action = da.d_left_bar if args.bar else da.d_left
        out = action(axis, _parse(a), upper=args.upper)
    elif kind == "exp":
        need(0)
        if args.cap is None or args.cap < 0:
            raise UsageError("eval exp needs --cap N with N >= 0")
        out = (exp_xp if args.which == "xp" else exp_px)(args.cap).poly
    else:  # argparse restricts the choices
        raise UsageError(f"unknown eval kind {kind!r}")
    if args.at is not None:
        from fractions import Fraction

        try:
            q0 = Fraction(args.at)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad value for --at: {args.at!r}") from exc
        for e, c in sorted(out.terms.items()):
            print(f"{e}: {c.evaluate(q0)}")
    else:
        print(render_cpoly(out))
    return EXIT_OK


def cmd_report(args) -> int:
    src = sys.stdin.read() if args.path == "-" else _read(args.path)
    try:
        doc = json.loads(src)
    except json.JSONDecodeError as exc:
        raise UsageError(f"report is not JSON: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("format") != "qeuclid-report/1":
        raise UsageError("not a qeuclid report")
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        for c in doc.get("checks", []):
            print(f"{c['status'].upper():8} {c['check-id']}  [{c['paper-anchor']}]  residual={c['residual']}")
        s = doc.get("summary", {})
        print(f"summary: {s.get('status')} ({s.get('mandatory-failures')} failures, {s.get('findings')} findings)")
    return EXIT_FAIL if doc.get("summary", {}).get("status") == "fail" else EXIT_OK


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qeuclid", description="q-deformed Euclidean space toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification suites and print a JSON report")
    v.add_argument("suite", choices=SUITE_NAMES)
    v.add_argument("--config", help="flat key=value configuration file")
    v.add_argument("--deg", type=int, help="degree bound for the star-product oracle")
    v.add_argument("--out", help="also write the report to this file")
    v.add_argument("--workers", type=int, default=4)
    v.add_argument("--no-timing", action="store_true", help="omit runtimes for byte-stable reports")
    v.add_argument("--quiet", action="store_true", help="do not print the report to stdout")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("eval", help="evaluate an expression exactly")
    e.add_argument("kind", choices=("star", "translate", "invert", "dleft", "exp"))
    e.add_argument("operands", nargs="*")
    e.add_argument("--bar", action="store_true", help="use the hatted variant")
    e.add_argument("--upper", action="store_true", help="contravariant derivative index")
    e.add_argument("--cap", type=int)
    e.add_argument("--which", choices=("xp", "px"), default="xp")
    e.add_argument("--at", help="print coefficients evaluated at this rational q")
    e.set_defaults(func=cmd_eval)

    r = sub.add_parser("report", help="render a saved verification report")
    r.add_argument("path", help="report file, or - for stdin")
    r.add_argument("--format", choices=("json", "text"), default="json")
    r.set_defaults(func=cmd_report)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse usage errors exit with 2 already
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"qeuclid: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
