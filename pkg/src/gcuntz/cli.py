"""Command line interface.

    gcuntz analyze <file> [--order M] [--tolerance T] [--max-path-len L] [--format table|machine]
    gcuntz catalog [name]
    gcuntz verify <file>

``<file>`` may be ``-`` for stdin or ``catalog:<name>`` for a built-in entry.
Exit codes: 0 all checks pass, 1 a verification check failed, 2 input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import pathalg, series, spectral
from .catalog import catalog
from .documents import InputDocument, InputError, emit, parse_input
from .fusion import FusionDataError
from .groups import CharacterTableError
from .report import AnalysisReport, analyze, verify

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _load(source: str) -> InputDocument:
    if source.startswith("catalog:"):
        return catalog(source.split(":", 1)[1])
    if source == "-":
        return parse_input(sys.stdin.read())
    try:
        text = Path(source).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror}") from None
    return parse_input(text)


def _fmt(x) -> str:
    if x is None:
        return "none"
    if isinstance(x, float):
        return "infinite" if x == float("inf") else f"{x:.12g}"
    return str(x)


def _table(report: AnalysisReport) -> str:
    lines = [f"{report.input['name']} ({report.input['kind']})", ""]
    width = 18
    rows = [
        ("d(rho)", _fmt(report.d_rho)),
        ("classification", report.classification),
        ("nilpotency index", _fmt(report.nilpotency_index)),
        ("skeleton dim", _fmt(report.skeleton_dim)),
        ("KMS temperature", _fmt(report.kms_temperature)),
        ("reduced radius", _fmt(report.reduced_radius)),
        ("reduced opnorm", _fmt(report.reduced_opnorm)),
        ("decay rate", _fmt(report.decay_rate)),
    ]
    lines += [f"  {k:<{width}} {v}" for k, v in rows]
    lines.append("")
    lines.append("  quantum dimensions")
    lines += [f"    {k:<{width - 2}} {_fmt(v)}" for k, v in report.quantum_dims.items()]
    lines.append("")
    lines.append(f"  {'n':>3} {'dim h_n':>20} {'dim k_n':>14} {'S_n':>16}")
    sums = report.lemma41["partial_sums"]
    for n, h in enumerate(report.h_coeffs):
        k = report.k_coeffs[n - 1] if n else ""
        s = _fmt(sums[n - 1]) if 0 < n <= len(sums) else ""
        lines.append(f"  {n:>3} {h:>20} {k!s:>14} {s:>16}")
    lines.append("")
    lines.append(_checks_text(report.checks))
    return "\n".join(lines)


def _checks_text(checks) -> str:
    out = ["  verification"]
    for c in checks:
        out.append(f"    [{'pass' if c.passed else 'FAIL'}] {c.name:<28} residual={_fmt(c.residual)}  {c.detail}")
    return "\n".join(out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gcuntz", description="Skeleton, spectral and state invariants of fusion data.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full analysis report")
    p.add_argument("file")
    p.add_argument("--order", type=int, default=series.DEFAULT_ORDER)
    p.add_argument("--tolerance", type=float, default=spectral.DEFAULT_TOLERANCE)
    p.add_argument("--max-path-len", type=int, default=pathalg.MAX_PATH_LENGTH)
    p.add_argument("--format", choices=("table", "machine"), default="table")

    p = sub.add_parser("catalog", help="list built-in examples or print one as a document")
    p.add_argument("name", nargs="?")

    p = sub.add_parser("verify", help="run the verification checks only")
    p.add_argument("file")
    p.add_argument("--order", type=int, default=series.DEFAULT_ORDER)
    p.add_argument("--tolerance", type=float, default=spectral.DEFAULT_TOLERANCE)
    p.add_argument("--max-path-len", type=int, default=pathalg.MAX_PATH_LENGTH)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "catalog":
            if args.name is None:
                for name, desc in catalog():
                    print(f"{name:<14} {desc}")
            else:
                sys.stdout.write(emit(catalog(args.name)))
            return EXIT_OK
        if args.order < 1:
            raise InputError("--order must be at least 1")
        doc = _load(args.file)
        if args.command == "verify":
            checks = verify(doc, args.order, args.tolerance, args.max_path_len)
            print(_checks_text(checks))
            return EXIT_OK if all(c.passed for c in checks) else EXIT_FAIL
        report = analyze(doc, args.order, args.tolerance, args.max_path_len)
    except (InputError, FusionDataError, CharacterTableError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"input error: {msg}", file=sys.stderr)
        return EXIT_INPUT
    except pathalg.PathLimitError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    if args.format == "machine":
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print(_table(report))
    return EXIT_OK if report.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
