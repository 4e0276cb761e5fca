"""Command-line front end.

Subcommands: ``find``, ``witness``, ``bench``, ``selftest``. Exit codes are
0 for success / occurrences found, 1 for no occurrence or a failed check,
2 for usage and input errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Sequence

from duelsweep import oracle, report, selftest
from duelsweep.encoding import SCHEMES, Scheme, get_scheme
from duelsweep.search import match_all
from duelsweep.witness import is_valid_witness, preprocess

log = logging.getLogger("duelsweep")


class InputError(Exception):
    pass


def read_symbols(path: str, fmt: str) -> tuple:
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from e
    if fmt == "bytes":
        if data.endswith(b"\r\n"):
            data = data[:-2]
        elif data.endswith(b"\n"):
            data = data[:-1]
        return tuple(data)
    try:
        return tuple(int(tok) for tok in data.split())
    except ValueError as e:
        raise InputError(f"{path}: malformed integer input ({e})") from e


def make_scheme(args) -> Scheme:
    fmt = args.format or ("ints" if args.scer == "cartesian" else "bytes")
    if args.scer == "cartesian" and fmt != "ints":
        raise InputError("--scer cartesian needs --format ints")
    if args.constants is not None:
        if args.scer != "param":
            raise InputError("--constants is only valid with --scer param")
        if fmt != "bytes":
            raise InputError("--constants needs --format bytes")
    args.format = fmt
    constants = (args.constants or "").encode()
    return get_scheme(args.scer, constants)


def _emit(text: str) -> None:
    sys.stdout.write(text)


def cmd_find(args) -> int:
    scheme = make_scheme(args)
    pattern = read_symbols(args.pattern, args.format)
    text = read_symbols(args.text, args.format)
    if not pattern:
        raise InputError("pattern is empty")
    if len(pattern) > len(text):
        raise InputError(f"pattern longer than text ({len(pattern)} > {len(text)})")
    if args.engine == "naive":
        occ = oracle.naive_occurrences(text, pattern, scheme)
    else:
        occ = match_all(text, pattern, scheme)
    shift = 1 if args.one_based else 0
    occ = [x + shift for x in occ]
    if args.json:
        _emit(json.dumps({"occurrences": occ}) + "\n")
    else:
        _emit("".join(f"{x}\n" for x in occ))
    return 0 if occ else 1


def cmd_witness(args) -> int:
    scheme = make_scheme(args)
    pattern = read_symbols(args.pattern, args.format)
    if not pattern:
        raise InputError("pattern is empty")
    P = scheme.encode(pattern)
    W = preprocess(P)
    status = None
    if args.verify:
        periods = oracle.naive_periods(pattern, scheme) | {0}
        ok = set(W.zeros()) == periods and all(v == 0 or is_valid_witness(P, a, v) for a, v in enumerate(W.w))
        status = "PASS" if ok else "FAIL"
    if args.json:
        obj = {"m": W.m, "w": list(W.w)}
        if status:
            obj["verify"] = status
        _emit(json.dumps(obj) + "\n")
    else:
        _emit(W.to_lines())
        if status:
            print(f"verify: {status}", file=sys.stderr)
    return 1 if status == "FAIL" else 0


def _parse_sizes(s: str) -> list[int]:
    try:
        sizes = [int(v) for v in s.split(",") if v.strip()]
    except ValueError as e:
        raise InputError(f"bad --sweep list {s!r}") from e
    if not sizes or min(sizes) < 1:
        raise InputError("--sweep needs positive pattern lengths")
    return sizes


def cmd_bench(args) -> int:
    if args.m < 1 or (args.n is not None and args.n < 1):
        raise InputError("--m and --n must be positive")
    if args.constants is not None and args.scer != "param":
        raise InputError("--constants is only valid with --scer param")
    constants = (args.constants or "").encode()
    sizes = _parse_sizes(args.sweep) if args.sweep else [args.m]
    n_for = (lambda m: args.n) if (args.n is not None and not args.sweep) else (lambda m: None)
    records = [report.bench(args.scer, m, n_for(m), args.seed, args.alphabet, constants) for m in sizes]

    if args.json:
        _emit(json.dumps(records[0] if len(records) == 1 else records) + "\n")
    elif len(records) == 1:
        _emit("".join(f"{k}\t{records[0][k]}\n" for k in report.FIELDS))
    else:
        lines = ["\t".join(report.FIELDS)]
        lines += ["\t".join(str(r[k]) for k in report.FIELDS) for r in records]
        _emit("\n".join(lines) + "\n")
    if args.figure:
        report.plot_records(records, args.figure)
        print(f"wrote {args.figure}", file=sys.stderr)
    return 0


def cmd_selftest(args) -> int:
    schemes = SCHEMES if args.scer == "all" else (args.scer,)
    if args.constants is not None and args.scer != "param":
        raise InputError("--constants is only valid with --scer param")
    results = selftest.run(schemes, (args.constants or "").encode(), args.instances, args.max_m, args.seed)
    for r in results:
        _emit(r.line() + "\n")
    ok = all(r.passed for r in results)
    _emit(("PASS" if ok else "FAIL") + "\n")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="duelsweep", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, *, scer_all=False):
        choices = SCHEMES + (("all",) if scer_all else ())
        p.add_argument("--scer", choices=choices, default="all" if scer_all else "exact")
        p.add_argument("--constants", metavar="SYMBOLS",
                       help="byte symbols that are constants (param only); others are parameters")

    p = sub.add_parser("find", help="print all occurrences of a pattern")
    common(p)
    p.add_argument("--engine", choices=("duel", "naive"), default="duel")
    p.add_argument("--format", choices=("bytes", "ints"))
    p.add_argument("-p", "--pattern", required=True)
    p.add_argument("-t", "--text", required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--one-based", action="store_true")
    p.set_defaults(func=cmd_find)

    p = sub.add_parser("witness", help="dump the witness table of a pattern")
    common(p)
    p.add_argument("--format", choices=("bytes", "ints"))
    p.add_argument("-p", "--pattern", required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--verify", action="store_true", help="check the table against the brute-force oracle")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("bench", help="ledger report for a reproducible random instance")
    common(p)
    p.add_argument("--m", type=int, default=256)
    p.add_argument("--n", type=int, help="text length (default 2m-1)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alphabet", type=int, default=4)
    p.add_argument("--sweep", metavar="M1,M2,...", help="run one instance per pattern length")
    p.add_argument("--json", action="store_true")
    p.add_argument("--figure", metavar="PATH", help="also render a PNG of the report")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("selftest", help="randomized oracle and invariant checks")
    common(p, scer_all=True)
    p.add_argument("--instances", type=int, default=150)
    p.add_argument("--max-m", type=int, default=24)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_selftest)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except InputError as e:
        print(f"duelsweep: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
