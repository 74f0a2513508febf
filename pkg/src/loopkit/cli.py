"""Command line entry point: ``loopkit <subcommand> ...``.

Element labels on input (``--set``) and output follow the ``base`` of the
loop file.  Exit status: 0 success, 1 counterexample or negative answer,
2 usage, syntax or table-format error.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .core import LoopTable
from .decomp import decompose
from .errors import NotASubloop, NotNormal, PreconditionViolated, TableError
from .identity import CATALOG, IdentitySyntaxError, check, format_term, parse
from .isostrophe import principal_isostrophe
from .loopfile import ParseError, format_loop, load_loop
from .search import SearchError, SearchSpec, enumerate_loops, find_one, parse_spec
from .variety import profile, profile_json, render_profile
from .verify import build_catalog, parse_suites, verify_theorems

OK, NEGATIVE, USAGE = 0, 1, 2

log = logging.getLogger("loopkit")


class UsageError(Exception):
    pass


def _labels(q: LoopTable, elements) -> str:
    return "{" + ",".join(str(x + q.base) for x in elements) + "}"


def _parse_set(q: LoopTable, text: str) -> tuple:
    try:
        items = [int(tok) - q.base for tok in text.replace(" ", "").split(",") if tok]
    except ValueError:
        raise UsageError(f"--set expects comma-separated integers, got {text!r}") from None
    if any(not 0 <= x < q.n for x in items):
        raise UsageError(f"--set entries must lie in {q.base}..{q.base + q.n - 1}")
    return tuple(sorted(set(items)))


def _assignment(q: LoopTable, a: dict) -> str:
    return ", ".join(f"{k}={v + q.base}" for k, v in a.items())


# -- subcommands ----------------------------------------------------------------

def cmd_validate(args):
    q = load_loop(args.file)
    kind = "group" if q.is_associative() else "loop"
    print(f"ok: {kind} of order {q.n}")
    return OK


def cmd_profile(args):
    q = load_loop(args.file)
    p = profile(q)
    if args.json:
        print(profile_json(p))
    else:
        # sets in file labels so they can be read against the table
        text = render_profile(p)
        if q.base:
            lines = []
            for line in text.splitlines():
                key, _, value = line.partition(": ")
                if value.startswith("{"):
                    value = _labels(q, getattr(p, key))
                lines.append(f"{key}: {value}")
            text = "\n".join(lines) + "\n"
        sys.stdout.write(text)
    return OK


def cmd_nuclei(args):
    q = load_loop(args.file)
    for key, value in q.nuclei()._asdict().items():
        print(f"{key}: {_labels(q, value)}")
    print(f"commutant: {_labels(q, q.commutant)}")
    print(f"center: {_labels(q, q.center)}")
    return OK


def cmd_normal(args):
    q = load_loop(args.file)
    s = _parse_set(q, args.set)
    try:
        verdict = q.is_normal(s)
    except NotASubloop:
        print(f"not a subloop: {_labels(q, s)}")
        return NEGATIVE
    if verdict:
        print(f"normal: {_labels(q, s)}")
        return OK
    op, a, b = verdict.witness
    if op == "overlapping cosets":
        print(f"not normal: cosets of {a + q.base} and {b + q.base} overlap")
    else:
        print(f"not normal: the class of {a + q.base} {op} {b + q.base} is not well defined")
    return NEGATIVE


def cmd_isostrophe(args):
    q = load_loop(args.file)
    sys.stdout.write(format_loop(principal_isostrophe(q, args.side), q.base))
    return OK


def cmd_quotient(args):
    q = load_loop(args.file)
    s = _parse_set(q, args.set)
    try:
        quo, proj = q.quotient(s)
    except NotASubloop:
        print(f"not a subloop: {_labels(q, s)}")
        return NEGATIVE
    except NotNormal as exc:
        print(f"not normal: {exc}")
        return NEGATIVE
    sys.stdout.write(format_loop(quo, q.base))
    print("projection: " + " ".join(f"{x + q.base}->{c + q.base}" for x, c in enumerate(proj.tolist())))
    return OK


def cmd_decompose(args):
    q = load_loop(args.file)
    try:
        d = decompose(q)
    except PreconditionViolated as exc:
        print(f"precondition failed: {exc.reason}")
        return NEGATIVE
    print(f"E: {_labels(q, d.E)}")
    print(f"O: {_labels(q, d.O)}")
    print("layers: " + " ".join(_labels(q, layer) for layer in d.E_layers))
    print("pairing (e, o) -> e*o:")
    for _, e, o, a in d.pairing():
        print(f"  ({e + q.base}, {o + q.base}) -> {a + q.base}")
    return OK


def cmd_check(args):
    q = load_loop(args.file)
    if args.name:
        if args.name not in CATALOG:
            raise UsageError(f"unknown identity name {args.name!r}; known: {', '.join(CATALOG)}")
        ident = CATALOG[args.name]
    else:
        ident = parse(args.identity)
    r = check(q, ident)
    print(f"identity: {format_term(ident.lhs)} = {format_term(ident.rhs)}")
    if r.holds:
        print("holds")
        return OK
    if r.undefined_at is not None:
        print(f"fails: two-sided inverse undefined at {_assignment(q, r.undefined_at)}")
    else:
        print(f"fails at {_assignment(q, r.counterexample)}")
    return NEGATIVE


def cmd_search(args):
    with open(args.specfile, encoding="utf-8") as fh:
        spec = parse_spec(fh.read())
    try:
        q, stats = find_one(spec)
    except SearchError as exc:
        print(f"no model: {exc}")
        print(f"stats: {exc.stats.summary()}", file=sys.stderr)
        return NEGATIVE
    sys.stdout.write(format_loop(q, args.base))
    print(f"stats: {stats.summary()}", file=sys.stderr)
    return OK


def cmd_enumerate(args):
    spec = SearchSpec(args.order, required=list(args.require), forbidden=list(args.forbid))
    count = 0
    for q in enumerate_loops(spec, dedup=args.dedup, workers=args.workers):
        count += 1
        if not args.count:
            sys.stdout.write(format_loop(q, args.base) + "\n")
    print(f"count: {count}")
    return OK


def cmd_verify(args):
    suites = parse_suites(args.suite)
    entries = build_catalog(args.max_order, args.require)
    report = verify_theorems(entries, suites, workers=args.workers)
    out = report.to_json() + "\n" if args.json else report.to_text()
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    print(f"wall time: {report.seconds:.2f}s", file=sys.stderr)
    return OK if report.ok else NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="loopkit", description="Finite loop workbench.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_file(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file")
        p.set_defaults(func=fn)
        return p

    with_file("validate", cmd_validate, "check that a file holds a loop table")
    p = with_file("profile", cmd_profile, "print the property profile")
    p.add_argument("--json", action="store_true")
    with_file("nuclei", cmd_nuclei, "print nuclei, commutant and center")
    p = with_file("normal", cmd_normal, "test whether a subset is a normal subloop")
    p.add_argument("--set", required=True, help="comma-separated elements in file labels")
    p = with_file("isostrophe", cmd_isostrophe, "print a principal isostrophe")
    p.add_argument("--side", choices=("left", "right"), default="right")
    p = with_file("quotient", cmd_quotient, "print the quotient by a normal subloop")
    p.add_argument("--set", required=True)
    with_file("decompose", cmd_decompose, "split as E x O")
    p = with_file("check", cmd_check, "check an identity")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--identity", help='identity text, e.g. "(x*y)*z = x*(y*z)"')
    g.add_argument("--name", help="catalog identity name")

    p = sub.add_parser("search", help="find one loop meeting a spec file")
    p.add_argument("specfile")
    p.add_argument("--base", type=int, choices=(0, 1), default=0)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("enumerate", help="list all normalized loops of an order")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--require", action="append", default=[], help="catalog name or identity text")
    p.add_argument("--forbid", action="append", default=[])
    p.add_argument("--dedup", choices=("none", "iso"), default="none")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--count", action="store_true", help="print only the count")
    p.add_argument("--base", type=int, choices=(0, 1), default=0)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="run theorem suites over fixtures and enumerated loops")
    p.add_argument("--suite", default="S1..S8", help='"S1..S8", "S2,S5" or "all"')
    p.add_argument("--max-order", type=int, default=5)
    p.add_argument("--require", action="append", default=[])
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.add_argument("--output")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, ParseError, IdentitySyntaxError, TableError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
