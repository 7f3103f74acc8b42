"""Command-line entry point: ``dsq <verb> ...``."""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import __version__
from .algebra.checks import InvalidStructureError, check_disingquandle, check_g_family, check_quandle, induced_quandle
from .algebra.io import ParseError, format_gfamily, format_structure, load
from .algebra.search import enumerate_disingquandles, search_affine
from .algebra.tables import GFamily, StructureError
from .coloring import extract_constraints, fundamental_presentation, solve
from .constructors import FAMILY_PARAMS, FamilySpec, build_family
from .diagram import DiagramError, iter_link_files, parse_diagram, validate_diagram
from .report import count_chart, count_table, result_block

EXIT_OK, EXIT_INVALID, EXIT_IO, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _common(top: bool) -> argparse.ArgumentParser:
    # global flags are accepted before or after the verb; the verb-level copy
    # must not reset a value given before the verb
    d = (lambda v: v) if top else (lambda v: argparse.SUPPRESS)
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--jobs", type=int, default=d(None), help="worker processes (default: all cores)")
    p.add_argument("--quiet", action="store_true", default=d(False), help="suppress the version banner")
    p.add_argument("--strict-rotation", action="store_true", default=d(False),
                   help="also demand the quarter-turn vertex identities")
    p.add_argument("--strict-pair-map", "--strict-223", dest="strict_pair_map", action="store_true",
                   default=d(False), help="also demand the literal pair-map vertex identity")
    p.add_argument("--strict-gfam", action="store_true", default=d(False),
                   help="G-families: literal identity-element axiom")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common(top=False)
    parser = _Parser(prog="dsq", description="Disingquandles and coloring invariants of dichromatic singular links.",
                     parents=[_common(top=True)])
    parser.add_argument("--version", action="version", version=f"dsq {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("check-structure", parents=[common], help="check a structure or G-family file")
    p.add_argument("file")
    p.add_argument("--exhaustive", action="store_true", help="report every violated instance")

    p = sub.add_parser("check-link", parents=[common], help="validate a link file")
    p.add_argument("file")

    p = sub.add_parser("build", parents=[common], help="emit a named structure")
    p.add_argument("family", choices=sorted(FAMILY_PARAMS))
    for key in ("n", "m", "B", "p", "c"):
        p.add_argument(f"--{key}", type=int)
    p.add_argument("--group", help="Z<m> or S<k>")
    p.add_argument("--quandle", help="dihedral<n> or tetrahedral")
    p.add_argument("-o", "--output", help="write here instead of stdout")

    for verb, helptext in (("count", "count colorings"), ("color", "count or list colorings")):
        p = sub.add_parser(verb, parents=[common], help=helptext)
        p.add_argument("--structure", required=True)
        p.add_argument("--link", required=True)
        p.add_argument("--list", action="store_true", help="list every coloring")

    p = sub.add_parser("present", parents=[common], help="fundamental presentation of a link")
    p.add_argument("--link", required=True)
    p.add_argument("--simplify", action="store_true")

    p = sub.add_parser("search", parents=[common], help="parameter search over an affine family")
    p.add_argument("kind", choices=["affine"])
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("--family", choices=["B", "m"], required=True)

    p = sub.add_parser("enumerate", parents=[common], help="all disingquandles of a small order")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--up-to-iso", action="store_true")
    p.add_argument("--limit", type=int, default=4, help="largest order accepted")

    p = sub.add_parser("corpus", parents=[common], help="count every link in a directory")
    p.add_argument("--structure", required=True)
    p.add_argument("--dir", required=True)
    p.add_argument("--figure", help="also save a bar chart of the counts")
    p.add_argument("--kv", action="store_true", help="key=value blocks instead of the table")
    return parser


def _flags(args) -> dict:
    return dict(strict_rotation=args.strict_rotation, strict_pair_map=args.strict_pair_map)


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _load_structure(path: str):
    s = load(path)
    if isinstance(s, GFamily):
        raise UsageError(f"{path} holds a G-family; a disingquandle is needed here")
    return s


def _check_structure(args, out) -> int:
    s = load(args.file)
    if isinstance(s, GFamily):
        rep = check_g_family(s, strict_identity=args.strict_gfam)
        print(f"gfamily={s.name}", file=out)
        print(rep.summary(), file=out)
        if rep.passed:
            q = check_quandle(induced_quandle(s))
            print(f"induced quandle: {q.summary()}", file=out)
            return EXIT_OK if q.passed else EXIT_INVALID
        return EXIT_INVALID
    rep = check_disingquandle(s, exhaustive=args.exhaustive, **_flags(args))
    print(f"structure={s.name} order={s.order}", file=out)
    print(rep.summary(), file=out)
    return EXIT_OK if rep.passed else EXIT_INVALID


def _check_link(args, out) -> int:
    d = parse_diagram(_read(args.file), validate=False)
    rep = validate_diagram(d)
    classical = sum(1 for c in d.crossings if c.kind == "classical")
    print(f"link={d.name} components={len(d.components)} arcs={len(d.arcs)} "
          f"classical={classical} singular={len(d.crossings) - classical} loops={len(d.free_loops)}", file=out)
    print(rep.summary(), file=out)
    return EXIT_OK if rep.ok else EXIT_INVALID


def _build(args, out) -> int:
    params = {}
    for key in FAMILY_PARAMS[args.family]:
        value = getattr(args, key)
        if value is None:
            raise UsageError(f"family {args.family} needs --{key}")
        params[key] = value
    built = build_family(FamilySpec(args.family, params))
    text = format_gfamily(built) if isinstance(built, GFamily) else format_structure(built)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        out.write(text)
    return EXIT_OK


def _count(args, out) -> int:
    X = _load_structure(args.structure)
    d = parse_diagram(_read(args.link))
    r = solve(extract_constraints(d), X, list_all=args.list, jobs=args.jobs)
    out.write(result_block(r))
    return EXIT_OK


def _present(args, out) -> int:
    d = parse_diagram(_read(args.link))
    p = fundamental_presentation(d, simplify=args.simplify)
    print(f"link={d.name}", file=out)
    print(p, file=out)
    return EXIT_OK


def _search(args, out) -> int:
    found = search_affine(args.modulus, args.family, **_flags(args))
    print(f"family={args.family} modulus={args.modulus}", file=out)
    print("valid=" + ",".join(map(str, found)), file=out)
    return EXIT_OK


def _enumerate(args, out) -> int:
    total = 0
    for d in enumerate_disingquandles(args.order, args.up_to_iso, jobs=args.jobs,
                                      limit=args.limit, **_flags(args)):
        out.write(format_structure(d))
        total += 1
    print(f"# {total} structures", file=out)
    return EXIT_OK


def _corpus(args, out) -> int:
    X = _load_structure(args.structure)
    report = check_disingquandle(X)
    if not report.passed:
        raise InvalidStructureError(f"structure {X.name} is not a disingquandle", report)
    files = list(iter_link_files(args.dir))
    if not files:
        raise FileNotFoundError(f"no .lnk files in {args.dir}")
    rows = []
    for f in files:
        d = parse_diagram(_read(str(f)))
        r = solve(extract_constraints(d), X, jobs=args.jobs, check=False)
        rows.append((d.name, r.count))
        if args.kv:
            out.write(result_block(r) + "\n")
    if not args.kv:
        out.write(count_table(rows, X.name))
    if args.figure:
        count_chart(rows, X.name, args.figure)
    return EXIT_OK


VERBS = {
    "check-structure": _check_structure,
    "check-link": _check_link,
    "build": _build,
    "count": _count,
    "color": _count,
    "present": _present,
    "search": _search,
    "enumerate": _enumerate,
    "corpus": _corpus,
}


def run(argv=None, out=None) -> int:
    """Execute one command; returns the exit code instead of exiting."""
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.jobs is None:
        args.jobs = os.cpu_count() or 1
    if args.jobs < 1:
        print("dsq: error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    if not args.quiet:
        print(f"# dsq {__version__}", file=out)
    try:
        return VERBS[args.verb](args, out)
    except ParseError as exc:
        print(f"dsq: parse error: {exc}", file=sys.stderr)
        return EXIT_IO
    except InvalidStructureError as exc:
        print(f"dsq: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (DiagramError, StructureError) as exc:
        print(f"dsq: invalid input:\n{exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"dsq: {exc}", file=sys.stderr)
        return EXIT_IO
    except (UsageError, ValueError) as exc:
        print(f"dsq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
