"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 usage or unsupported input,
3 I/O or malformed JSON, 4 simplex budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence

from . import constructions as cons
from .core import CMap, FinSpace
from .covers import is_interior_cover
from .errors import BudgetExceededError, ClosureError, UnsupportedDirectedError
from .homology.groups import HomologySummary, compare_homology, homology
from .io import dump_space, load_cover, load_map, load_space
from .theorems import THEOREMS, known_degrees, parse_range, recognize_cycle_space, run_theorem

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_IO, EXIT_BUDGET = 0, 1, 2, 3, 4

FAMILIES = ["zn", "jn", "product", "coproduct", "quotient", "pushout", "wedge", "cone", "suspension", "file"]


class UsageError(Exception):
    pass


def _need(args: argparse.Namespace, *names: str) -> None:
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"family {args.family!r} needs {', '.join(missing)}")


def _point(X: FinSpace, label: str) -> int:
    return X.index_of(label)


def build_space(args: argparse.Namespace) -> FinSpace:
    fam = args.family
    if fam == "zn":
        _need(args, "n", "m")
        return cons.cycle_space(args.n, args.m)
    if fam == "jn":
        _need(args, "n")
        return cons.interval_space(args.n, args.m if args.m is not None else 1)
    if fam in ("product", "coproduct"):
        _need(args, "left", "right")
        op = cons.product if fam == "product" else cons.coproduct
        return op(load_space(args.left), load_space(args.right))
    if fam == "wedge":
        _need(args, "left", "lp", "right", "rp")
        X, Y = load_space(args.left), load_space(args.right)
        return cons.wedge(X, _point(X, args.lp), Y, _point(Y, args.rp))
    if fam == "quotient":
        _need(args, "input", "blocks")
        X = load_space(args.input)
        groups = [[_point(X, lab.strip()) for lab in blk.split(",") if lab.strip()]
                  for blk in args.blocks.split(";") if blk.strip()]
        return cons.quotient(X, cons.partition_with(X, groups))[0]
    if fam == "pushout":
        _need(args, "f", "g")
        return cons.pushout(load_map(args.f), load_map(args.g))[0]
    if fam == "cone":
        _need(args, "input")
        return cons.cone_d(load_space(args.input), args.h if args.h is not None else 1)
    if fam == "suspension":
        _need(args, "input")
        return cons.suspension_d(load_space(args.input), args.h if args.h is not None else 2)
    _need(args, "input")
    return load_space(args.input)


def space_summary(X: FinSpace) -> str:
    yn = {True: "yes", False: "no"}
    return (f"{X.name or 'space'}: {X.n} points, symmetric={yn[X.is_symmetric()]}, "
            f"idempotent={yn[X.is_topological()]}, components={len(X.path_components())}")


def cmd_space(args: argparse.Namespace) -> int:
    X = build_space(args)
    text = dump_space(X)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(space_summary(X))
    else:
        sys.stdout.write(text)
        print(space_summary(X), file=sys.stderr)
    return EXIT_OK


def _degree_status(X: FinSpace, h: HomologySummary) -> dict[int, str]:
    known = None
    rec = recognize_cycle_space(X)
    if rec is not None:
        known = known_degrees(rec[0], rec[1], h.max_deg)
    status = {}
    for k, g in h.degrees.items():
        if g is None:
            status[k] = "not computed"
        elif known is not None and k not in known:
            status[k] = "surrogate (no closed form for singular homology)"
        else:
            status[k] = "ok"
    return status


def format_homology(X: FinSpace, h: HomologySummary, fmt: str) -> str:
    status = _degree_status(X, h)
    if fmt == "json":
        data = h.to_json()
        data["space"] = X.name
        data["notes"] = {str(k): s for k, s in sorted(status.items()) if s != "ok"}
        return json.dumps(data, indent=2) + "\n"
    rows = []
    for k, g in sorted(h.degrees.items()):
        rank = "" if g is None else str(g.rank)
        tors = "" if g is None else " ".join(map(str, g.torsion))
        group = "n/c" if g is None else str(g)
        rows.append((str(k), rank, tors, group, status[k]))
    if fmt == "csv":
        return "degree,rank,torsion,group,status\n" + "".join(",".join(r) + "\n" for r in rows)
    title = f"{'reduced ' if h.reduced else ''}homology of {X.name or 'space'} (flag complex)"
    lines = [f"### {title}", "", "| degree | rank | torsion | group | status |", "|---|---|---|---|---|"]
    lines += ["| " + " | ".join(r) + " |" for r in rows]
    return "\n".join(lines) + "\n"


def cmd_homology(args: argparse.Namespace) -> int:
    X = load_space(args.space)
    h = homology(X, args.max_deg, reduced=args.reduced)
    sys.stdout.write(format_homology(X, h, args.format))
    if not h.is_complete():
        print("simplex budget exhausted before all degrees were computed", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    ns = parse_range(args.n) if args.n else None
    ms = parse_range(args.m) if args.m else None
    report = run_theorem(args.theorem, ns, ms, args.max_deg, args.jobs)
    if not report.cells:
        raise UsageError("the given ranges select no cells for this theorem")
    out = {"csv": report.to_csv, "json": report.to_json, "md": report.to_markdown}[args.format]()
    sys.stdout.write(out)
    passed = len(report.cells) - len(report.failures())
    print(f"{args.theorem}: {'PASS' if report.ok else 'FAIL'} ({passed}/{len(report.cells)} cells)", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_cover_check(args: argparse.Namespace) -> int:
    X = load_space(args.space) if args.space else None
    cover = load_cover(args.cover, X)
    verdict = is_interior_cover(cover)
    if verdict:
        print(f"interior cover ({len(cover.sets)} sets)")
        return EXIT_OK
    print(f"not interior: witness {cover.space.labels[verdict.witness]}")
    return EXIT_FAILED


def cmd_map_check(args: argparse.Namespace) -> int:
    dom = load_space(args.dom) if args.dom else None
    cod = load_space(args.cod) if args.cod else None
    f = load_map(args.map, dom, cod)
    if not f.is_continuous():
        bad = next(x for x in range(f.dom.n)
                   if not all(f(y) in f.cod.closures[f(x)] for y in f.dom.closures[x]))
        print(f"not continuous: witness {f.dom.labels[bad]}")
        return EXIT_FAILED
    words = ["continuous"]
    if f.is_homeomorphism():
        words.append("homeomorphism")
    elif _is_retraction(f):
        words.append("retraction")
    print(" ".join(words))
    return EXIT_OK


def _is_retraction(f: CMap) -> bool:
    """The codomain is a labelled subspace of the domain and ``f`` fixes it."""
    dom, cod = f.dom, f.cod
    labels = set(dom.labels)
    if not set(cod.labels) <= labels:
        return False
    for y, lab in enumerate(cod.labels):
        x = dom.index_of(lab)
        if f(x) != y:
            return False
        inherited = {dom.labels[z] for z in dom.closures[x]} & set(cod.labels)
        if inherited != {cod.labels[z] for z in cod.closures[y]}:
            return False
    return True


def cmd_compare(args: argparse.Namespace) -> int:
    X, Y = load_space(args.left), load_space(args.right)
    verdict = compare_homology(X, Y, args.max_deg, reduced=args.reduced)
    print(("isomorphic: " if verdict else "not isomorphic: ") + verdict.reason)
    return EXIT_OK if verdict else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="closurehom", description="Finite closure spaces and their flag-complex homology.")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("space", help="construct a space and write it as JSON")
    sp.add_argument("family", choices=FAMILIES)
    sp.add_argument("--n", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--h", type=int, help="height of the discrete cone/suspension")
    sp.add_argument("--left")
    sp.add_argument("--right")
    sp.add_argument("--lp", help="basepoint label in the left space")
    sp.add_argument("--rp", help="basepoint label in the right space")
    sp.add_argument("--in", dest="input")
    sp.add_argument("--blocks", help='point-label blocks, e.g. "0,1;3,4"; other points stay single')
    sp.add_argument("--f", help="map file for the first pushout leg")
    sp.add_argument("--g", help="map file for the second pushout leg")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_space)

    hp = sub.add_parser("homology", help="integer homology of a symmetric space")
    hp.add_argument("space")
    hp.add_argument("--max-deg", type=int, default=3)
    hp.add_argument("--reduced", action="store_true")
    hp.add_argument("--format", choices=["json", "csv", "md"], default="md")
    hp.set_defaults(func=cmd_homology)

    vp = sub.add_parser("verify", help="sweep a closed-form result over a parameter grid")
    vp.add_argument("theorem", choices=sorted(THEOREMS))
    vp.add_argument("--n", help="inclusive range a..b")
    vp.add_argument("--m", help="inclusive range a..b")
    vp.add_argument("--max-deg", type=int, default=3)
    vp.add_argument("--jobs", type=int, default=1)
    vp.add_argument("--format", choices=["json", "csv", "md"], default="md")
    vp.set_defaults(func=cmd_verify)

    cp = sub.add_parser("cover-check", help="decide whether a cover is an interior cover")
    cp.add_argument("cover")
    cp.add_argument("--space", help="space file overriding the cover's own reference")
    cp.set_defaults(func=cmd_cover_check)

    mp = sub.add_parser("map-check", help="check continuity of a map")
    mp.add_argument("map")
    mp.add_argument("--dom")
    mp.add_argument("--cod")
    mp.set_defaults(func=cmd_map_check)

    qp = sub.add_parser("compare", help="compare homology of two spaces degree by degree")
    qp.add_argument("left")
    qp.add_argument("right")
    qp.add_argument("--max-deg", type=int, default=3)
    qp.add_argument("--reduced", action="store_true")
    qp.set_defaults(func=cmd_compare)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        if isinstance(exc, json.JSONDecodeError):
            print(f"error: malformed JSON: {exc}", file=sys.stderr)
            return EXIT_IO
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnsupportedDirectedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ClosureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
