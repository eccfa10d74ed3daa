"""Command-line interface.

Elements are given as ``--plus TREE --minus TREE``, as a JSON file with
``--input``, or positionally as ``PLUS/MINUS`` or a path to a JSON file.
Ternary trees may also be given by their tangled matching as a JSON pair
list, e.g. ``--plus "[[0,3],[1,5],[2,4]]"``.

Exit status: 0 on success, 1 on invalid input (bad tree, non-tangled
matching, failed verification), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from typing import Optional, Sequence

from . import census as cen
from . import linkdiag, tangles, trees
from .trees import TreePair

SUBCOMMANDS = ("normalize", "perm", "components", "pdcode", "gauss", "render", "census",
               "verify", "walk", "multiply", "inverse", "iota", "plmap")


class InputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Input handling
# ---------------------------------------------------------------------------

def _parse_side(text: str, arity: int) -> trees.Tree:
    text = text.strip()
    if text.startswith("["):
        if arity != 3:
            raise InputError("matchings describe ternary trees only")
        m = tangles.TangledMatching.from_pairs(json.loads(text))
        return tangles.matching_to_tree(m)
    return trees.parse_tree(text, arity)


def _parse_element(text: str, arity: int) -> TreePair:
    if os.path.isfile(text):
        with open(text) as fh:
            return TreePair.from_dict(json.load(fh))
    if text.lstrip().startswith("{"):
        return TreePair.from_dict(json.loads(text))
    if "/" not in text:
        raise InputError(f"element {text!r} is neither a file, JSON, nor PLUS/MINUS")
    plus, minus = text.split("/", 1)
    return TreePair(_parse_side(plus, arity), _parse_side(minus, arity), arity)


def _elements(args) -> list[TreePair]:
    out = []
    if args.plus is not None or args.minus is not None:
        if args.plus is None or args.minus is None:
            raise InputError("--plus and --minus must be given together")
        out.append(TreePair(_parse_side(args.plus, args.arity), _parse_side(args.minus, args.arity), args.arity))
    for path in args.input or []:
        with open(path) as fh:
            out.append(TreePair.from_dict(json.load(fh)))
    for text in args.elements:
        out.append(_parse_element(text, args.arity))
    return out


def _one(args) -> TreePair:
    els = _elements(args)
    if len(els) != 1:
        raise InputError(f"expected exactly one element, got {len(els)}")
    return els[0]


def _ternary(p: TreePair) -> TreePair:
    if p.arity != 3:
        raise InputError("this command needs a ternary element (use 'iota' for binary ones)")
    return p


# ---------------------------------------------------------------------------
# Output helpers
# ---------------------------------------------------------------------------

def _emit(args, data, text: str) -> None:
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=False))
    else:
        print(text)


def _table(rows: list[list], header: list[str]) -> str:
    cells = [header] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells)


def _write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _cycles(cycles) -> str:
    return " ".join("[" + ",".join(map(str, c)) + "]" for c in cycles)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_normalize(args):
    p = trees.reduce(_one(args))
    _emit(args, p.to_dict(), f"{trees.serialize(p.plus)} {trees.serialize(p.minus)}")


def cmd_inverse(args):
    p = trees.inverse(_one(args))
    _emit(args, p.to_dict(), f"{trees.serialize(p.plus)} {trees.serialize(p.minus)}")


def cmd_multiply(args):
    els = _elements(args)
    if len(els) < 2:
        raise InputError("multiply needs at least two elements")
    p = els[0]
    for q in els[1:]:
        p = trees.multiply(p, q)
    _emit(args, p.to_dict(), f"{trees.serialize(p.plus)} {trees.serialize(p.minus)}")


def cmd_iota(args):
    p = _one(args)
    if p.arity != 2:
        raise InputError("iota takes a binary element (pass --arity 2)")
    q = trees.iota(p)
    _emit(args, q.to_dict(), f"{trees.serialize(q.plus)} {trees.serialize(q.minus)}")


def cmd_plmap(args):
    f = trees.pl_map(_one(args))
    if args.canonical:
        f = f.canonical()
    text = "\n".join(f"{x} -> {y}" for x, y in f.breakpoints)
    _emit(args, f.to_json(), text)


def cmd_perm(args):
    p = _ternary(_one(args))
    data = tangles.thompson_permutation(p)
    d = data.to_dict()
    d["crossings_plus"] = tangles.crossing_count(data.plus)
    d["crossings_minus"] = tangles.crossing_count(data.minus)
    text = "\n".join([
        f"pi(T+) = {data.plus}",
        f"pi(T-) = {data.minus}",
        f"composition = {data.composition}",
        f"traversal cycles = {_cycles(data.traversal_cycles)}",
        f"components = {data.component_count}",
    ])
    _emit(args, d, text)


def cmd_components(args):
    p = _ternary(_one(args))
    k = tangles.component_count(p)
    if args.check:
        traced = linkdiag.trace_components(linkdiag.build_diagram(p)).count
        if traced != k:
            raise InputError(f"diagram tracing gives {traced} components, permutation gives {k}")
    _emit(args, {"components": k}, str(k))


def _diagram(args):
    return linkdiag.build_diagram(_ternary(_one(args)), args.convention)


def cmd_pdcode(args):
    code = linkdiag.pd_code(_diagram(args))
    _emit(args, [list(x) for x in code], linkdiag.format_pd(code))


def cmd_gauss(args):
    code = linkdiag.gauss_code(_diagram(args))
    data = [[f"{k}{n}{'+' if s > 0 else '-'}" for k, n, s in comp] for comp in code]
    _emit(args, data, linkdiag.format_gauss(code))


def cmd_render(args):
    doc = linkdiag.render(_diagram(args), args.format, scale=args.scale, gap=args.gap,
                          labels=not args.no_labels)
    if args.output and args.output != "-":
        _write_atomic(args.output, doc)
    else:
        sys.stdout.write(doc)


def cmd_census(args):
    ns = [args.n] if args.n is not None else list(range(args.max_n + 1))
    records = [cen.census(n, workers=args.workers, max_n=args.bound) for n in ns]
    if args.json or args.format == "json":
        print(json.dumps([r.to_dict() for r in records], indent=2))
    elif args.format == "csv":
        sys.stdout.write(cen.records_to_csv(records))
    else:
        width = max(r.n + 1 for r in records)
        print(_table([r.csv_row(width) for r in records], cen.CensusRecord.csv_header(width)))


def cmd_walk(args):
    gens = None
    if args.generators:
        with open(args.generators) as fh:
            raw = [TreePair.from_dict(g) for g in json.load(fh)]
        gens = [trees.iota(g) if g.arity == 2 else g for g in raw]
    hist = cen.random_walk(gens, steps=args.steps, samples=args.samples, seed=args.seed,
                           workers=args.workers)
    data = {"steps": args.steps, "samples": args.samples, "seed": args.seed,
            "histogram": {str(k): v for k, v in hist.items()}}
    _emit(args, data, _table([[k, v] for k, v in hist.items()], ["components", "samples"]))


def cmd_verify(args):
    results = []

    def check(name, ok, detail=""):
        results.append({"check": name, "ok": bool(ok), "detail": detail})

    max_leaves = 2 * args.max_n + 1
    for n in range(args.max_n + 1):
        got = sum(1 for _ in cen.enumerate_trees(2 * n + 1))
        check(f"enumeration n={n}", got == cen.tree_count(n), f"{got} trees, formula {cen.tree_count(n)}")

    ok = True
    for leaves in range(1, max_leaves + 1, 2):
        seen = set()
        for t in cen.enumerate_trees(leaves):
            m = tangles.tangled_matching(t)
            ok &= tangles.matching_to_tree(m) == t and m not in seen
            ok &= tangles.crossing_count(m) == (leaves - 1) // 2
            seen.add(m)
    check(f"bijection and crossing law, <= {max_leaves} leaves", ok)

    for n in range(1, args.max_n + 1):
        rep = cen.verify_characterization(n, max_n=args.max_n)
        check(f"characterization n={n}", rep.equal, rep.summary())

    theorem_leaves = 2 * min(args.max_n, args.theorem_max_n) + 1
    mismatches = factor = pairs = 0
    for leaves in range(1, theorem_leaves + 1, 2):
        ts = list(cen.enumerate_trees(leaves))
        for a in ts:
            for b in ts:
                pairs += 1
                p = TreePair(a, b)
                data = tangles.thompson_permutation(p)
                traced = linkdiag.trace_components(linkdiag.build_diagram(p)).count
                mismatches += traced != data.component_count
                factor += len(data.composition.cycles()) != 2 * data.component_count
    for i in range(args.random_pairs):
        pairs += 1
        p = cen.random_pair(args.random_max_leaves, f"{args.seed}:{i}")
        data = tangles.thompson_permutation(p)
        traced = linkdiag.trace_components(linkdiag.build_diagram(p)).count
        mismatches += traced != data.component_count
        factor += len(data.composition.cycles()) != 2 * data.component_count
    check("components = orbits (diagram tracing)", mismatches == 0, f"{pairs} pairs, {mismatches} mismatches")
    check("composition cycles = 2 x components", factor == 0, f"{pairs} pairs, {factor} failures")

    if args.json:
        print(json.dumps(results, indent=2))
    else:
        for r in results:
            print(f"{'PASS' if r['ok'] else 'FAIL'}  {r['check']}" + (f"  ({r['detail']})" if r["detail"] and "\n" not in r["detail"] else ""))
            if "\n" in r["detail"]:
                print("\n".join("      " + line for line in r["detail"].splitlines()))
    return 0 if all(r["ok"] for r in results) else 1


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="thompsonlinks",
                                     description="Tree pairs, Thompson permutations and their links.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    element = argparse.ArgumentParser(add_help=False)
    element.add_argument("elements", nargs="*", metavar="ELEMENT",
                         help="PLUS/MINUS, inline JSON, or a JSON file")
    element.add_argument("--plus", help="upper tree (tree string or matching as JSON pairs)")
    element.add_argument("--minus", help="lower tree")
    element.add_argument("--input", action="append", metavar="FILE", help="TreePair JSON file")
    element.add_argument("--arity", type=int, choices=(2, 3), default=3)

    diagram = argparse.ArgumentParser(add_help=False)
    diagram.add_argument("--convention", choices=linkdiag.CONVENTIONS, default="standard")

    parallel = argparse.ArgumentParser(add_help=False)
    parallel.add_argument("--workers", type=int, default=1)

    def add(name, func, help, parents=()):
        p = sub.add_parser(name, help=help, parents=[common, *parents])
        p.set_defaults(func=func)
        return p

    add("normalize", cmd_normalize, "reduce an element", [element])
    add("inverse", cmd_inverse, "inverse element", [element])
    add("multiply", cmd_multiply, "product of two or more elements", [element])
    add("iota", cmd_iota, "embed a binary element into F3", [element])
    p = add("plmap", cmd_plmap, "piecewise-linear map of an element", [element])
    p.add_argument("--canonical", action="store_true", help="drop breakpoints without a slope change")
    add("perm", cmd_perm, "tangled matchings and Thompson permutation", [element])
    p = add("components", cmd_components, "number of link components", [element])
    p.add_argument("--check", action="store_true", help="cross-check by tracing the diagram")
    add("pdcode", cmd_pdcode, "PD code of the link diagram", [element, diagram])
    add("gauss", cmd_gauss, "Gauss code of the link diagram", [element, diagram])
    p = add("render", cmd_render, "draw the link diagram", [element, diagram])
    p.add_argument("--format", choices=("svg", "tikz"), default="svg")
    p.add_argument("--scale", type=float, default=40.0)
    p.add_argument("--gap", type=float, default=0.25)
    p.add_argument("--no-labels", action="store_true")
    p.add_argument("-o", "--output", help="output path (default: standard output)")

    p = add("census", cmd_census, "component statistics over all tree pairs", [parallel])
    p.add_argument("--n", type=int, help="single caret count")
    p.add_argument("--max-n", type=int, default=4, help="all caret counts 0..N")
    p.add_argument("--bound", type=int, default=5, help="refuse caret counts above this")
    p.add_argument("--format", choices=("table", "csv", "json"), default="table")

    p = add("verify", cmd_verify, "run the exhaustive cross-checks")
    p.add_argument("--max-n", type=int, default=3)
    p.add_argument("--theorem-max-n", type=int, default=4,
                   help="cap on caret count for the exhaustive diagram check")
    p.add_argument("--random-pairs", type=int, default=0)
    p.add_argument("--random-max-leaves", type=int, default=21)
    p.add_argument("--seed", type=int, default=0)

    p = add("walk", cmd_walk, "random walk component histogram", [parallel])
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--generators", metavar="FILE", help="JSON list of TreePair objects")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        status = args.func(args)
    except (ValueError, KeyError, OSError, IndexError) as exc:
        # TreeSyntaxError, NotTangled, DiagramError and JSON errors are ValueErrors
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return status or 0


if __name__ == "__main__":
    sys.exit(main())
