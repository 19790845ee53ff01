"""``graphfp`` command line."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from typing import Sequence

from . import corpus
from .algebra import (
    DiagonalElement,
    Element,
    Exp,
    MODES,
    element_from_json,
    expectation,
    letter_element,
    product,
    support_decompose,
)
from .cumulants import (
    LetterWord,
    cumulant_general,
    cumulant_letters,
    generating_operator,
    moment_general,
    mu_coefficient,
)
from .discrepancy import demo_circulant, demo_gn, discrepancy_report
from .fock import TruncationError, build_space, oracle_expectation
from .freeness import generators_free, mixed_cumulant_report, supports_free_sufficient
from .graph import DirectedGraph, GraphError, Word, load_graph_file
from .lattice import build_lattice_path, has_star_axis_property
from .noncrossing import ResourceGuardError, catalan, enumerate_nc, mobius, one, zero

EXIT_OK, EXIT_VALIDATION, EXIT_GUARD = 0, 2, 3


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


# ---------------------------------------------------------------- input parsing

_BUILTIN = [
    (re.compile(r"^G1$"), lambda m: corpus.bouquet(1)),
    (re.compile(r"^G1\^(\d+)$"), lambda m: corpus.bouquet(int(m.group(1)))),
    (re.compile(r"^H$"), lambda m: corpus.two_cycle()),
    (re.compile(r"^C(\d+)$"), lambda m: corpus.circulant(int(m.group(1)))),
    (re.compile(r"^line(\d+)$"), lambda m: corpus.line(int(m.group(1)))),
]


def resolve_graph(spec: str | None) -> DirectedGraph:
    """A JSON file path, or one of the built-in names G1, G1^N, H, CN, lineN."""
    if spec is None:
        raise UsageError("--graph is required for this command")
    if os.path.exists(spec):
        return load_graph_file(spec)
    for pat, make in _BUILTIN:
        m = pat.match(spec)
        if m:
            return make(m)
    raise GraphError(f"no graph file {spec!r} and not a built-in name (G1, G1^N, H, CN, lineN)")


_LETTER = re.compile(r"\(\s*([^,()]+?)\s*,\s*(1|\*)\s*\)")


def parse_word(text: str, g: DirectedGraph) -> list[tuple[Word, Exp]]:
    """Parse ``[(e1,1),(e1.e2,*),(v:NAME,1)]``; multi-edge paths join edge ids with dots."""
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise GraphError(f"word literal must be bracketed: {text!r}")
    body = body[1:-1].strip()
    letters = []
    pos = 0
    while pos < len(body):
        m = _LETTER.match(body, pos)
        if not m:
            raise GraphError(f"cannot parse letter at {body[pos:]!r}")
        name, exp = m.group(1), Exp.parse(m.group(2))
        if name.startswith("v:"):
            w = g.vertex(name[2:])
        elif name in g._by_id:
            w = g.path(name)
        else:
            w = g.path(name.split("."))
        letters.append((w, exp))
        pos = m.end()
        rest = body[pos:].lstrip()
        if rest.startswith(","):
            rest = rest[1:].lstrip()
        elif rest:
            raise GraphError(f"expected ',' between letters at {rest!r}")
        pos = len(body) - len(rest)
    if not letters:
        raise GraphError("empty word literal")
    return letters


def _load_json_arg(text: str):
    if os.path.exists(text):
        with open(text) as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"invalid JSON: {exc}") from None


def _element_arg(args, g: DirectedGraph, name: str = "element") -> Element:
    raw = getattr(args, name, None)
    if raw is not None:
        return element_from_json(_load_json_arg(raw), g)
    return generating_operator(g)


def _insertions_arg(args, n: int) -> list[DiagonalElement] | None:
    if getattr(args, "insertions", None) is None:
        return None
    doc = _load_json_arg(args.insertions)
    if not isinstance(doc, list) or len(doc) != n:
        raise GraphError(f"--insertions must be a JSON list of {n} vertex->coefficient maps")
    return [DiagonalElement(d) for d in doc]


def _word_json(word) -> list:
    return [[str(w), u.value] for w, u in word]


# ---------------------------------------------------------------- output


def _cell(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (dict, list)):
        return json.dumps(x, sort_keys=True, separators=(",", ":"))
    return "" if x is None else str(x)


def _rows(doc) -> list[dict]:
    if isinstance(doc, list) and all(isinstance(r, dict) for r in doc):
        return doc
    if isinstance(doc, dict) and isinstance(doc.get("rows"), list):
        return doc["rows"]
    if isinstance(doc, dict):
        return [{"key": k, "value": v} for k, v in doc.items()]
    return [{"value": doc}]


def render(doc, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=False, default=str)
    rows = _rows(doc)
    cols: list[str] = []
    for r in rows:
        for k in r:
            if k not in cols:
                cols.append(k)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([_cell(r.get(c)) for c in cols])
        return buf.getvalue().rstrip("\n")
    cells = [[_cell(r.get(c)) for c in cols] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(widths[i]) for i, c in enumerate(cols)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(v.ljust(widths[i]) for i, v in enumerate(row)).rstrip() for row in cells]
    return "\n".join(lines)


# ---------------------------------------------------------------- commands


def cmd_reduce(args):
    g = resolve_graph(args.graph)
    word = parse_word(args.word, g)
    x = product(letter_element(w, u) for w, u in word)
    return {"word": _word_json(word), "canonical": str(x), "element": x.to_json()}


def cmd_expect(args):
    g = resolve_graph(args.graph)
    if args.word:
        x = product(letter_element(w, u) for w, u in parse_word(args.word, g))
    else:
        x = _element_arg(args, g)
    out = {"mode": args.mode, "value": expectation(x, args.mode).to_json()}
    if args.support:
        out["support"] = support_decompose(x).to_json()
    return out


def cmd_moment(args):
    g = resolve_graph(args.graph)
    a = _element_arg(args, g)
    orders = [args.order] if args.insertions else range(1, args.order + 1)
    rows = []
    for n in orders:
        ins = _insertions_arg(args, n)
        rows.append({"order": n, "mode": args.mode, "value": moment_general(n, a, ins, args.mode).to_json()})
    return rows


def cmd_cumulant(args):
    g = resolve_graph(args.graph)
    if args.word:
        word = parse_word(args.word, g)
        n = len(word)
        ins = _insertions_arg(args, n)
        lw = LetterWord(tuple(word), tuple(ins) if ins else ())
        value = cumulant_letters(lw, args.mode)
        m = mu_coefficient(lw, args.mode)
        return {"order": n, "mode": args.mode, "value": value.to_json(), "connected_set_size": len(m.connected), "mu": m.mu}
    a = _element_arg(args, g)
    orders = [args.order] if args.insertions else range(1, args.order + 1)
    return [
        {"order": n, "mode": args.mode, "value": cumulant_general(n, [a] * n, _insertions_arg(args, n), args.mode).to_json()}
        for n in orders
    ]


def cmd_mu(args):
    g = resolve_graph(args.graph)
    word = parse_word(args.word, g)
    m = mu_coefficient(word, args.mode)
    out = {"mu": m.mu, "connected_set_size": len(m.connected)}
    if args.partitions:
        out["connected_set"] = [str(p) for p in m.connected]
    return out


def cmd_lattice(args):
    g = resolve_graph(args.graph)
    word = parse_word(args.word, g)
    p = build_lattice_path(word)
    out = {"path": p.to_json(), "star_axis": has_star_axis_property(p)}
    if args.ascii:
        out["ascii"] = p.ascii()
    return out


def cmd_nc(args):
    n = args.order
    parts = enumerate_nc(n, args.filter)
    out = {"n": n, "filter": args.filter, "count": len(parts), "catalan_n": catalan(n), "mobius_0_1": mobius(zero(n), one(n))}
    if args.list:
        out["partitions"] = [str(p) for p in parts]
    return out


def cmd_freeness(args):
    g = resolve_graph(args.graph)
    if args.w1 and args.w2:
        w1, w2 = (g.path(s.split(".")) for s in (args.w1, args.w2))
        a, b = letter_element(w1), letter_element(w2)
        structural = {"generators_free": generators_free(w1, w2)}
    elif args.a and args.b:
        a, b = element_from_json(_load_json_arg(args.a), g), element_from_json(_load_json_arg(args.b), g)
        structural = {}
    else:
        raise UsageError("give --w1/--w2 (dot-separated edge ids) or --a/--b (element JSON)")
    rep = mixed_cumulant_report(a, b, args.max_order, args.mode, args.degree)
    return {**structural, "supports_free_sufficient": supports_free_sufficient(a, b), "report": rep.to_json()}


def cmd_oracle(args):
    g = resolve_graph(args.graph)
    word = parse_word(args.word, g)
    space = build_space(g, args.length)
    orc = oracle_expectation(word, space)
    eng = expectation(product(letter_element(w, u) for w, u in word), "fock")
    return {"length": args.length, "dim": space.dim, "oracle": orc.to_json(), "engine_fock": eng.to_json(), "match": orc == eng}


def cmd_demo_gn(args):
    rows = demo_gn(args.N, args.order)
    for r in rows:
        r["mismatch"] = not (r["moment_match_paper"] and r["cumulant_match_paper"])
    return rows


def cmd_demo_circulant(args):
    return demo_circulant(args.N, args.order)


def cmd_discrepancy(args):
    return discrepancy_report(args.N, args.order, include_surveys=args.surveys)


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", help="graph JSON file or built-in name (G1, G1^N, H, CN, lineN)")
    common.add_argument("--mode", choices=MODES, default=None, help="expectation semantics")
    common.add_argument("--format", choices=("table", "json", "csv"), default="json")
    common.add_argument("--max-nc", type=int, default=None, help="partition order bound (overrides GRAPHFP_MAX_NC)")

    p = _Parser(prog="graphfp", description="Exact moments, cumulants and freeness checks on graph operator algebras.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help, default_mode="paper"):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.set_defaults(func=fn, default_mode=default_mode)
        return sp

    sp = add("reduce", cmd_reduce, "canonical form of a letter product")
    sp.add_argument("--word", required=True)

    sp = add("expect", cmd_expect, "conditional expectation of a word or element")
    sp.add_argument("--word")
    sp.add_argument("--element", help="element JSON (file or literal)")
    sp.add_argument("--support", action="store_true", help="also print the support decomposition")

    for name, fn, help in (("moment", cmd_moment, "moments E(d1 a ... dn a)"), ("cumulant", cmd_cumulant, "cumulants")):
        sp = add(name, fn, help)
        sp.add_argument("--order", type=int, default=4)
        sp.add_argument("--element", help="element JSON; default is the generating operator")
        sp.add_argument("--insertions", help="JSON list of vertex->coefficient maps, one per slot")
        if name == "cumulant":
            sp.add_argument("--word", help="cumulant of single letters, with mu and connected-set size")

    sp = add("mu", cmd_mu, "mu-coefficient of a letter word")
    sp.add_argument("--word", required=True)
    sp.add_argument("--partitions", action="store_true")

    sp = add("lattice", cmd_lattice, "lattice path and *-axis verdict")
    sp.add_argument("--word", required=True)
    sp.add_argument("--ascii", action="store_true")

    sp = add("nc", cmd_nc, "noncrossing partition counts and Möbius values")
    sp.add_argument("--order", type=int, required=True)
    sp.add_argument("--filter", choices=("all", "pairings", "even_blocks"), default="all")
    sp.add_argument("--list", action="store_true")

    sp = add("freeness", cmd_freeness, "freeness verdicts and mixed-cumulant report")
    sp.add_argument("--w1")
    sp.add_argument("--w2")
    sp.add_argument("--a")
    sp.add_argument("--b")
    sp.add_argument("--max-order", type=int, default=4)
    sp.add_argument("--degree", type=int, default=3, help="closure degree")

    sp = add("oracle", cmd_oracle, "truncated Fock space cross-check", default_mode="fock")
    sp.add_argument("--word", required=True)
    sp.add_argument("--length", type=int, default=6, help="truncation length")

    sp = add("demo-gn", cmd_demo_gn, "one-vertex N-loop graph: chain vs direct")
    sp.add_argument("N", type=int)
    sp.add_argument("--order", type=int, default=8)

    sp = add("demo-circulant", cmd_demo_circulant, "circulant graph C_N cumulants")
    sp.add_argument("N", type=int)
    sp.add_argument("--order", type=int, default=6)

    sp = add("discrepancy", cmd_discrepancy, "chain vs direct and fock vs paper report")
    sp.add_argument("--N", type=int, default=1)
    sp.add_argument("--order", type=int, default=6)
    sp.add_argument("--surveys", action="store_true", help="include the exhaustive corpus surveys (slow)")
    return p


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    saved = os.environ.get("GRAPHFP_MAX_NC")
    try:
        args = build_parser().parse_args(argv)
        if args.mode is None:
            args.mode = args.default_mode
        if args.max_nc is not None:
            os.environ["GRAPHFP_MAX_NC"] = str(args.max_nc)
        doc = args.func(args)
    except ResourceGuardError as exc:
        print(f"graphfp: refused: {exc}", file=err)
        return EXIT_GUARD
    except TruncationError as exc:
        print(f"graphfp: refused: {exc}", file=err)
        return EXIT_GUARD
    except (UsageError, GraphError, ValueError, TypeError, KeyError) as exc:
        print(f"graphfp: error: {exc}", file=err)
        return EXIT_VALIDATION
    except SystemExit as exc:
        # --help
        return int(exc.code or 0)
    finally:
        if saved is None:
            os.environ.pop("GRAPHFP_MAX_NC", None)
        else:
            os.environ["GRAPHFP_MAX_NC"] = saved
    print(render(doc, args.format), file=out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
