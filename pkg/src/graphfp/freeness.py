"""Freeness over the diagonal subalgebra: structural verdicts and an empirical mixed-cumulant search.

The empirical search works on single letters.  Each closure element is a
sum of letters that are closure elements themselves, and a vertex
insertion in front of one letter either kills it or leaves it alone, so
by multilinearity a mixed cumulant of closure elements (with or without
insertions) can only be nonzero if some mixed cumulant of single letters
is nonzero, and every such letter tuple is itself a closure tuple.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from .algebra import Element, Exp, Term, check_mode, generator_sum, letter_element, term_expectation, term_product
from .cumulants import cumulant_general
from .graph import GraphError, Word, diagram_distinct, power, vertex
from .noncrossing import enumerate_nc_sizes, guard, mobius_to_top


def generators_free(w1: Word, w2: Word) -> bool:
    """Structural verdict for ``L_{w1}`` and ``L_{w2}``: free iff diagram-distinct."""
    if w1.is_vertex or w2.is_vertex:
        raise GraphError("generators_free needs paths of length >= 1")
    return diagram_distinct(w1, w2)


def supports_free_sufficient(a: Element, b: Element) -> bool:
    """True means free (sufficient condition); False is inconclusive."""
    for x in (a, b):
        if not x.is_letter_expansion():
            raise GraphError("not a Fourier-letter expansion")
    return all(diagram_distinct(x, y) for x in a.path_support() for y in b.path_support())


def closure_letters(x: Element, degree: int) -> list[tuple[Word, Exp]]:
    """Letters ``L_{w^k}``, ``L_{w^k}^*`` for generators w of ``x`` and 1 <= k <= degree."""
    if not x.is_letter_expansion():
        raise GraphError("not a Fourier-letter expansion")
    words = set()
    for w in x.path_support():
        for k in range(1, degree + 1):
            p = power(w, k)
            if p is not None:
                words.add(p)
    return [(w, u) for w in sorted(words, key=lambda w: w.sort_key) for u in (Exp.ONE, Exp.STAR)]


def closure_elements(x: Element, degree: int) -> list[Element]:
    """Pure powers, adjoint powers and self-adjoint power sums of the generators of ``x``."""
    out = [letter_element(w, u) for w, u in closure_letters(x, degree)]
    seen = {w for w, _ in closure_letters(x, degree)}
    out += [generator_sum([w]) for w in sorted(seen, key=lambda w: w.sort_key)]
    return out


@lru_cache(maxsize=1 << 18)
def _tprod(s: Term, t: Term):
    return term_product(s, t)


def _letter_term(w: Word, u: Exp) -> Term:
    return Term(w, vertex(w.dst)) if u is Exp.ONE else Term(vertex(w.dst), w)


def _block_vertex(terms, mode):
    acc = terms[0]
    for t in terms[1:]:
        acc = _tprod(acc, t)
        if acc is None:
            return None
    return term_expectation(acc, mode)


def _term_e_hat(pi_blocks, terms: list, mode: str):
    """``Ê(π)`` for coefficient-one letters: a single vertex or ``None``."""
    n = len(terms)
    vals = list(terms)
    alive = [True] * (n + 1)
    last = len(pi_blocks) - 1
    for k, b in enumerate(pi_blocks):
        v = _block_vertex([vals[i - 1] for i in b], mode)
        if v is None or k == last:
            return v
        for i in b:
            alive[i] = False
        nxt = next((j for j in range(b[-1] + 1, n + 1) if alive[j]), None)
        if nxt is not None:
            t = vals[nxt - 1]
            if t.alpha.src != v:
                return None
        else:
            prv = next(j for j in range(b[0] - 1, 0, -1) if alive[j])
            t = vals[prv - 1]
            if t.beta.src != v:
                return None
    raise AssertionError("unreachable")


@lru_cache(maxsize=None)
def _partitions_no_singletons(n: int):
    """Blocks pre-sorted for nested evaluation, paired with ``μ(π, 1_n)``."""
    out = []
    for p in enumerate_nc_sizes(n, range(2, n + 1)):
        blocks = sorted(p.blocks, key=lambda b: (b[-1] - b[0], b[0]))
        out.append((tuple(blocks), mobius_to_top(p)))
    return tuple(out)


def letter_cumulant(letters, mode: str) -> dict[str, int]:
    """Cumulant of path letters with coefficient one, as ``{vertex: int}``.

    Partitions with singleton blocks are skipped: a single path letter has
    zero expectation in both modes.
    """
    terms = [_letter_term(w, u) for w, u in letters]
    acc: dict[str, int] = {}
    for blocks, mu in _partitions_no_singletons(len(terms)):
        v = _term_e_hat(blocks, terms, mode)
        if v is not None:
            acc[v] = acc.get(v, 0) + mu
    return {v: c for v, c in sorted(acc.items()) if c}


@dataclass
class Witness:
    order: int
    tuple: list
    value: dict

    def to_json(self) -> dict:
        return {"order": self.order, "tuple": self.tuple, "value": self.value}


@dataclass
class MixedCumulantReport:
    max_order: int
    mode: str
    degree: int
    witnesses: list[Witness] = field(default_factory=list)
    tuples_checked: int = 0
    complete: bool = True

    @property
    def verdict(self) -> str:
        return "nonvanishing" if self.witnesses else "all_vanishing"

    def to_json(self) -> dict:
        return {
            "max_order": self.max_order,
            "mode": self.mode,
            "closure_degree": self.degree,
            "verdict": self.verdict,
            "tuples_checked": self.tuples_checked,
            "complete": self.complete,
            "witnesses": [w.to_json() for w in self.witnesses],
        }


def _letter_json(w: Word, u: Exp, side: str) -> dict:
    return {"side": side, "word": str(w), "exp": u.value}


def _mixed_letter_tuples(fa, fb, n: int) -> Iterator[tuple]:
    tagged = [(w, u, "a") for w, u in fa] + [(w, u, "b") for w, u in fb]
    signed = [len(w) if u is Exp.ONE else -len(w) for w, u, _ in tagged]
    # suffix balance bound: remaining slots can move the height by at most this much
    reach = max((abs(s) for s in signed), default=0)

    def rec(prefix, height, sides):
        k = len(prefix)
        if k == n:
            if height == 0 and len(sides) == 2:
                yield tuple(tagged[i] for i in prefix)
            return
        if abs(height) > reach * (n - k):
            return
        for i, s in enumerate(signed):
            prefix.append(i)
            yield from rec(prefix, height + s, sides | {tagged[i][2]})
            prefix.pop()

    yield from rec([], 0, frozenset())


def mixed_cumulant_report(
    a: Element,
    b: Element,
    max_order: int,
    mode: str = "paper",
    degree: int = 1,
    first_only: bool = False,
    include_self_adjoint: bool = True,
) -> MixedCumulantReport:
    """Search mixed cumulants of orders 2..max_order for the closures of ``a`` and ``b``.

    Letter tuples decide the verdict.  When ``include_self_adjoint`` is set,
    tuples of the self-adjoint power sums are evaluated as well so that
    witnesses are also reported in that form.
    """
    check_mode(mode)
    if max_order < 2:
        raise ValueError("max_order must be >= 2")
    guard(max_order)
    fa, fb = closure_letters(a, degree), closure_letters(b, degree)
    rep = MixedCumulantReport(max_order, mode, degree)
    for n in range(2, max_order + 1):
        for tup in _mixed_letter_tuples(fa, fb, n):
            rep.tuples_checked += 1
            val = letter_cumulant([(w, u) for w, u, _ in tup], mode)
            if val:
                rep.witnesses.append(
                    Witness(n, [_letter_json(w, u, s) for w, u, s in tup], {v: str(c) for v, c in val.items()})
                )
                if first_only:
                    rep.complete = False
                    return rep
    if include_self_adjoint:
        _self_adjoint_witnesses(a, b, rep)
    return rep


def _self_adjoint_witnesses(a: Element, b: Element, rep: MixedCumulantReport):
    sa = [(w, generator_sum([w])) for w in sorted({w for w, _ in closure_letters(a, rep.degree)}, key=lambda w: w.sort_key)]
    sb = [(w, generator_sum([w])) for w in sorted({w for w, _ in closure_letters(b, rep.degree)}, key=lambda w: w.sort_key)]
    tagged = [(w, x, "a") for w, x in sa] + [(w, x, "b") for w, x in sb]
    for n in range(2, rep.max_order + 1):
        for tup in itertools.product(tagged, repeat=n):
            if len({s for _, _, s in tup}) < 2:
                continue
            rep.tuples_checked += 1
            val = cumulant_general(n, [x for _, x, _ in tup], mode=rep.mode)
            if val:
                rep.witnesses.append(
                    Witness(
                        n,
                        [{"side": s, "word": str(w), "exp": "1+*"} for w, _, s in tup],
                        val.to_json(),
                    )
                )


def _canonical_pair(w1: Word, w2: Word, g) -> tuple:
    """Relabel edges and vertices by first appearance; the cumulant search depends on nothing else."""
    emap: dict = {}
    vmap: dict = {}
    for e in w1.edges + w2.edges:
        if e not in emap:
            emap[e] = len(emap)
            edge = g.edge(e)
            for x in (edge.src, edge.dst):
                vmap.setdefault(x, len(vmap))
    ends = tuple(sorted((emap[e], vmap[g.edge(e).src], vmap[g.edge(e).dst]) for e in emap))
    return (tuple(emap[e] for e in w1.edges), tuple(emap[e] for e in w2.edges), ends)


@dataclass
class AgreementRecord:
    graph: str
    w1: str
    w2: str
    structural_free: bool
    empirical: str
    witness: dict | None

    @property
    def agrees(self) -> bool:
        return self.structural_free == (self.empirical == "all_vanishing")

    def to_json(self) -> dict:
        return {
            "graph": self.graph,
            "w1": self.w1,
            "w2": self.w2,
            "generators_free": self.structural_free,
            "empirical": self.empirical,
            "agrees": self.agrees,
            "witness": self.witness,
        }


def freeness_agreement(graphs, max_len: int = 3, max_order: int = 4, degree: int = 3, mode: str = "paper"):
    """Compare :func:`generators_free` with the empirical verdict for every unordered generator pair.

    ``graphs`` is an iterable of ``(name, DirectedGraph)``.  Pairs that are
    equal up to relabelling share one cumulant search.
    """
    from .graph import enumerate_paths

    cache: dict = {}
    records = []
    for name, g in graphs:
        words = [w for w in enumerate_paths(g, max_len) if not w.is_vertex]
        for i, w1 in enumerate(words):
            for w2 in words[i:]:
                key = _canonical_pair(w1, w2, g)
                if key not in cache:
                    rep = mixed_cumulant_report(
                        letter_element(w1), letter_element(w2), max_order, mode, degree,
                        first_only=True, include_self_adjoint=False,
                    )
                    cache[key] = rep.witnesses[0].to_json() if rep.witnesses else None
                wit = cache[key]
                records.append(
                    AgreementRecord(
                        name, str(w1), str(w2), generators_free(w1, w2),
                        "nonvanishing" if wit else "all_vanishing", wit,
                    )
                )
    return records
