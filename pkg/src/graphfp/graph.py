"""Finite directed multigraphs and their free semigroupoid.

A :class:`Word` is either a vertex (length 0) or an admissible edge path.
Words carry their own source and range, so the algebra layers never need
the graph to compose them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator


class GraphError(ValueError):
    """Raised for malformed graph documents and invalid words."""


@dataclass(frozen=True, order=False)
class Word:
    edges: tuple[str, ...]
    src: str
    dst: str

    @property
    def is_vertex(self) -> bool:
        return not self.edges

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def sort_key(self) -> tuple:
        return (len(self.edges), self.edges, self.src)

    def __str__(self) -> str:
        return self.src if self.is_vertex else "".join(self.edges)

    def to_json(self) -> dict:
        if self.is_vertex:
            return {"vertex": self.src}
        return {"edges": list(self.edges)}


def vertex(v: str) -> Word:
    return Word((), v, v)


def concat(w1: Word, w2: Word) -> Word | None:
    """Compose ``w1`` then ``w2``; ``None`` when the range of ``w1`` is not the source of ``w2``."""
    if w1.dst != w2.src:
        return None
    return Word(w1.edges + w2.edges, w1.src, w2.dst)


def strip_prefix(word: Word, prefix: Word) -> Word | None:
    """Return ``h`` with ``concat(prefix, h) == word``, or ``None``."""
    if prefix.src != word.src:
        return None
    k = len(prefix.edges)
    if word.edges[:k] != prefix.edges:
        return None
    if k == len(word.edges):
        return vertex(word.dst) if prefix.dst == word.dst else None
    # the edge after the prefix starts at prefix.dst by admissibility of word
    return Word(word.edges[k:], prefix.dst, word.dst)


def power(w: Word, k: int) -> Word | None:
    if k < 1:
        raise ValueError("power needs k >= 1")
    if k > 1 and w.src != w.dst:
        return None
    return Word(w.edges * k, w.src, w.dst)


@dataclass(frozen=True)
class LoopClass:
    """``root is None`` for a non-loop; otherwise ``w == root ** multiplicity``."""

    root: Word | None
    multiplicity: int = 0

    @property
    def is_loop(self) -> bool:
        return self.root is not None


def classify_loop(w: Word) -> LoopClass:
    if w.is_vertex:
        raise GraphError("classify_loop needs a path of length >= 1")
    if w.src != w.dst:
        return LoopClass(None)
    n = len(w.edges)
    for p in range(1, n + 1):
        if n % p == 0 and w.edges[:p] * (n // p) == w.edges:
            return LoopClass(Word(w.edges[:p], w.src, w.src), n // p)
    raise AssertionError("unreachable")


def diagram_distinct(w1: Word, w2: Word) -> bool:
    """Loops compare by primitive root, non-loops by identity; a loop and a non-loop always differ."""
    if w1.is_vertex or w2.is_vertex:
        raise GraphError("diagram_distinct needs paths of length >= 1")
    c1, c2 = classify_loop(w1), classify_loop(w2)
    if c1.is_loop and c2.is_loop:
        return c1.root != c2.root
    if not c1.is_loop and not c2.is_loop:
        return w1 != w2
    return True


@dataclass(frozen=True)
class Edge:
    id: str
    src: str
    dst: str


@dataclass(frozen=True)
class DirectedGraph:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    _by_id: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if not self.vertices:
            raise GraphError("graph needs at least one vertex")
        seen = set()
        for v in self.vertices:
            if v in seen:
                raise GraphError(f"duplicate vertex id {v!r}")
            seen.add(v)
        by_id = {}
        for e in self.edges:
            if e.id in by_id:
                raise GraphError(f"duplicate edge id {e.id!r}")
            for end, name in ((e.src, "src"), (e.dst, "dst")):
                if end not in seen:
                    raise GraphError(f"edge {e.id!r}: dangling endpoint {name}={end!r}")
            by_id[e.id] = e
        object.__setattr__(self, "_by_id", by_id)

    @classmethod
    def build(cls, vertices: Iterable[str], edges: Iterable[tuple[str, str, str]]) -> "DirectedGraph":
        return cls(tuple(vertices), tuple(Edge(*e) for e in edges))

    def edge(self, edge_id: str) -> Edge:
        try:
            return self._by_id[edge_id]
        except KeyError:
            raise GraphError(f"unknown edge id {edge_id!r}") from None

    def vertex(self, v: str) -> Word:
        if v not in self.vertices:
            raise GraphError(f"unknown vertex id {v!r}")
        return vertex(v)

    def path(self, edge_ids: Iterable[str] | str) -> Word:
        """Build an admissible path; a bare string is a single edge id."""
        if isinstance(edge_ids, str):
            edge_ids = [edge_ids]
        es = [self.edge(i) for i in edge_ids]
        if not es:
            raise GraphError("empty edge sequence; use vertex() for vertices")
        for a, b in zip(es, es[1:]):
            if a.dst != b.src:
                raise GraphError(f"inadmissible: {a.id} ends at {a.dst!r}, {b.id} starts at {b.src!r}")
        return Word(tuple(e.id for e in es), es[0].src, es[-1].dst)

    def word_from_json(self, doc: dict) -> Word:
        if "vertex" in doc:
            return self.vertex(doc["vertex"])
        if "edges" in doc:
            return self.path(doc["edges"])
        raise GraphError(f"word document needs 'vertex' or 'edges': {doc!r}")

    def out_edges(self, v: str) -> list[Edge]:
        return [e for e in self.edges if e.src == v]

    def iter_paths(self, max_len: int) -> Iterator[Word]:
        yield from (vertex(v) for v in sorted(self.vertices))
        if max_len < 1:
            return
        edges = sorted(self.edges, key=lambda e: e.id)
        frontier = [Word((e.id,), e.src, e.dst) for e in edges]
        for _ in range(max_len):
            yield from frontier
            frontier = sorted(
                (Word(w.edges + (e.id,), w.src, e.dst) for w in frontier for e in edges if e.src == w.dst),
                key=lambda u: u.edges,
            )

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [{"id": e.id, "src": e.src, "dst": e.dst} for e in self.edges],
        }


def enumerate_paths(g: DirectedGraph, max_len: int) -> list[Word]:
    """All words of length <= max_len, ordered by length then edge ids."""
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    return list(g.iter_paths(max_len))


def load_graph(document: dict | str) -> DirectedGraph:
    """Validate a graph document (dict or JSON text)."""
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise GraphError(f"graph document is not JSON: {exc}") from None
    if not isinstance(document, dict):
        raise GraphError("graph document must be an object")
    verts = document.get("vertices")
    edges = document.get("edges", [])
    if not isinstance(verts, list) or not all(isinstance(v, str) for v in verts):
        raise GraphError("'vertices' must be a list of strings")
    if not isinstance(edges, list):
        raise GraphError("'edges' must be a list")
    parsed = []
    for i, e in enumerate(edges):
        if not isinstance(e, dict) or not all(isinstance(e.get(k), str) for k in ("id", "src", "dst")):
            raise GraphError(f"edges[{i}] needs string fields id, src, dst")
        parsed.append(Edge(e["id"], e["src"], e["dst"]))
    return DirectedGraph(tuple(verts), tuple(parsed))


def load_graph_file(path: str) -> DirectedGraph:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise GraphError(f"cannot read graph file {path!r}: {exc}") from None
    return load_graph(text)
