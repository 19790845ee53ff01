"""Truncated Fock space of a graph with sparse 0/1 matrices for creation and annihilation.

This is deliberately independent of the canonical-form engine: it acts on
basis vectors by concatenating and stripping edge sequences.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import sparse

from .algebra import DiagonalElement, Exp
from .graph import DirectedGraph, Word

DEFAULT_MAX_DIM = 200_000


class TruncationError(ValueError):
    """The requested computation could create paths longer than the truncation."""


@dataclass(frozen=True)
class TruncatedFockSpace:
    graph: DirectedGraph
    length: int
    basis: tuple[Word, ...]
    index: dict

    @property
    def dim(self) -> int:
        return len(self.basis)


def build_space(g: DirectedGraph, length: int, max_dim: int = DEFAULT_MAX_DIM) -> TruncatedFockSpace:
    from .noncrossing import ResourceGuardError

    if length < 0:
        raise ValueError("truncation length must be >= 0")
    basis = []
    for w in g.iter_paths(length):
        basis.append(w)
        if len(basis) > max_dim:
            raise ResourceGuardError(f"Fock space dimension exceeds {max_dim}")
    return TruncatedFockSpace(g, length, tuple(basis), {w: i for i, w in enumerate(basis)})


def _glue(w: Word, h: Word) -> Word | None:
    """Basis-level concatenation ``w h``; vertices act as units."""
    if w.dst != h.src:
        return None
    return Word(w.edges + h.edges, w.src, h.dst)


def operator_matrix(w: Word, exponent, space: TruncatedFockSpace) -> sparse.csr_matrix:
    """Matrix of ``L_w`` (exponent 1) or ``L_w^*`` on the truncated basis."""
    u = Exp.parse(exponent)
    rows, cols = [], []
    for j, h in enumerate(space.basis):
        if w.is_vertex:
            if h.src == w.src:
                rows.append(j)
                cols.append(j)
            continue
        if u is Exp.ONE:
            wh = _glue(w, h)
            if wh is not None and len(wh) <= space.length:
                rows.append(space.index[wh])
                cols.append(j)
        else:
            k = len(w)
            if h.src == w.src and h.edges[:k] == w.edges and len(h) >= k:
                rest = Word(h.edges[k:], w.dst, h.dst) if len(h) > k else Word((), w.dst, w.dst)
                rows.append(space.index[rest])
                cols.append(j)
    data = np.ones(len(rows), dtype=np.int64)
    return sparse.csr_matrix((data, (rows, cols)), shape=(space.dim, space.dim), dtype=np.int64)


def check_truncation_safe(word: Sequence[tuple[Word, object]], space: TruncatedFockSpace) -> None:
    created = sum(len(w) for w, u in word if Exp.parse(u) is Exp.ONE)
    if created > space.length:
        raise TruncationError(
            f"creation letters add up to length {created} > truncation {space.length}; refusing"
        )


def oracle_expectation(word: Sequence[tuple[Word, object]], space: TruncatedFockSpace) -> DiagonalElement:
    """``<ξ_v, L_{w_1}^{u_1} ... L_{w_n}^{u_n} ξ_v>`` at every vertex v."""
    word = list(word)
    if not word:
        raise ValueError("empty word")
    check_truncation_safe(word, space)
    verts = sorted(space.graph.vertices)
    cols = [space.index[Word((), v, v)] for v in verts]
    # apply right to left to the block of vertex vectors
    vec = sparse.csr_matrix(
        (np.ones(len(cols), dtype=np.int64), (cols, range(len(cols)))),
        shape=(space.dim, len(cols)),
        dtype=np.int64,
    )
    for w, u in reversed(word):
        vec = operator_matrix(w, u, space) @ vec
    out = {}
    for k, v in enumerate(verts):
        x = int(vec[cols[k], k])
        if x:
            out[v] = x
    return DiagonalElement(out)


def matrix_to_json(m: sparse.spmatrix) -> dict:
    c = m.tocoo()
    return {"shape": list(c.shape), "entries": sorted([int(i), int(j), int(x)] for i, j, x in zip(c.row, c.col, c.data))}


@dataclass
class OracleSurvey:
    graph: str
    length: int
    max_total: int
    words_checked: int
    mismatches: list

    def to_json(self) -> dict:
        return {
            "graph": self.graph,
            "length": self.length,
            "max_total_length": self.max_total,
            "words_checked": self.words_checked,
            "mismatch_count": len(self.mismatches),
            "mismatches": self.mismatches[:20],
        }


def oracle_survey(
    g: DirectedGraph, max_total: int, length: int, name: str = "", vertex_letters: bool = False
) -> OracleSurvey:
    """Compare the oracle with the fock-mode engine on every letter word of total length <= ``max_total``.

    Words arrive depth-first, so both sides keep one state per prefix length:
    the oracle a block of row vectors ``ξ_v^T M_1 ... M_k``, the engine the
    canonical product of the prefix.
    """
    from .algebra import expectation, iter_letter_words, letter_element, multiply

    if max_total > length:
        raise TruncationError(f"words of total length {max_total} do not fit truncation {length}")
    space = build_space(g, length)
    verts = sorted(g.vertices)
    cols = np.array([space.index[Word((), v, v)] for v in verts])
    start = np.zeros((len(verts), space.dim), dtype=np.int64)
    start[np.arange(len(verts)), cols] = 1
    mats: dict = {}
    rows_at: dict[int, np.ndarray] = {0: start}
    prod_at: dict = {}
    mismatches, n = [], 0
    for word in iter_letter_words(g, max_total, vertex_letters):
        n += 1
        k = len(word)
        key = word[-1]
        m = mats.get(key)
        if m is None:
            m = mats[key] = operator_matrix(key[0], key[1], space).T.tocsr()
        rows = rows_at[k] = (m @ rows_at[k - 1].T).T
        x = letter_element(*key)
        prev = prod_at.get(k - 1)
        prod = prod_at[k] = x if k == 1 else (multiply(prev, x) if prev else prev)
        orc = DiagonalElement({v: int(rows[i, cols[i]]) for i, v in enumerate(verts) if rows[i, cols[i]]})
        eng = expectation(prod, "fock") if prod else DiagonalElement()
        if orc != eng:
            mismatches.append({"word": [[str(w), u.value] for w, u in word], "oracle": orc.to_json(), "engine": eng.to_json()})
    return OracleSurvey(name, length, max_total, n, mismatches)
