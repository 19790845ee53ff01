"""Operator-valued moments and cumulants over the diagonal subalgebra.

Cumulants are the Möbius inversion of the nested moment functional
``Ê(π)`` over NC(n).  Everything is exact; every sum over partitions is
guarded by the NC order bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .algebra import (
    DiagonalElement,
    Element,
    Exp,
    check_mode,
    expectation,
    generator_sum,
    letter_element,
    multiply,
)
from .gaussq import GaussQ
from .graph import DirectedGraph, GraphError, Word
from .noncrossing import (
    NoncrossingPartition,
    ResourceGuardError,
    enumerate_nc,
    enumerate_nc_sizes,
    guard,
    mobius_to_top,
)


@dataclass(frozen=True)
class LetterWord:
    """Letters ``L_{w_j}^{u_j}`` with optional diagonal ``d_j`` placed in front of each."""

    letters: tuple[tuple[Word, Exp], ...]
    insertions: tuple[DiagonalElement | None, ...] = field(default=())

    def __post_init__(self):
        letters = tuple((w, Exp.parse(u)) for w, u in self.letters)
        if not letters:
            raise ValueError("a letter word needs at least one letter")
        object.__setattr__(self, "letters", letters)
        ins = tuple(self.insertions) or (None,) * len(letters)
        if len(ins) != len(letters):
            raise ValueError(f"{len(ins)} insertions for {len(letters)} letters")
        object.__setattr__(self, "insertions", ins)

    def __len__(self):
        return len(self.letters)

    def values(self) -> list[Element]:
        out = []
        for (w, u), d in zip(self.letters, self.insertions):
            x = letter_element(w, u)
            out.append(x if d is None else x.left_diag(d))
        return out

    def __str__(self):
        return " ".join(f"L[{w}]{'*' if u is Exp.STAR else ''}" for w, u in self.letters)


def as_letter_word(word) -> LetterWord:
    return word if isinstance(word, LetterWord) else LetterWord(tuple(word))


def _e_hat_values(pi: NoncrossingPartition, values: Sequence[Element], mode: str) -> DiagonalElement:
    n = len(values)
    vals = list(values)
    alive = [True] * (n + 1)
    # nested blocks have strictly smaller span than the block around them
    blocks = sorted(pi.blocks, key=lambda b: (b[-1] - b[0], b[0]))
    for k, b in enumerate(blocks):
        acc = vals[b[0] - 1]
        for i in b[1:]:
            if not acc:
                break
            acc = multiply(acc, vals[i - 1])
        d = expectation(acc, mode)
        if k == len(blocks) - 1:
            return d
        if not d:
            return DiagonalElement()
        for i in b:
            alive[i] = False
        nxt = next((j for j in range(b[-1] + 1, n + 1) if alive[j]), None)
        if nxt is not None:
            vals[nxt - 1] = vals[nxt - 1].left_diag(d)
        else:
            prv = next(j for j in range(b[0] - 1, 0, -1) if alive[j])
            vals[prv - 1] = vals[prv - 1].right_diag(d)
    raise AssertionError("unreachable")


def e_hat(pi: NoncrossingPartition, word, mode: str = "paper") -> DiagonalElement:
    """Nested partition moment ``Ê(π)`` of a letter word or of a list of elements."""
    check_mode(mode)
    values = list(word) if _is_element_list(word) else as_letter_word(word).values()
    if pi.n != len(values):
        raise ValueError(f"partition of {pi.n} applied to {len(values)} letters")
    return _e_hat_values(pi, values, mode)


def _is_element_list(word) -> bool:
    return isinstance(word, (list, tuple)) and bool(word) and all(isinstance(x, Element) for x in word)


def full_expectation(word, mode: str = "paper") -> DiagonalElement:
    vals = as_letter_word(word).values()
    acc = vals[0]
    for x in vals[1:]:
        acc = multiply(acc, x)
    return expectation(acc, mode)


@dataclass(frozen=True)
class MuResult:
    mu: int
    connected: tuple[NoncrossingPartition, ...]

    def to_json(self) -> dict:
        return {"mu": self.mu, "connected_set_size": len(self.connected), "connected_set": [p.to_json() for p in self.connected]}


def connected_set(word, mode: str = "paper", bound: int | None = None) -> tuple[NoncrossingPartition, ...]:
    w = as_letter_word(word)
    check_mode(mode)
    vals = w.values()
    return tuple(p for p in enumerate_nc(len(w), bound=bound) if _e_hat_values(p, vals, mode))


def mu_coefficient(word, mode: str = "paper", bound: int | None = None) -> MuResult:
    conn = connected_set(word, mode, bound)
    return MuResult(sum(mobius_to_top(p) for p in conn), conn)


def cumulant_letters(word, mode: str = "paper", bound: int | None = None) -> DiagonalElement:
    """``μ(word) · E(word)``."""
    w = as_letter_word(word)
    e = full_expectation(w, mode)
    if not e:
        guard(len(w), bound)
        return DiagonalElement()
    return e.scale(mu_coefficient(w, mode, bound).mu)


def _check_factors(factors: Sequence[Element]):
    for i, a in enumerate(factors):
        if not isinstance(a, Element):
            raise TypeError(f"factor {i} is not an Element")
        if not a.is_letter_expansion():
            raise GraphError(f"factor {i} is not a Fourier-letter expansion")


def _with_insertions(factors, insertions) -> list[Element]:
    if insertions is None:
        return list(factors)
    if len(insertions) != len(factors):
        raise ValueError(f"{len(insertions)} insertions for {len(factors)} factors")
    return [a if d is None else a.left_diag(d) for a, d in zip(factors, insertions)]


def cumulant_general(
    n: int,
    factors: Sequence[Element],
    insertions: Sequence[DiagonalElement | None] | None = None,
    mode: str = "paper",
    bound: int | None = None,
) -> DiagonalElement:
    """``k_n(d_1 a_1, ..., d_n a_n) = Σ_π Ê(π)(...) μ(π, 1_n)``.

    ``Ê(π)`` is multilinear, so evaluating it on the factors directly is the
    same as expanding every factor into letters and summing.
    """
    check_mode(mode)
    if n != len(factors):
        raise ValueError(f"order {n} but {len(factors)} factors")
    _check_factors(factors)
    vals = _with_insertions(factors, insertions)
    acc = DiagonalElement()
    for p in enumerate_nc(n, bound=bound):
        d = _e_hat_values(p, vals, mode)
        if d:
            acc = acc + d.scale(mobius_to_top(p))
    return acc


def moment_general(
    n: int,
    factor: Element,
    insertions: Sequence[DiagonalElement | None] | None = None,
    mode: str = "paper",
) -> DiagonalElement:
    """``E(d_1 a d_2 a ... d_n a)`` by direct multiplication."""
    check_mode(mode)
    if n < 1:
        raise ValueError("order must be >= 1")
    _check_factors([factor])
    vals = _with_insertions([factor] * n, insertions)
    acc = vals[0]
    for x in vals[1:]:
        if not acc:
            break
        acc = multiply(acc, x)
    return expectation(acc, mode)


def moment_expanded(
    n: int,
    factor: Element,
    insertions: Sequence[DiagonalElement | None] | None = None,
    mode: str = "paper",
) -> DiagonalElement:
    """Same moment, summed letter tuple by letter tuple with coefficient products.

    Used as an independent check on :func:`moment_general`.
    """
    check_mode(mode)
    letters = factor.letters()
    ins = list(insertions) if insertions is not None else [None] * n
    acc = DiagonalElement()

    def rec(j: int, prod: Element | None, coeff: GaussQ):
        nonlocal acc
        if j == n:
            acc = acc + expectation(prod, mode).scale(coeff)
            return
        for w, u, c in letters:
            x = letter_element(w, u)
            if ins[j] is not None:
                x = x.left_diag(ins[j])
            nxt = x if prod is None else multiply(prod, x)
            if nxt:
                rec(j + 1, nxt, coeff * c)

    rec(0, None, GaussQ(1))
    return acc


def moments_from_cumulants(
    spec: Mapping[int, object],
    n: int,
    vertices: Iterable[str] | None = None,
    bound: int | None = None,
):
    """``Σ_{π ∈ NC(n)} Π_{V ∈ π} k_{|V|}`` for central cumulants.

    ``spec`` maps block sizes to scalars or to diagonal elements; a
    diagonal value must be a constant multiple of the identity over
    ``vertices`` or the chain is refused.
    """
    if n < 1:
        raise ValueError("order must be >= 1")
    scalars: dict[int, GaussQ] = {}
    for k, v in spec.items():
        if isinstance(v, DiagonalElement):
            if vertices is None:
                raise ValueError("diagonal cumulants need the vertex set for the centrality check")
            c = v.central_value(vertices)
            if c is None:
                raise NonCentralError(f"cumulant of order {k} is not central: {v.to_json()}")
            v = c
        v = GaussQ.coerce(v)
        if v:
            scalars[int(k)] = v
    total = GaussQ(0)
    if not scalars:
        guard(n, bound)
        return _plain(total)
    for p in enumerate_nc_sizes(n, scalars, bound=bound):
        term = GaussQ(1)
        for b in p.blocks:
            term = term * scalars[len(b)]
        total = total + term
    return _plain(total)


class NonCentralError(ValueError):
    """A cumulant handed to the scalar moment chain is not a multiple of the identity."""


def _plain(x: GaussQ):
    if x.im:
        return x
    return int(x.re) if x.re.denominator == 1 else Fraction(x.re)


def generating_operator(g: DirectedGraph) -> Element:
    """``Σ_e (L_e + L_e^*)`` over all edges."""
    return generator_sum(g.path(e.id) for e in sorted(g.edges, key=lambda e: e.id))


def cumulant_report(n: int, factors, insertions=None, mode: str = "paper", bound: int | None = None) -> dict:
    """JSON-ready cumulant result; ``mu`` is only present for single-letter factors."""
    value = cumulant_general(n, factors, insertions, mode, bound)
    out = {"order": n, "mode": mode, "value": value.to_json()}
    if all(len(a) == 1 for a in factors) and insertions is None:
        word = LetterWord(tuple(next(iter(a.letters()))[:2] for a in factors))
        m = mu_coefficient(word, mode, bound)
        out["connected_set_size"] = len(m.connected)
        out["mu"] = m.mu
    return out


__all__ = [
    "LetterWord",
    "MuResult",
    "NonCentralError",
    "ResourceGuardError",
    "connected_set",
    "cumulant_general",
    "cumulant_letters",
    "cumulant_report",
    "e_hat",
    "full_expectation",
    "generating_operator",
    "moment_expanded",
    "moment_general",
    "moments_from_cumulants",
    "mu_coefficient",
]
