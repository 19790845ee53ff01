"""Canonical-form arithmetic for the *-algebra generated by creation operators.

Every product of creation/annihilation letters reduces to a single
canonical term ``L_alpha L_beta^*`` with ``r(alpha) == r(beta)``; an
:class:`Element` is a finite linear combination of such terms.

Two conditional expectations are provided:

``fock``
    the vertex-diagonal compression on the graph Hilbert space; only
    terms ``(v, v)`` survive.
``paper``
    additionally identifies ``L_a L_a^*`` with ``L_{s(a)}`` inside the
    expectation (never inside multiplication, where that identification
    is inconsistent as soon as a vertex emits two edges).
"""

from __future__ import annotations

import enum
from typing import Iterable, Iterator, NamedTuple

from .gaussq import GaussQ, ONE, from_json as coeff_from_json
from .graph import DirectedGraph, GraphError, Word, concat, strip_prefix, vertex


class Exp(str, enum.Enum):
    ONE = "1"
    STAR = "*"

    @classmethod
    def parse(cls, x) -> "Exp":
        if isinstance(x, Exp):
            return x
        if x in (1, "1"):
            return cls.ONE
        if x in ("*", "star"):
            return cls.STAR
        raise ValueError(f"exponent must be 1 or '*', got {x!r}")

    def flip(self) -> "Exp":
        return Exp.STAR if self is Exp.ONE else Exp.ONE


MODES = ("fock", "paper")


def check_mode(mode: str) -> str:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    return mode


class Term(NamedTuple):
    alpha: Word
    beta: Word

    @property
    def sort_key(self):
        a, b = self.alpha, self.beta
        return (len(a), len(b), a.edges, b.edges, a.src, b.src)

    @property
    def is_vertex(self) -> bool:
        return self.alpha.is_vertex and self.beta.is_vertex

    def letter(self) -> tuple[Word, Exp] | None:
        """The single letter this term is, if any."""
        a, b = self.alpha, self.beta
        if b.is_vertex:
            return (a, Exp.ONE)
        if a.is_vertex:
            return (b, Exp.STAR)
        return None

    def __str__(self):
        a, b = self.alpha, self.beta
        if self.is_vertex:
            return f"L[{a}]"
        if b.is_vertex:
            return f"L[{a}]"
        if a.is_vertex:
            return f"L[{b}]*"
        return f"L[{a}]L[{b}]*"


def term_product(s: Term, t: Term) -> Term | None:
    """``L_a L_b^* . L_c L_d^*`` in canonical form, or ``None`` for zero."""
    h = strip_prefix(t.alpha, s.beta)
    if h is not None:
        return Term(concat(s.alpha, h), t.beta)
    h = strip_prefix(s.beta, t.alpha)
    if h is not None:
        return Term(s.alpha, concat(t.beta, h))
    return None


def term_expectation(t: Term, mode: str) -> str | None:
    """Vertex carrying ``E(t)`` (coefficient one), or ``None``."""
    if mode == "fock":
        return t.alpha.src if t.is_vertex else None
    return t.alpha.src if t.alpha == t.beta else None


class DiagonalElement:
    """Finite map vertex -> coefficient; the codomain of the expectation."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict | None = None):
        c = {}
        for v, x in (coeffs or {}).items():
            x = GaussQ.coerce(x)
            if x:
                c[v] = x
        self.coeffs = c

    @classmethod
    def identity(cls, vertices: Iterable[str]) -> "DiagonalElement":
        return cls({v: ONE for v in vertices})

    @classmethod
    def projection(cls, v: str) -> "DiagonalElement":
        return cls({v: ONE})

    def __getitem__(self, v) -> GaussQ:
        return self.coeffs.get(v, GaussQ(0))

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, DiagonalElement):
            return self.coeffs == other.coeffs
        if isinstance(other, dict):
            return self == DiagonalElement(other)
        if other == 0:
            return not self.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other: "DiagonalElement") -> "DiagonalElement":
        c = dict(self.coeffs)
        for v, x in other.coeffs.items():
            c[v] = c.get(v, 0) + x
        return DiagonalElement(c)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __mul__(self, other):
        if isinstance(other, DiagonalElement):
            return DiagonalElement({v: x * other.coeffs[v] for v, x in self.coeffs.items() if v in other.coeffs})
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c) -> "DiagonalElement":
        c = GaussQ.coerce(c)
        return DiagonalElement({v: x * c for v, x in self.coeffs.items()})

    def adjoint(self) -> "DiagonalElement":
        return DiagonalElement({v: x.conjugate() for v, x in self.coeffs.items()})

    def central_value(self, vertices: Iterable[str]) -> GaussQ | None:
        """The scalar ``c`` when this equals ``c * 1_D`` over ``vertices``; else ``None``."""
        vals = {self[v] for v in vertices}
        return vals.pop() if len(vals) == 1 else None

    def to_element(self) -> "Element":
        return Element({Term(vertex(v), vertex(v)): x for v, x in self.coeffs.items()})

    def items(self):
        return sorted(self.coeffs.items())

    def to_json(self) -> dict:
        return {v: str(x) for v, x in self.items()}

    def __repr__(self):
        return f"DiagonalElement({self.to_json()})"


class Element:
    """Finite linear combination of canonical terms; zero coefficients are never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        t = {}
        for k, x in (terms or {}).items():
            x = GaussQ.coerce(x)
            if x:
                t[k] = x
        self.terms = t

    @classmethod
    def _raw(cls, terms: dict) -> "Element":
        e = cls.__new__(cls)
        e.terms = terms
        return e

    @classmethod
    def zero(cls) -> "Element":
        return cls._raw({})

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[Term, GaussQ]]:
        return iter(self.sorted_items())

    def sorted_items(self) -> list[tuple[Term, GaussQ]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key)

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "Element") -> "Element":
        t = dict(self.terms)
        for k, x in other.terms.items():
            y = t.get(k)
            y = x if y is None else y + x
            if y:
                t[k] = y
            else:
                t.pop(k, None)
        return Element._raw(t)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Element":
        c = GaussQ.coerce(c)
        if not c:
            return Element.zero()
        return Element._raw({k: x * c for k, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        if isinstance(other, DiagonalElement):
            return self.right_diag(other)
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, DiagonalElement):
            return self.left_diag(other)
        return self.scale(other)

    def left_diag(self, d: DiagonalElement) -> "Element":
        c = d.coeffs
        return Element({k: x * c[k.alpha.src] for k, x in self.terms.items() if k.alpha.src in c})

    def right_diag(self, d: DiagonalElement) -> "Element":
        c = d.coeffs
        return Element({k: x * c[k.beta.src] for k, x in self.terms.items() if k.beta.src in c})

    def adjoint(self) -> "Element":
        return adjoint(self)

    def is_letter_expansion(self) -> bool:
        return all(k.letter() is not None for k in self.terms)

    def letters(self) -> list[tuple[Word, Exp, GaussQ]]:
        out = []
        for k, x in self.sorted_items():
            lt = k.letter()
            if lt is None:
                raise GraphError(f"not a Fourier-letter expansion: term {k}")
            out.append((lt[0], lt[1], x))
        return out

    def path_support(self) -> set[Word]:
        return {lt[0] for k in self.terms if (lt := k.letter()) and not lt[0].is_vertex}

    def to_json(self) -> list:
        return [
            {**x.to_json(), "alpha": k.alpha.to_json(), "beta": k.beta.to_json()}
            for k, x in self.sorted_items()
        ]

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{x}*{k}" if x != 1 else str(k) for k, x in self.sorted_items())

    def __repr__(self):
        return f"Element({self})"


def letter_element(w: Word, exponent=Exp.ONE, coeff=1) -> Element:
    exponent = Exp.parse(exponent)
    if w.is_vertex:
        t = Term(w, w)
    elif exponent is Exp.ONE:
        t = Term(w, vertex(w.dst))
    else:
        t = Term(vertex(w.dst), w)
    return Element({t: coeff})


def term_element(t: Term, coeff=1) -> Element:
    return Element({t: coeff})


def multiply(x: Element, y: Element) -> Element:
    acc: dict = {}
    for s, a in x.terms.items():
        for t, b in y.terms.items():
            p = term_product(s, t)
            if p is None:
                continue
            c = a * b
            prev = acc.get(p)
            acc[p] = c if prev is None else prev + c
    return Element({k: v for k, v in acc.items() if v})


def product(xs: Iterable[Element]) -> Element:
    xs = list(xs)
    if not xs:
        raise ValueError("empty product")
    out = xs[0]
    for x in xs[1:]:
        if not out:
            return out
        out = multiply(out, x)
    return out


def adjoint(x: Element) -> Element:
    return Element._raw({Term(k.beta, k.alpha): c.conjugate() for k, c in x.terms.items()})


def expectation(x: Element, mode: str = "paper") -> DiagonalElement:
    check_mode(mode)
    acc: dict = {}
    for k, c in x.terms.items():
        v = term_expectation(k, mode)
        if v is not None:
            acc[v] = acc.get(v, 0) + c
    return DiagonalElement(acc)


def word_element(letters: Iterable[tuple[Word, object]]) -> Element:
    """Product of single letters ``L_w^u``."""
    return product(letter_element(w, u) for w, u in letters)


def generator_sum(words: Iterable[Word], coeff=1) -> Element:
    """``sum_w (L_w + L_w^*)``."""
    out = Element.zero()
    for w in words:
        out = out + letter_element(w, Exp.ONE, coeff) + letter_element(w, Exp.STAR, coeff)
    return out


class SupportDecomposition(NamedTuple):
    vertex_support: frozenset
    star_support: frozenset
    nonstar_support: frozenset

    def to_json(self) -> dict:
        return {
            "vertex_support": sorted(self.vertex_support),
            "star_support": sorted(str(w) for w in self.star_support),
            "nonstar_support": sorted([str(w), u.value] for w, u in self.nonstar_support),
        }


def support_decompose(x: Element) -> SupportDecomposition:
    if not x.is_letter_expansion():
        raise GraphError("not a Fourier-letter expansion")
    verts, exps = set(), {}
    for k in x.terms:
        w, u = k.letter()
        if w.is_vertex:
            verts.add(w.src)
        else:
            exps.setdefault(w, set()).add(u)
    star = frozenset(w for w, us in exps.items() if len(us) == 2)
    nonstar = frozenset((w, u) for w, us in exps.items() if len(us) == 1 for u in us)
    return SupportDecomposition(frozenset(verts), star, nonstar)


def element_from_json(doc: list, g: DirectedGraph) -> Element:
    if not isinstance(doc, list):
        raise GraphError("element document must be a list of terms")
    acc = Element.zero()
    for i, item in enumerate(doc):
        try:
            a = g.word_from_json(item["alpha"])
            b = g.word_from_json(item["beta"])
            c = coeff_from_json(item)
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, GraphError):
                raise
            raise GraphError(f"element term {i}: {exc}") from None
        if a.dst != b.dst:
            raise GraphError(f"element term {i}: ranges differ ({a.dst!r} vs {b.dst!r})")
        acc = acc + Element({Term(a, b): c})
    return acc


def iter_letter_words(g: DirectedGraph, max_total: int, vertex_letters: bool = False):
    """Every word of path letters ``L_w^u`` with ``Σ |w_j| <= max_total``, depth first.

    With ``vertex_letters`` the vertex projections are allowed too; they add
    nothing to the total, so at most ``max_total`` of them are used.
    """
    paths = [w for w in g.iter_paths(max_total) if not w.is_vertex]
    alphabet = [(w, u) for w in paths for u in (Exp.ONE, Exp.STAR)]
    if vertex_letters:
        alphabet = [(vertex(v), Exp.ONE) for v in sorted(g.vertices)] + alphabet

    def cost(w: Word) -> int:
        return len(w) if len(w) else 1

    def rec(prefix, budget):
        for w, u in alphabet:
            c = cost(w)
            if c <= budget:
                prefix.append((w, u))
                yield tuple(prefix)
                yield from rec(prefix, budget - c)
                prefix.pop()

    yield from rec([], max_total)
