"""Lattice-path picture of a letter word and the *-axis test for nonvanishing expectation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import Exp, letter_element, product
from .graph import Word


@dataclass(frozen=True)
class LatticePath:
    """``points is None`` is the empty path; otherwise the vertices of the polyline."""

    points: tuple[tuple[int, int], ...] | None
    vertex_letters: int = 0

    @property
    def is_empty(self) -> bool:
        return self.points is None

    @property
    def end(self) -> tuple[int, int] | None:
        return None if self.points is None else self.points[-1]

    def to_json(self):
        return "EMPTY" if self.points is None else [list(p) for p in self.points]

    def ascii(self) -> str:
        """Small text plot, one row per height, top row highest."""
        if self.points is None:
            return "EMPTY"
        pts = self.points
        if len(pts) == 1:
            return "*"
        xs = range(len(pts) - 1)
        ys = [p[1] for p in pts]
        lo, hi = min(ys), max(ys)
        rows = []
        for y in range(hi, lo - 1, -1):
            row = []
            for i in xs:
                a, b = ys[i], ys[i + 1]
                if b > a and a <= y < b:
                    row.append("/")
                elif b < a and b <= y < a:
                    row.append("\\")
                elif b == a and y == a:
                    row.append("_")
                else:
                    row.append(" ")
            rows.append(f"{y:>3} |" + "".join(row).rstrip())
        return "\n".join(rows)


def build_lattice_path(word: Sequence[tuple[Word, object]]) -> LatticePath:
    letters = [(w, Exp.parse(u)) for w, u in word]
    if not letters:
        raise ValueError("empty word")
    if not product(letter_element(w, u) for w, u in letters):
        return LatticePath(None)
    x = y = 0
    pts = [(0, 0)]
    nv = 0
    for w, u in letters:
        if w.is_vertex:
            y += 1
            nv += 1
        else:
            step = len(w) if u is Exp.ONE else -len(w)
            x += step
            y += step
        pts.append((x, y))
    return LatticePath(tuple(pts), nv)


def has_star_axis_property(p: LatticePath) -> bool:
    # vertex letters lift the path by one each; discount them
    return not p.is_empty and p.end[1] - p.vertex_letters == 0
