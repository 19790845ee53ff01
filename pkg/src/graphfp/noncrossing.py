"""Noncrossing partitions NC(n): enumeration, refinement order, Möbius function.

Partitions are generated by choosing the block that contains the first
index; the gaps it leaves are independent subproblems, so every output is
noncrossing by construction.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable

DEFAULT_MAX_NC = 12


class ResourceGuardError(RuntimeError):
    """A computation was refused because it exceeds a configured bound."""


def max_nc() -> int:
    raw = os.environ.get("GRAPHFP_MAX_NC")
    if raw is None:
        return DEFAULT_MAX_NC
    try:
        return int(raw)
    except ValueError:
        raise ResourceGuardError(f"GRAPHFP_MAX_NC must be an integer, got {raw!r}") from None


def guard(n: int, bound: int | None = None) -> None:
    bound = max_nc() if bound is None else bound
    if n > bound:
        raise ResourceGuardError(f"partition order {n} exceeds bound {bound} (GRAPHFP_MAX_NC / --max-nc)")


@dataclass(frozen=True)
class NoncrossingPartition:
    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(b)) for b in self.blocks))
        object.__setattr__(self, "blocks", blocks)
        flat = sorted(i for b in blocks for i in b)
        if any(not b for b in blocks) or flat != list(range(1, self.n + 1)):
            raise ValueError(f"blocks {blocks} do not partition 1..{self.n}")
        if not _is_noncrossing(blocks):
            raise ValueError(f"blocks {blocks} are crossing")

    @classmethod
    def _trusted(cls, n: int, blocks) -> "NoncrossingPartition":
        p = cls.__new__(cls)
        object.__setattr__(p, "n", n)
        object.__setattr__(p, "blocks", tuple(sorted(blocks)))
        return p

    def __len__(self):
        return len(self.blocks)

    def block_of(self) -> dict[int, int]:
        return {i: k for k, b in enumerate(self.blocks) for i in b}

    def to_json(self) -> dict:
        return {"n": self.n, "blocks": [list(b) for b in self.blocks]}

    def __str__(self):
        return "".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)


def _is_noncrossing(blocks) -> bool:
    where = {i: k for k, b in enumerate(blocks) for i in b}
    for b in blocks:
        for x, y in zip(b, b[1:]):
            # anything strictly between consecutive members must not leave the interval
            inner = {where[i] for i in range(x + 1, y)}
            for k in inner:
                if any(i < x or i > y for i in blocks[k]):
                    return False
    return True


def from_json(doc: dict) -> NoncrossingPartition:
    return NoncrossingPartition(int(doc["n"]), tuple(tuple(b) for b in doc["blocks"]))


def zero(n: int) -> NoncrossingPartition:
    return NoncrossingPartition._trusted(n, tuple((i,) for i in range(1, n + 1)))


def one(n: int) -> NoncrossingPartition:
    return NoncrossingPartition._trusted(n, (tuple(range(1, n + 1)),))


FILTERS = {
    "all": None,
    "pairings": lambda k: k == 2,
    "even_blocks": lambda k: k % 2 == 0,
}


@lru_cache(maxsize=None)
def _gen_cached(lo: int, hi: int, ok: Callable[[int], bool] | None) -> list[list[tuple[int, ...]]]:
    """All noncrossing partitions of lo..hi whose block sizes satisfy ``ok``."""
    if lo > hi:
        return [[]]
    out = []

    def choose(start: int, chosen: list[int]):
        # chosen = members of the block containing lo, increasing
        if ok is None or ok(len(chosen)):
            out.extend(_combine(chosen, hi, ok))
        for j in range(start, hi + 1):
            chosen.append(j)
            choose(j + 1, chosen)
            chosen.pop()

    choose(lo + 1, [lo])
    return out


def _combine(block: list[int], hi: int, ok):
    bounds = block + [hi + 1]
    parts = [_gen_cached(a + 1, b - 1, ok) for a, b in zip(bounds, bounds[1:])]
    results = [[tuple(block)]]
    for options in parts:
        if not options:
            return []
        results = [r + o for r in results for o in options]
    return results


def enumerate_nc(n: int, filter: str = "all", bound: int | None = None) -> list[NoncrossingPartition]:
    """All noncrossing partitions of 1..n, optionally only pairings or even-sized blocks."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if filter not in FILTERS:
        raise ValueError(f"filter must be one of {sorted(FILTERS)}")
    guard(n, bound)
    return list(_enumerate(n, filter))


def enumerate_nc_sizes(n: int, sizes: Iterable[int], bound: int | None = None) -> list[NoncrossingPartition]:
    """Partitions whose block sizes all lie in ``sizes`` (pruned during generation)."""
    guard(n, bound)
    allowed = frozenset(sizes)
    return [NoncrossingPartition._trusted(n, bl) for bl in _gen_cached(1, n, allowed.__contains__)]


@lru_cache(maxsize=64)
def _enumerate(n: int, filter: str) -> tuple[NoncrossingPartition, ...]:
    parts = _gen_cached(1, n, FILTERS[filter])
    return tuple(NoncrossingPartition._trusted(n, bl) for bl in parts)


def catalan(k: int) -> int:
    if k < 0:
        raise ValueError("k must be >= 0")
    return math.comb(2 * k, k) // (k + 1)


def leq(p: NoncrossingPartition, q: NoncrossingPartition) -> bool:
    """Refinement order: every block of ``p`` sits inside a block of ``q``."""
    if p.n != q.n:
        raise ValueError(f"partitions of different sizes: {p.n} vs {q.n}")
    where = q.block_of()
    return all(len({where[i] for i in b}) == 1 for b in p.blocks)


_MOBIUS_MEMO: dict = {}


def mobius(p: NoncrossingPartition, q: NoncrossingPartition) -> int:
    """Möbius function of NC(n) by the defining recursion over the interval [p, q]."""
    if not leq(p, q):
        raise ValueError(f"{p} is not below {q}")
    key = (p, q)
    if key in _MOBIUS_MEMO:
        return _MOBIUS_MEMO[key]
    guard(p.n)
    interval = [r for r in _enumerate(p.n, "all") if leq(p, r) and leq(r, q)]
    # more blocks = lower in the lattice; process bottom-up
    interval.sort(key=lambda r: -len(r))
    mu: dict = {}
    for r in interval:
        if r == p:
            mu[r] = 1
        else:
            mu[r] = -sum(m for s, m in mu.items() if leq(s, r))
        _MOBIUS_MEMO[(p, r)] = mu[r]
    return mu[q]


def kreweras(p: NoncrossingPartition) -> NoncrossingPartition:
    """Kreweras complement, as the cycles of ``pi^{-1} gamma`` with gamma = (1 2 ... n)."""
    n = p.n
    inv = {}
    for b in p.blocks:
        for x, y in zip(b, b[1:] + b[:1]):
            inv[y] = x
    perm = {i: inv[i % n + 1] for i in range(1, n + 1)}
    seen, blocks = set(), []
    for i in range(1, n + 1):
        if i in seen:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j)
            j = perm[j]
        blocks.append(tuple(sorted(cyc)))
    return NoncrossingPartition._trusted(n, blocks)


def mobius_to_top(p: NoncrossingPartition) -> int:
    """``mu(p, 1_n)`` via the product over Kreweras blocks; must match :func:`mobius`."""
    out = 1
    for b in kreweras(p).blocks:
        k = len(b)
        out *= (-1) ** (k - 1) * catalan(k - 1)
    return out
