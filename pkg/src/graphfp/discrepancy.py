"""Demo tables and cross-checks that compare derivation chains against direct evaluation.

Nothing here decides which side is right; mismatches are reported as data.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import MODES, DiagonalElement, Exp, expectation, iter_letter_words, letter_element, multiply
from .corpus import bouquet, circulant, desk_corpus
from .cumulants import (
    cumulant_general,
    cumulant_letters,
    e_hat,
    full_expectation,
    generating_operator,
    moments_from_cumulants,
    mu_coefficient,
)
from .graph import DirectedGraph
from .lattice import build_lattice_path, has_star_axis_property
from .noncrossing import catalan, enumerate_nc, guard, mobius_to_top


def _powers(x, n: int):
    """``x, x^2, ..., x^n``."""
    out = [x]
    for _ in range(n - 1):
        out.append(multiply(out[-1], x))
    return out


def _scalar(d: DiagonalElement, v: str):
    x = d[v]
    return int(x.re) if not x.im and x.re.denominator == 1 else str(x)


def scalar_cumulants(moments: dict[int, Fraction | int], order: int) -> dict[int, Fraction | int]:
    """Free cumulants from scalar moments by Möbius inversion over NC(n)."""
    out = {}
    for n in range(1, order + 1):
        total = 0
        for p in enumerate_nc(n):
            term = mobius_to_top(p)
            for b in p.blocks:
                term *= moments[len(b)]
                if not term:
                    break
            total += term
        out[n] = total
    return out


def demo_gn(N: int, order: int = 8) -> list[dict]:
    """Moments and cumulants of the generating operator of the one-vertex N-loop graph.

    ``chain`` columns come from the cumulant sequence ``{2: 2N}`` pushed
    through the NC sum.  ``direct`` columns multiply out ``T^n`` and apply E
    in each mode; their cumulants come from Möbius inversion (one vertex,
    so the diagonal is scalar).
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    guard(order)
    g = bouquet(N)
    T = generating_operator(g)
    pw = _powers(T, order)
    direct = {m: {n: _scalar(expectation(pw[n - 1], m), "v") for n in range(1, order + 1)} for m in MODES}
    direct_k = {m: scalar_cumulants(direct[m], order) for m in MODES}
    rows = []
    for n in range(1, order + 1):
        chain_m = moments_from_cumulants({2: 2 * N}, n)
        chain_k = 2 * N if n == 2 else 0
        rows.append(
            {
                "n": n,
                "chain_moment": chain_m,
                "direct_moment_paper": direct["paper"][n],
                "direct_moment_fock": direct["fock"][n],
                "chain_cumulant": chain_k,
                "direct_cumulant_paper": direct_k["paper"][n],
                "direct_cumulant_fock": direct_k["fock"][n],
                "moment_match_paper": chain_m == direct["paper"][n],
                "cumulant_match_paper": chain_k == direct_k["paper"][n],
            }
        )
    return rows


def demo_circulant(N: int, order: int = 6) -> list[dict]:
    """Cumulants of T on the circulant graph C_N against ``2 μ_n`` times the identity."""
    if N < 1:
        raise ValueError("N must be >= 1")
    guard(order)
    g = circulant(N)
    T = generating_operator(g)
    e = g.path("e1")
    verts = sorted(g.vertices)
    rows = []
    for n in range(1, order + 1):
        k = cumulant_general(n, [T] * n, mode="paper")
        mu = mu_coefficient([(e, Exp.ONE), (e, Exp.STAR)] * (n // 2)).mu if n % 2 == 0 else 0
        # block form: Σ_j μ_n (L_{v_j} + L_{v_{j+1}})
        blocks = DiagonalElement()
        if n % 2 == 0:
            for j in range(N):
                blocks = blocks + DiagonalElement({verts[j]: mu, verts[(j + 1) % N]: mu})
        c = k.central_value(verts)
        rows.append(
            {
                "n": n,
                "mu": mu,
                "cumulant": k.to_json(),
                "central": c is not None,
                "per_vertex": str(c) if c is not None else None,
                "expected_per_vertex": 2 * mu,
                "block_form_match": k == blocks,
            }
        )
    return rows


def star_axis_survey(graphs: dict[str, DirectedGraph], max_total: int = 6, mode: str = "paper", keep: int = 20) -> dict:
    """Necessity failures and converse failures of the *-axis criterion over every path-letter word."""
    necessity, converse = [], []
    n_words = n_converse = 0
    for name, g in graphs.items():
        stack: dict[int, object] = {}
        for word in iter_letter_words(g, max_total):
            n_words += 1
            k = len(word)
            # depth-first order: reuse the product of the prefix
            prev = stack.get(k - 1)
            x = letter_element(*word[-1])
            prod = x if k == 1 else (multiply(prev, x) if prev else prev)
            stack[k] = prod
            e = expectation(prod, mode) if prod else DiagonalElement()
            if e:
                if not has_star_axis_property(build_lattice_path(word)):
                    necessity.append({"graph": name, "word": _word_str(word)})
            elif prod and sum(len(w) if u is Exp.ONE else -len(w) for w, u in word) == 0:
                n_converse += 1
                if len(converse) < keep:
                    converse.append({"graph": name, "word": _word_str(word)})
    return {
        "mode": mode,
        "max_total_length": max_total,
        "words_checked": n_words,
        "necessity_failures": necessity,
        "converse_failure_count": n_converse,
        "converse_failure_samples": converse,
    }


def _word_str(word) -> str:
    return "[" + ",".join(f"({w},{u.value})" for w, u in word) + "]"


def consistency_survey(graphs: dict[str, DirectedGraph], max_total: int = 4, mode: str = "paper", keep: int = 20) -> dict:
    """Where ``μ·E`` and the Möbius sum disagree, and where a connected π has ``Ê(π) != E``."""
    mismatch, conn_bad = [], []
    n_mismatch = n_conn = n_words = 0
    for name, g in graphs.items():
        for word in iter_letter_words(g, max_total):
            n_words += 1
            general = cumulant_general(len(word), [letter_element(w, u) for w, u in word], mode=mode)
            letters = cumulant_letters(word, mode)
            if general != letters:
                n_mismatch += 1
                if len(mismatch) < keep:
                    mismatch.append(
                        {"graph": name, "word": _word_str(word), "mobius_sum": general.to_json(), "mu_times_E": letters.to_json()}
                    )
            full = full_expectation(word, mode)
            if full:
                for p in mu_coefficient(word, mode).connected:
                    if e_hat(p, word, mode) != full:
                        n_conn += 1
                        if len(conn_bad) < keep:
                            conn_bad.append({"graph": name, "word": _word_str(word), "partition": str(p)})
    return {
        "mode": mode,
        "max_total_length": max_total,
        "words_checked": n_words,
        "cumulant_mismatch_count": n_mismatch,
        "cumulant_mismatch_samples": mismatch,
        "connected_eval_failure_count": n_conn,
        "connected_eval_failure_samples": conn_bad,
    }


def mu_symmetry_survey(N: int = 3, max_n: int = 6) -> dict:
    """Alternating μ-coefficients on C_N, both starting exponents, every edge, both modes."""
    g = circulant(N)
    out = {}
    for mode in MODES:
        rows = []
        for n in range(2, max_n + 1, 2):
            for e in sorted(g.edges, key=lambda e: e.id):
                w = g.path(e.id)
                a = mu_coefficient([(w, Exp.ONE), (w, Exp.STAR)] * (n // 2), mode).mu
                b = mu_coefficient([(w, Exp.STAR), (w, Exp.ONE)] * (n // 2), mode).mu
                rows.append({"n": n, "edge": e.id, "mu_1_star": a, "mu_star_1": b, "symmetric": a == b})
        out[mode] = rows
    return out


def mode_examples() -> list[dict]:
    """Expectation values on which the two modes disagree."""
    g = circulant(3)
    e1 = g.path("e1")
    t = bouquet(1)
    T = generating_operator(t)
    rows = []
    for label, x in (
        ("L[e1] L[e1]* on C3", multiply(letter_element(e1, Exp.ONE), letter_element(e1, Exp.STAR))),
        ("L[e1]* L[e1] on C3", multiply(letter_element(e1, Exp.STAR), letter_element(e1, Exp.ONE))),
        ("T^2 on G1", _powers(T, 2)[-1]),
        ("T^4 on G1", _powers(T, 4)[-1]),
    ):
        rows.append({"element": label, **{m: expectation(x, m).to_json() for m in MODES}})
    return rows


def discrepancy_report(N: int = 1, order: int = 6, include_surveys: bool = True) -> dict:
    rep = {
        "generating_operator_one_vertex": demo_gn(N, order),
        "mode_examples": mode_examples(),
        "mu_symmetry_C3": mu_symmetry_survey(3, min(order, 6)),
    }
    if include_surveys:
        corpus = desk_corpus()
        rep["star_axis"] = star_axis_survey(corpus, 6, "paper")
        rep["cumulant_consistency"] = {m: consistency_survey(corpus, 4, m) for m in MODES}
    return rep


def catalan_chain(N: int, n: int) -> int:
    """Closed form ``(2N)^{n/2} c_{n/2}`` for even n, 0 for odd n."""
    return (2 * N) ** (n // 2) * catalan(n // 2) if n % 2 == 0 else 0
