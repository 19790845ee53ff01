from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from graphfp.algebra import (
    DiagonalElement,
    Element,
    Exp,
    expectation,
    generator_sum,
    iter_letter_words,
    letter_element,
    multiply,
    product,
)
from graphfp.corpus import bouquet, circulant, desk_corpus, line, two_cycle
from graphfp.cumulants import (
    LetterWord,
    NonCentralError,
    cumulant_general,
    cumulant_letters,
    e_hat,
    full_expectation,
    generating_operator,
    moment_expanded,
    moment_general,
    moments_from_cumulants,
    mu_coefficient,
)
from graphfp.gaussq import GaussQ
from graphfp.graph import GraphError
from graphfp.noncrossing import NoncrossingPartition, enumerate_nc, mobius, one

G1 = bouquet(1)
l = G1.path("l")
l6 = G1.path(["l"] * 6)
E = line(1)
e = E.path("e1")
ONE, STAR = Exp.ONE, Exp.STAR


def _oracle_e_hat(blocks, vals, mode):
    """Recursive evaluation on the block of the first index, independent of the engine's ordering trick."""
    if not vals:
        return None
    first = min(blocks, key=lambda b: b[0])
    rest = [b for b in blocks if b is not first]
    acc = None
    for k, i in enumerate(first):
        acc = vals[i] if acc is None else multiply(acc, vals[i])
        nxt = first[k + 1] if k + 1 < len(first) else None
        if nxt is not None:
            inner = [b for b in rest if first[k] < b[0] < nxt]
            if inner:
                d = _oracle_e_hat(inner, vals, mode)
                acc = multiply(acc, d.to_element())
    d0 = expectation(acc, mode)
    after = [b for b in rest if b[0] > first[-1]]
    if after:
        d1 = _oracle_e_hat(after, vals, mode)
        return d0 * d1
    return d0


def oracle_e_hat(pi, word, mode):
    vals = {i + 1: v for i, v in enumerate(LetterWord(tuple(word)).values())}
    return _oracle_e_hat(list(pi.blocks), vals, mode)


def test_e_hat_examples():
    assert e_hat(one(2), [(l6, ONE), (l6, STAR)]) == {"v": 1}
    pi = NoncrossingPartition(4, ((1, 4), (2, 3)))
    word = [(e, ONE), (e, STAR), (e, ONE), (e, STAR)]
    assert e_hat(pi, word, "paper") == {"v0": 1}
    assert oracle_e_hat(pi, word, "paper") == {"v0": 1}
    pi = NoncrossingPartition(3, ((1, 2), (3,)))
    assert e_hat(pi, [(e, ONE), (e, STAR), (e, ONE)]) == 0
    with pytest.raises(ValueError):
        e_hat(one(3), word)


@pytest.mark.parametrize("mode", ["fock", "paper"])
def test_e_hat_matches_recursive_oracle(mode):
    for g in (bouquet(2), two_cycle(), line(2)):
        for word in iter_letter_words(g, 4):
            if len(word) < 2:
                continue
            for pi in enumerate_nc(len(word)):
                assert e_hat(pi, word, mode) == oracle_e_hat(pi, word, mode), (word, pi)


def test_mu_examples():
    m = mu_coefficient([(l6, ONE), (l6, STAR)])
    assert m.mu == 1 and m.connected == (one(2),)
    m = mu_coefficient([(e, ONE), (e, STAR), (e, ONE), (e, STAR)])
    assert m.mu == -1
    assert {p.blocks for p in m.connected} == {((1, 2, 3, 4),), ((1, 2), (3, 4)), ((1, 4), (2, 3))}
    assert mu_coefficient([(e, ONE), (e, ONE)]).mu == 0


def test_mu_uses_the_recursive_mobius_values():
    for word in iter_letter_words(bouquet(2), 4):
        m = mu_coefficient(word)
        assert m.mu == sum(mobius(p, one(len(word))) for p in m.connected)


def test_cumulant_letters_examples():
    assert cumulant_letters([(l6, ONE), (l6, STAR)]) == {"v": 1}
    for g in (circulant(3), bouquet(2), line(2)):
        for edge in g.edges:
            w = g.path(edge.id)
            assert cumulant_letters([(w, ONE), (w, STAR)], "paper") == {edge.src: 1}
    assert cumulant_letters([(e, ONE), (e, STAR), (e, ONE)]) == 0


def test_cumulant_general_examples():
    A = generator_sum([l6])
    assert cumulant_general(2, [A, A], mode="paper") == {"v": 2}
    for N in (1, 2, 3):
        T = generating_operator(bouquet(N))
        assert cumulant_general(2, [T, T], mode="paper") == {"v": 2 * N}
    a = letter_element(e) + DiagonalElement({"v0": 5}).to_element()
    assert cumulant_general(1, [a]) == expectation(a, "paper") == {"v0": 5}
    with pytest.raises(GraphError):
        cumulant_general(1, [multiply(letter_element(e), letter_element(e, STAR))])
    with pytest.raises(ValueError):
        cumulant_general(2, [a])


def test_moment_examples():
    for N in (1, 2, 3):
        T = generating_operator(bouquet(N))
        assert moment_general(2, T) == {"v": 2 * N}
        assert moment_general(3, T) == 0
        assert moment_general(1, T) == expectation(T, "paper")


def test_moments_from_cumulants_examples():
    for N in (1, 2, 3):
        assert moments_from_cumulants({2: 2 * N}, 4) == 8 * N * N
        assert moments_from_cumulants({2: 2 * N}, 5) == 0
    assert moments_from_cumulants({2: 1}, 6) == 5
    assert moments_from_cumulants({}, 3) == 0
    assert moments_from_cumulants({1: Fraction(1, 2)}, 3) == Fraction(1, 8)
    # all partitions weighted by 1: Catalan count
    assert moments_from_cumulants({k: 1 for k in range(1, 7)}, 6) == 132


def test_central_gate():
    d = DiagonalElement({"v1": 2, "v2": 2})
    assert moments_from_cumulants({2: d}, 4, vertices=["v1", "v2"]) == 8
    with pytest.raises(NonCentralError):
        moments_from_cumulants({2: DiagonalElement({"v1": 2})}, 4, vertices=["v1", "v2"])
    with pytest.raises(ValueError):
        moments_from_cumulants({2: d}, 4)


def test_generating_operator():
    assert generating_operator(G1) == letter_element(l) + letter_element(l, STAR)
    c3 = circulant(3)
    T = generating_operator(c3)
    assert len(T) == 6 and T.is_letter_expansion()
    from graphfp.graph import DirectedGraph

    assert generating_operator(DirectedGraph.build(["v"], [])) == 0


def test_consistency_fock_exhaustive():
    for g in desk_corpus().values():
        for word in iter_letter_words(g, 4):
            letters = [letter_element(w, u) for w, u in word]
            assert cumulant_letters(word, "fock") == cumulant_general(len(word), letters, mode="fock"), word


def test_consistency_paper_when_each_vertex_emits_at_most_one_edge():
    for g in (bouquet(1), two_cycle(), circulant(3), circulant(4), line(3)):
        for word in iter_letter_words(g, 4):
            letters = [letter_element(w, u) for w, u in word]
            assert cumulant_letters(word, "paper") == cumulant_general(len(word), letters, mode="paper"), word


def test_consistency_paper_breaks_with_two_loops():
    g = bouquet(2)
    e1, e2 = g.path("e1"), g.path("e2")
    word = [(e1, ONE), (e1, STAR), (e2, ONE), (e2, STAR)]
    assert cumulant_letters(word, "paper") == 0
    assert cumulant_general(4, [letter_element(w, u) for w, u in word], mode="paper") == {"v": -1}


@pytest.mark.parametrize("mode", ["fock", "paper"])
def test_connected_partitions_evaluate_to_the_full_expectation(mode):
    for g in desk_corpus().values():
        for word in iter_letter_words(g, 4):
            full = full_expectation(word, mode)
            if full:
                for p in mu_coefficient(word, mode).connected:
                    assert e_hat(p, word, mode) == full


@pytest.mark.parametrize("g", [bouquet(1), bouquet(2), two_cycle(), circulant(3), circulant(4)], ids=str)
@pytest.mark.parametrize("mode", ["fock", "paper"])
def test_moment_cumulant_inversion(g, mode):
    T = generating_operator(g)
    verts = sorted(g.vertices)
    ks = {n: cumulant_general(n, [T] * n, mode=mode) for n in range(1, 5)}
    assert all(k.central_value(verts) is not None for k in ks.values())
    for n in range(1, 5):
        chain = moments_from_cumulants({m: ks[m] for m in range(1, n + 1)}, n, vertices=verts)
        assert DiagonalElement({v: chain for v in verts}) == moment_general(n, T, mode=mode)


def test_non_central_cumulants_are_refused():
    g = line(2)
    T = generating_operator(g)
    k2 = cumulant_general(2, [T, T])
    assert k2.central_value(g.vertices) is None
    with pytest.raises(NonCentralError):
        moments_from_cumulants({2: k2}, 4, vertices=g.vertices)


@pytest.mark.parametrize("g", [bouquet(1), bouquet(2), bouquet(3), circulant(3), circulant(4)], ids=str)
def test_odd_cumulants_vanish(g):
    T = generating_operator(g)
    for n in (1, 3, 5):
        assert cumulant_general(n, [T] * n, mode="paper") == 0


def test_circulant_non_alternating_words_vanish():
    import itertools

    g = circulant(3)
    w = g.path("e1")
    for n in range(1, 7):
        for exps in itertools.product((ONE, STAR), repeat=n):
            word = [(w, u) for u in exps]
            alternating = n % 2 == 0 and all(exps[i] != exps[i + 1] for i in range(n - 1))
            if not alternating:
                assert full_expectation(word) == 0
                for pi in enumerate_nc(n):
                    if len(pi) == 1:
                        assert e_hat(pi, word) == 0


def test_mu_symmetry_and_edge_independence_paper():
    g = circulant(3)
    for n in (2, 4, 6):
        vals = set()
        for edge in g.edges:
            w = g.path(edge.id)
            a = mu_coefficient([(w, ONE), (w, STAR)] * (n // 2)).mu
            b = mu_coefficient([(w, STAR), (w, ONE)] * (n // 2)).mu
            assert a == b
            vals.add(a)
        assert len(vals) == 1
    w = g.path("e1")
    assert [mu_coefficient([(w, ONE), (w, STAR)] * k).mu for k in (1, 2)] == [1, -1]


@st.composite
def letter_elements(draw):
    g = draw(st.sampled_from([bouquet(2), circulant(3), line(2)]))
    from graphfp.graph import enumerate_paths

    ws = enumerate_paths(g, 2)
    picks = draw(st.lists(st.tuples(st.sampled_from(ws), st.sampled_from([ONE, STAR])), min_size=1, max_size=3))
    c = st.integers(-2, 2).map(GaussQ)
    x = Element()
    for w, u in picks:
        x = x + letter_element(w, u, draw(c))
    return g, x


@given(letter_elements(), st.integers(1, 4), st.sampled_from(["fock", "paper"]), st.data())
@settings(max_examples=60, deadline=None)
def test_moment_matches_expanded_form(gx, n, mode, data):
    g, x = gx
    if not x:
        return
    ins = [
        data.draw(st.dictionaries(st.sampled_from(sorted(g.vertices)), st.integers(-2, 2))) for _ in range(n)
    ]
    ins = [DiagonalElement(d) for d in ins]
    assert moment_general(n, x, ins, mode) == moment_expanded(n, x, ins, mode)


def test_insertions_are_placed_before_their_letter():
    x = letter_element(e) + letter_element(e, STAR)
    ins = [DiagonalElement({"v0": 3}), DiagonalElement({"v1": 5})]
    # E(3 L_v0 (L_e + L_e*) 5 L_v1 (L_e + L_e*)) = 15 E(L_e L_e*) in paper mode
    assert moment_general(2, x, ins, "paper") == {"v0": 15}
    word = LetterWord(((e, ONE), (e, STAR)), tuple(ins))
    assert cumulant_letters(word) == {"v0": 15}
    assert product(word.values()) == multiply(letter_element(e).scale(3), letter_element(e, STAR).scale(5))
