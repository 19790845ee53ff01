import pytest

from graphfp.algebra import expectation, iter_letter_words, word_element
from graphfp.corpus import bouquet, circulant, two_cycle
from graphfp.fock import (
    TruncationError,
    build_space,
    matrix_to_json,
    operator_matrix,
    oracle_expectation,
    oracle_survey,
)
from graphfp.graph import enumerate_paths, vertex
from graphfp.noncrossing import ResourceGuardError

C3 = circulant(3)
G1 = bouquet(1)


def test_build_space_dims():
    assert build_space(G1, 3).dim == 4
    assert build_space(C3, 1).dim == 6
    assert build_space(bouquet(2), 2).dim == 7
    sp = build_space(C3, 2)
    assert list(sp.basis) == enumerate_paths(C3, 2)
    assert all(sp.index[w] == i for i, w in enumerate(sp.basis))
    with pytest.raises(ResourceGuardError):
        build_space(bouquet(3), 12, max_dim=1000)


def test_operator_matrix_examples():
    sp = build_space(C3, 1)
    e1 = C3.path("e1")
    m = operator_matrix(e1, 1, sp).tocoo()
    assert list(zip(m.row, m.col)) == [(sp.index[e1], sp.index[vertex("v2")])]
    m = operator_matrix(e1, "*", sp).tocoo()
    assert list(zip(m.row, m.col)) == [(sp.index[vertex("v2")], sp.index[e1])]
    p = operator_matrix(vertex("v1"), 1, sp).toarray()
    fixed = [w for w in sp.basis if p[sp.index[w], sp.index[w]]]
    assert fixed == [vertex("v1"), e1]
    assert matrix_to_json(operator_matrix(e1, 1, sp))["entries"] == [[sp.index[e1], sp.index[vertex("v2")], 1]]


def test_oracle_examples():
    e1 = C3.path("e1")
    sp = build_space(C3, 2)
    assert oracle_expectation([(e1, "*"), (e1, 1)], sp) == {"v2": 1}
    assert oracle_expectation([(e1, 1), (e1, "*")], sp) == 0
    l = G1.path("l")
    sp4 = build_space(G1, 4)
    # annihilators act first on the vertex vector, so this word vanishes
    assert oracle_expectation([(l, 1), (l, 1), (l, "*"), (l, "*")], sp4) == 0
    assert oracle_expectation([(l, "*"), (l, "*"), (l, 1), (l, 1)], sp4) == {"v": 1}


def test_truncation_refusal():
    l = G1.path("l")
    with pytest.raises(TruncationError):
        oracle_expectation([(l, "*"), (l, 1), (l, 1)], build_space(G1, 1))


def test_adjointness():
    for g in (C3, bouquet(2), two_cycle()):
        sp = build_space(g, 4)
        for w in enumerate_paths(g, 2):
            a = operator_matrix(w, 1, sp)
            s = operator_matrix(w, "*", sp)
            assert (a.T != s).nnz == 0


def test_left_relation_on_safe_subspace():
    for g in (C3, bouquet(2), two_cycle()):
        sp = build_space(g, 5)
        for w in enumerate_paths(g, 2):
            if w.is_vertex:
                continue
            lhs = (operator_matrix(w, "*", sp) @ operator_matrix(w, 1, sp)).toarray()
            rhs = operator_matrix(vertex(w.dst), 1, sp).toarray()
            safe = [i for i, h in enumerate(sp.basis) if len(h) + len(w) <= sp.length]
            assert (lhs[:, safe] == rhs[:, safe]).all()


def test_agrees_with_engine_on_small_words():
    for g in (G1, C3, bouquet(2)):
        sp = build_space(g, 4)
        for word in iter_letter_words(g, 3, vertex_letters=True):
            assert oracle_expectation(word, sp) == expectation(word_element(word), "fock"), word


def test_survey_walker_matches_per_word_oracle():
    g = bouquet(2)
    sp = build_space(g, 4)
    rep = oracle_survey(g, 3, 4, "G1^2", vertex_letters=True)
    words = list(iter_letter_words(g, 3, vertex_letters=True))
    assert rep.words_checked == len(words) and rep.mismatches == []
    nonzero = sum(1 for w in words if oracle_expectation(w, sp))
    assert nonzero > 0
    with pytest.raises(TruncationError):
        oracle_survey(g, 5, 4)


def test_survey_walker_reports_mismatches(monkeypatch):
    import graphfp.algebra as alg

    real = alg.expectation
    monkeypatch.setattr(alg, "expectation", lambda x, mode: real(x, "paper"))
    rep = oracle_survey(G1, 2, 2)
    assert [m["word"] for m in rep.mismatches] == [[["l", "1"], ["l", "*"]]]


def test_oracle_equivalence_on_all_graphs_with_three_edges():
    from graphfp.corpus import small_graphs

    for g in small_graphs(3):
        rep = oracle_survey(g, 5, 6)
        assert rep.mismatches == [], rep.to_json()
