from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from helpers import CIRCLE, D, THETA, fork_graph, load, load_dir
from moykv.composition import (
    complement, composition_rhs, composition_terms, labellings, relabel, sigma, vertex_term,
)
from moykv.diagram import DiagramError
from moykv.laurent import qbinom, qint
from moykv.moy_bracket import bracket_planar, graph_rotation, vertex_legs

PLANAR = load_dir("moy") + load_dir("mostly2")
PAIRS = [(1, 1), (1, 2), (1, 3), (2, 2)]


def test_labelling_counts():
    assert labellings(CIRCLE) == [{0: 0}, {0: 1}]
    for m in range(1, 5):
        assert len(labellings(D("moy", [("cup", 0, m, "lu"), ("cap", 0)]))) == m + 1
    labs = labellings(THETA)
    assert len(labs) == 4
    e = next(a.id for a in THETA.arcs if a.color == 2)
    assert sorted(f[e] for f in labs) == [0, 1, 1, 2]
    with pytest.raises(DiagramError):
        labellings(load("knotted", "twisted_theta"))


def test_vertex_terms():
    s = 1
    full = {a.id: a.color for a in THETA.arcs}
    assert vertex_term(THETA, s, full) == 0
    e, e1, e2 = vertex_legs(THETA, s)
    f = {e: 1, e1: 1, e2: 0}
    assert vertex_term(THETA, s, f) == Fraction(1, 2)
    assert vertex_term(THETA, s, complement(THETA, f)) == Fraction(-1, 2)


@pytest.mark.parametrize("M,N", PAIRS)
def test_sigma_on_a_circle(M, N):
    assert sigma(CIRCLE, {0: 1}, M, N) == -N
    assert sigma(CIRCLE, {0: 0}, M, N) == M
    assert composition_rhs(CIRCLE, M, N) == qint(M + N)


def test_relabel_drops_empty_edges():
    e = next(a.id for a in THETA.arcs if a.color == 2)
    f = next(f for f in labellings(THETA) if f[e] == 1)
    g = relabel(THETA, f)
    assert g.colors() == {1} and g.count("mrg", "spl") == 0
    assert graph_rotation(relabel(THETA, {a.id: 0 for a in THETA.arcs})) == 0


def test_closed_form_examples():
    for m in (1, 2):
        c = D("moy", [("cup", 0, m, "ru"), ("cap", 0)])
        assert composition_rhs(c, 1, 1) == qbinom(2, m)
    assert composition_rhs(THETA, 1, 3) == bracket_planar(THETA, 4)


def test_terms_beyond_the_cutoff_vanish():
    for f, _, a, b in composition_terms(THETA, 1, 1):
        if max(f.values()) > 1 or max(complement(THETA, f).values()) > 1:
            assert a.is_zero() or b.is_zero()


@pytest.mark.parametrize("g", PLANAR, ids=lambda g: g.name)
@pytest.mark.parametrize("M,N", PAIRS)
def test_composition_product(g, M, N):
    assert composition_rhs(g, M, N) == bracket_planar(g, M + N)


def test_corpus_has_enough_small_graphs():
    assert sum(len(g.arcs) <= 6 for g in PLANAR) >= 8


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.booleans(), st.integers(1, 2)), max_size=3),
       st.integers(1, 2), st.integers(1, 2), st.sampled_from(PAIRS))
def test_random_graphs(op_list, a, b, pair):
    g = fork_graph(op_list, a, b)
    M, N = pair
    assert composition_rhs(g, M, N) == bracket_planar(g, M + N)
    assert composition_rhs(g, N, M) == bracket_planar(g, M + N)
