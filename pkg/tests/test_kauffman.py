import pytest
from hypothesis import given, settings, strategies as st

from helpers import BOUQUET, KINK, UNKNOT, D, closure3, load, load_dir, uclosure
from moykv.diagram import DiagramError, mirror
from moykv.kauffman import (
    BudgetExceeded, clear_cache, delta, eliminate_vertex, kauffman_link, kv, smoothings, switch,
)
from moykv.laurent import Q, QINV, Z, qbinom, qint, qpow

LINKS = load_dir("links")
GRAPHS = load_dir("graphs")


def test_delta():
    assert str(delta(2)) == "2"
    assert str(delta(4)) == "q^2 + 2 + q^-2"
    assert delta(6) == qint(5) + 1 == qbinom(4, 2)
    with pytest.raises(ValueError):
        delta(1)


@pytest.mark.parametrize("N", range(2, 7))
def test_base_values(N):
    assert kauffman_link(UNKNOT, N) == delta(N)
    assert kauffman_link(KINK, N) == qpow(N - 1) * delta(N)
    assert kauffman_link(load("links", "kink_neg"), N) == qpow(1 - N) * delta(N)
    assert kauffman_link(load("links", "unlink2"), N) == delta(N) ** 2
    assert kv(UNKNOT, N) == delta(N)


FROZEN = {
    "trefoil": [[[2, 6]], [[1, -12], [-1, -8], [-1, -6], [-1, -4], [1, 2], [1, 4], [1, 6], [1, 8], [1, 10]]],
    "hopf": [[[2, -4], [2, 4]], [[1, e] for e in range(-8, 9, 2)]],
    "kink_pos": [[[2, 2]], [[1, 2], [1, 4], [1, 6]]],
}


@pytest.mark.parametrize("name", sorted(FROZEN))
def test_frozen_link_values(name):
    d = load("links", name)
    assert [kauffman_link(d, N).to_json() for N in (2, 3)] == FROZEN[name]


def test_eliminate_vertex_structure():
    terms = eliminate_vertex(BOUQUET, 2)
    assert len(terms) == 3
    for _, T in terms:
        assert T.count("v4") == 0 and T.count("xo", "xu") <= 1
    for g in GRAPHS:
        s = next(i for i, x in enumerate(g.gens) if x.kind == "v4")
        for form in (1, 2):
            for _, T in eliminate_vertex(g, s, form):
                assert T.count("v4") == g.count("v4") - 1
    with pytest.raises(DiagramError):
        eliminate_vertex(BOUQUET, 0)
    with pytest.raises(ValueError):
        eliminate_vertex(BOUQUET, 2, form=3)


@pytest.mark.parametrize("g", GRAPHS, ids=lambda g: g.name)
def test_both_vertex_expansions_agree(g):
    for N in (2, 4, 6):
        assert kv(g, N, form=1) == kv(g, N, form=2)


@pytest.mark.parametrize("g", GRAPHS, ids=lambda g: g.name)
def test_elimination_order_independent(g):
    for N in (2, 3, 6):
        assert kv(g, N) == kv(g, N, last_first=True)


def test_kv_without_vertices_is_kauffman():
    for d in LINKS:
        assert kv(d, 4) == kauffman_link(d, 4)


def _sites():
    pool = LINKS + [
        uclosure([("xo", 0), ("xu", 0), ("xo", 0)]),
        closure3([("xo", 0), ("xu", 1), ("xo", 0), ("xu", 1)], kind="unoriented"),
        closure3([("xo", 0), ("xo", 1), ("xu", 0), ("xo", 1), ("xo", 0)], kind="unoriented"),
    ]
    for d in pool:
        for s, g in enumerate(d.gens):
            if g.kind in ("xo", "xu"):
                yield d, s


def test_switch_relation_on_twenty_sites():
    sites = list(_sites())
    assert len(sites) >= 20
    for d, s in sites[:20]:
        V, H = smoothings(d, s)
        for N in (2, 3, 4):
            plus = kauffman_link(switch(d, s, "xo"), N)
            minus = kauffman_link(switch(d, s, "xu"), N)
            assert plus - minus == Z * (kauffman_link(V, N) - kauffman_link(H, N))


@pytest.mark.parametrize("d", LINKS, ids=lambda d: d.name)
def test_mirror_inverts_q(d):
    for N in (2, 3, 5):
        assert kauffman_link(mirror(d), N) == kauffman_link(d, N).bar()


def test_reidemeister_two_and_three():
    for N in (2, 3, 4):
        assert kauffman_link(uclosure([("xo", 0), ("xu", 0)]), N) == kauffman_link(uclosure([]), N)
        assert kauffman_link(load("links", "r2_pair"), N) == delta(N) ** 2
        for k in ("xo", "xu"):
            a = closure3([(k, 0), (k, 1), (k, 0)], kind="unoriented")
            b = closure3([(k, 1), (k, 0), (k, 1)], kind="unoriented")
            assert kauffman_link(a, N) == kauffman_link(b, N)
        a = closure3([("xo", 0), ("xo", 1), ("xu", 0)], kind="unoriented")
        b = closure3([("xu", 1), ("xo", 0), ("xo", 1)], kind="unoriented")
        assert kauffman_link(a, N) == kauffman_link(b, N)


def test_vertex_relation_through_crossing():
    # a vertex slides past a crossing (rigid vertex isotopy)
    for N in (2, 4):
        a = D("unoriented", [("cup", 0), ("cup", 0), ("v4", 1), ("xo", 0), ("xo", 1), ("cap", 0), ("cap", 0)])
        b = D("unoriented", [("cup", 0), ("cup", 0), ("xo", 0), ("xo", 1), ("v4", 0), ("cap", 0), ("cap", 0)])
        assert kv(a, N) == kv(b, N)


def test_errors_and_budget():
    with pytest.raises(DiagramError):
        kauffman_link(BOUQUET, 3)
    with pytest.raises(DiagramError):
        kauffman_link(load("oriented_links", "unknot_w0"), 3)
    clear_cache()
    with pytest.raises(BudgetExceeded):
        kauffman_link(load("links", "trefoil"), 3, max_nodes=2)
    clear_cache()
    assert kauffman_link(load("links", "trefoil"), 3).to_json() == FROZEN["trefoil"][1]


braids = st.lists(st.tuples(st.sampled_from(["xo", "xu"]), st.integers(0, 1)), min_size=1, max_size=5)


@settings(max_examples=30, deadline=None)
@given(braids)
def test_random_braids(braid):
    d = closure3(braid, kind="unoriented")
    for N in (2, 3):
        v = kauffman_link(d, N)
        assert kauffman_link(mirror(d), N) == v.bar()
        s = 3
        V, H = smoothings(d, s)
        other = switch(d, s, "xu" if braid[0][0] == "xo" else "xo")
        sign = Q - QINV if braid[0][0] == "xo" else QINV - Q
        assert v - kauffman_link(other, N) == sign * (kauffman_link(V, N) - kauffman_link(H, N))
