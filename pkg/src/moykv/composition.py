"""Composition product: ``<G>_{M+N}`` as a sum over sub-colorings ``f`` of
``q^sigma <G_f>_M <G_fbar>_N``."""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction

from .diagram import DiagramError, SliceDiagram, prune_zero, reattribute
from .laurent import ZERO, HalfLaurent
from .moy_bracket import bracket_planar, graph_rotation, vertex_legs


def _vertices(G: SliceDiagram):
    return [s for s, g in enumerate(G.gens) if g.kind in ("mrg", "spl")]


def labellings(G: SliceDiagram) -> list[dict]:
    """Every map arc -> 0..color that satisfies the vertex sums."""
    if G.kind != "moy" or any(g.kind in ("xo", "xu") for g in G.gens):
        raise DiagramError("expected a planar MOY graph")
    arcs = G.arcs
    legs = {s: vertex_legs(G, s) for s in _vertices(G)}
    due = defaultdict(list)
    for s, (e, e1, e2) in legs.items():
        due[max(e, e1, e2)].append(s)
    out, f = [], {}

    def go(i):
        if i == len(arcs):
            out.append(dict(f))
            return
        for v in range(arcs[i].color + 1):
            f[i] = v
            if all(f[e] == f[e1] + f[e2] for e, e1, e2 in (legs[s] for s in due[i])):
                go(i + 1)
        f.pop(i, None)

    go(0)
    return out


def complement(G: SliceDiagram, f: dict) -> dict:
    return {a.id: a.color - f[a.id] for a in G.arcs}


def relabel(G: SliceDiagram, f: dict) -> SliceDiagram:
    """``G`` recolored by ``f`` with 0-colored edges removed."""
    seg_arc = G.seg_arc
    segs = G.segments
    H = reattribute(G, lambda sid: f[seg_arc[sid][0]], lambda sid: segs[sid].up, "moy")
    return prune_zero(H)


def vertex_term(G: SliceDiagram, s: int, f: dict) -> Fraction:
    """``(f(e1) fbar(e2) - fbar(e1) f(e2)) / 2`` at the vertex of slice ``s``."""
    _, e1, e2 = vertex_legs(G, s)
    c = {a.id: a.color for a in G.arcs}
    fb1, fb2 = c[e1] - f[e1], c[e2] - f[e2]
    return Fraction(f[e1] * fb2 - fb1 * f[e2], 2)


def sigma(G: SliceDiagram, f: dict, M: int, N: int) -> Fraction:
    fb = complement(G, f)
    total = Fraction(M * graph_rotation(relabel(G, fb)) - N * graph_rotation(relabel(G, f)))
    for s in _vertices(G):
        total += vertex_term(G, s, f)
    return total


def composition_terms(G: SliceDiagram, M: int, N: int):
    """Yield ``(f, sigma, <G_f>_M, <G_fbar>_N)`` for every labelling."""
    for f in labellings(G):
        fb = complement(G, f)
        yield f, sigma(G, f, M, N), bracket_planar(relabel(G, f), M), bracket_planar(relabel(G, fb), N)


def composition_rhs(G: SliceDiagram, M: int, N: int) -> HalfLaurent:
    total = ZERO
    for _, sg, a, b in composition_terms(G, M, N):
        if a and b:
            total = total + HalfLaurent.qpow(sg) * a * b
    return total
