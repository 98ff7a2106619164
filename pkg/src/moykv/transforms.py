"""Structural rewrites: circuit and component reversal, 2-coloring of links,
and the 4-valent shadow of a mostly 2-colored MOY graph."""

from __future__ import annotations

from .diagram import (
    DiagramError,
    Gen,
    SliceDiagram,
    component_writhe,
    linking_number,
    orient_components,
    orient_cup,
    prune_zero,
    rewrite_gens,
)
from .laurent import HalfLaurent, monomial_ratio
from .moy_bracket import bracket_knotted


# -- circuits ------------------------------------------------------------


def graph_edges(G: SliceDiagram):
    """Edges between trivalent vertices, passing straight through crossings.

    Returns a list of ``(arc ids, tail slice, head slice)``; closed loops
    have tail and head None."""
    if not G.oriented:
        raise DiagramError("circuits need an oriented diagram")
    arcs = G.arcs
    start_at = {a.start: a.id for a in arcs if a.start is not None}
    vertex = {s for s, g in enumerate(G.gens) if g.kind in ("mrg", "spl")}

    def follow(aid):
        a = arcs[aid]
        s, side, j = a.end
        nxt = (s, "t", 1 - j) if side == "b" else (s, "b", 1 - j)
        return start_at[nxt]

    edges, seen = [], set()
    for a in arcs:
        if a.closed:
            edges.append(([a.id], None, None))
            seen.add(a.id)
        elif a.start[0] in vertex and a.id not in seen:
            chain = [a.id]
            while arcs[chain[-1]].end[0] not in vertex:
                chain.append(follow(chain[-1]))
            seen.update(chain)
            edges.append((chain, a.start[0], arcs[chain[-1]].end[0]))
    for a in arcs:
        if a.id in seen:
            continue
        chain = [a.id]
        while True:
            n = follow(chain[-1])
            if n == a.id:
                break
            chain.append(n)
        seen.update(chain)
        edges.append((chain, None, None))
    return edges


def simple_circuits(G: SliceDiagram) -> list[tuple]:
    """Coherently oriented cycles of edges, each as a tuple of arc ids."""
    edges = graph_edges(G)
    out_edges: dict[int, list] = {}
    loops = []
    for chain, tail, head in edges:
        if tail is None:
            loops.append(tuple(chain))
        else:
            out_edges.setdefault(tail, []).append((chain, head))
    found = []

    def dfs(root, u, path, visited):
        for chain, w in out_edges.get(u, []):
            if w == root:
                found.append(tuple(a for c in path + [chain] for a in c))
            elif w > root and w not in visited:
                dfs(root, w, path + [chain], visited | {w})

    for v in sorted(out_edges):
        dfs(v, v, [], {v})
    return sorted(loops) + found


def _circuit_segments(G: SliceDiagram, circuit) -> set[int]:
    return {sid for aid in circuit for sid, _ in G.arcs[aid].segs}


def reverse_circuit(G: SliceDiagram, circuit, N: int) -> SliceDiagram:
    """Reverse the circuit and replace each color ``k`` on it by ``N - k``.

    Vertices on the circuit are redrawn so that every vertex still has its
    legs pointing one vertical way; strands left with color 0 are removed."""
    if tuple(circuit) not in set(simple_circuits(G)):
        raise DiagramError("not a coherently oriented simple circuit")
    return _reverse_segments(G, _circuit_segments(G, circuit), N)


def _reverse_segments(G: SliceDiagram, on: set[int], N: int) -> SliceDiagram:
    segs = G.segments
    if any(segs[sid].color > N for sid in on):
        raise DiagramError(f"circuit color exceeds N={N}")

    def color(sid):
        return N - segs[sid].color if sid in on else segs[sid].color

    def up(sid):
        return (not segs[sid].up) if sid in on else segs[sid].up

    gens = []
    for s, g in enumerate(G.gens):
        bot, top = G.bottom_segs(s), G.top_segs(s)
        i = g.pos
        if g.kind == "cup":
            gens.append(Gen("cup", i, color(top[0]), orient_cup(up(top[0]))))
        elif g.kind == "mrg" and top[0] in on:
            L, T = bot[0], top[0]
            if L in on:
                gens += [Gen("spl", i, color(T)), Gen("cap", i + 1)]
            else:
                gens += [Gen("spl", i + 1, color(L)), Gen("cap", i)]
        elif g.kind == "spl" and bot[0] in on:
            TL, TR = top
            if TL in on:
                gens += [Gen("cup", i + 1, color(TR), orient_cup(not up(TR))), Gen("mrg", i)]
            else:
                gens += [Gen("cup", i, color(TL), orient_cup(up(TL))), Gen("mrg", i + 1)]
        elif g.kind == "spl":
            gens.append(Gen("spl", i, color(top[0])))
        else:
            gens.append(Gen(g.kind, i))
    return prune_zero(SliceDiagram(G.kind, gens, G.name))


# -- link components -----------------------------------------------------


def _component(L: SliceDiagram, K: int):
    comps = L.components
    if not 0 <= K < len(comps):
        raise DiagramError(f"no component {K}")
    return comps[K]


def reversal_shift(L: SliceDiagram, K: int, N: int) -> int:
    """``(N - 2c(K)) w(K) - 2 sum c(K') lk(K, K')``."""
    comp = _component(L, K)
    s = (N - 2 * comp.color) * component_writhe(L, K)
    for other in L.components:
        if other.id != K:
            s -= 2 * other.color * linking_number(L, K, other.id)
    return s


def reverse_component(L: SliceDiagram, K: int, N: int) -> SliceDiagram:
    comp = _component(L, K)
    return _reverse_segments(L, {sid for sid, _ in comp.segs}, N)


def component_reversal_sides(L: SliceDiagram, K: int, N: int):
    """Both sides of the component reversal identity."""
    lhs = bracket_knotted(reverse_component(L, K, N), N)
    s = reversal_shift(L, K, N)
    sign = -1 if (N * component_writhe(L, K)) % 2 else 1
    rhs = HalfLaurent.mono(-2 * s, sign) * bracket_knotted(L, N)
    return lhs, rhs


def check_component_reversal(L: SliceDiagram, K: int, N: int) -> bool:
    lhs, rhs = component_reversal_sides(L, K, N)
    return lhs == rhs


def monomial_relation(D: SliceDiagram, circuit, N: int):
    """``(sign, exponent)`` relating the reversed graph to the original."""
    before = bracket_knotted(D, N)
    if before.is_zero():
        raise DiagramError("bracket vanishes; ratio undefined")
    return monomial_ratio(bracket_knotted(reverse_circuit(D, circuit, N), N), before)


# -- 2-colored links and mostly 2-colored graphs -------------------------


def two_color(L: SliceDiagram, orientation) -> SliceDiagram:
    """Orient ``L`` (one flag per component) and color every strand 2."""
    if L.kind != "unoriented":
        raise DiagramError("expected an unoriented link")
    if any(g.kind == "v4" for g in L.gens):
        raise DiagramError("expected a link without vertices")
    return orient_components(L, orientation, color=2)


def _type_two(G: SliceDiagram, sm: int):
    """Match a 1/3-colored square whose 3-colored edge leaves the merge at
    slice ``sm``. Returns (first slice, vertex position) or None."""
    gens, n = G.gens, len(G.gens)
    ss = sm + 1
    if sm < 1 or ss + 1 >= n or gens[ss].kind != "spl":
        return None
    lo, mid, hi, top = gens[sm - 1], gens[sm], gens[ss], gens[ss + 1]
    if lo.kind != "spl" or top.kind != "mrg":
        return None
    if G.top_segs(sm)[0] != G.bottom_segs(ss)[0]:
        return None
    segs = G.segments
    col = [segs[x].color for x in G.bottom_segs(sm - 1) + G.top_segs(sm - 1) + G.top_segs(ss)]
    up = G.levels[sm][mid.pos].up
    i = mid.pos
    if up and lo.pos == i + 1 and hi.pos == i and top.pos == i + 1:
        rung, col_r = G.top_segs(sm - 1)
        ok = (rung == G.bottom_segs(sm)[1] and col_r == G.bottom_segs(ss + 1)[1]
              and G.top_segs(ss)[1] == G.bottom_segs(ss + 1)[0]
              and col == [2, 1, 1, 2, 1] and segs[G.bottom_segs(sm)[0]].color == 2)
        return (sm - 1, i) if ok else None
    if not up and lo.pos == i - 1 and hi.pos == i and top.pos == i - 1:
        col_l, rung = G.top_segs(sm - 1)
        ok = (rung == G.bottom_segs(sm)[0] and col_l == G.bottom_segs(ss + 1)[0]
              and G.top_segs(ss)[0] == G.bottom_segs(ss + 1)[1]
              and col == [2, 1, 1, 1, 2] and segs[G.bottom_segs(sm)[1]].color == 2)
        return (sm - 1, i - 1) if ok else None
    return None


def graph_shadow(G: SliceDiagram) -> SliceDiagram:
    """The unoriented 4-valent graph of a mostly 2-colored planar MOY graph.

    4-colored bridges become a pair of turned-back arcs and 1/3-colored
    squares shrink to rigid vertices; everything else must be 2-colored."""
    if G.kind != "moy" or any(g.kind in ("xo", "xu") for g in G.gens):
        raise DiagramError("expected a planar MOY graph")
    subs, drop = {}, set()
    segs = G.segments
    for seg in segs:
        if seg.color == 4:
            s1, _ = seg.lo
            s2, _ = seg.hi
            if G.gens[s1].kind != "mrg" or G.gens[s2].kind != "spl":
                raise DiagramError(f"slices {s1}-{s2}: 4-colored edge is not a merge-split bridge")
            ins = [segs[x].color for x in G.bottom_segs(s1)]
            outs = [segs[x].color for x in G.top_segs(s2)]
            if ins != [2, 2] or outs != [2, 2]:
                raise DiagramError(f"slices {s1}-{s2}: bridge legs must be 2-colored")
            subs[s1] = [Gen("cap", G.gens[s1].pos)]
            subs[s2] = [Gen("cup", G.gens[s2].pos)]
            drop.add(seg.id)
        elif seg.color == 3:
            sm, _ = seg.lo
            if G.gens[sm].kind != "mrg":
                raise DiagramError(f"slice {sm}: 3-colored edge does not leave a merge")
            m = _type_two(G, sm)
            if m is None:
                raise DiagramError(f"slice {sm}: 1/3-colored configuration is not a square")
            first, pos = m
            subs[first] = [Gen("v4", pos)]
            subs[first + 1] = subs[first + 2] = subs[first + 3] = []
    for s, g in enumerate(G.gens):
        if g.kind in ("mrg", "spl") and s not in subs:
            raise DiagramError(f"slice {s}: vertex matches neither local configuration")
    for seg in segs:
        if seg.color not in (1, 2, 3, 4):
            raise DiagramError(f"segment at slice {seg.lo[0]}: color {seg.color} not allowed")
        if seg.color == 1:
            s = seg.lo[0]
            if s not in subs:
                raise DiagramError(f"slice {s}: stray 1-colored edge")
    gens = []
    for g in rewrite_gens(G, subs, drop):
        gens.append(Gen(g.kind, g.pos))
    return SliceDiagram("unoriented", gens, G.name)
