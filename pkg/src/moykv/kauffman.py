"""Kauffman (Dubrovnik form) polynomial at ``a = q^(N-1)`` and the
Kauffman-Vogel extension to rigid 4-valent graphs.

Links are evaluated by switching crossings toward a descending diagram. The
components are taken in order of first appearance, each traversed from its
first cup; a diagram in which every crossing is first met on its over strand
is an unlink whose value depends only on the self-writhes.
"""

from __future__ import annotations

from .diagram import (
    DiagramError,
    Gen,
    SliceDiagram,
    canonical,
    crossing_sign,
    rewrite,
    splice,
)
from .laurent import ONE, Q, QINV, ZERO, Z, HalfLaurent, qint
from .moy_bracket import LinComb

DEFAULT_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    """Raised when a skein recursion visits more nodes than allowed."""


def delta(N: int) -> HalfLaurent:
    """Value of the unknot: ``[N-1] + 1``."""
    if N < 2:
        raise ValueError("delta needs N >= 2")
    return qint(N - 1) + 1


def _require_unoriented(D: SliceDiagram):
    if D.kind != "unoriented":
        raise DiagramError("expected an unoriented diagram")


def smoothings(D: SliceDiagram, s: int):
    """Vertical and horizontal smoothings of the node at slice ``s``."""
    i = D.gens[s].pos
    V = splice(D, s, [])
    H = splice(D, s, [Gen("cap", i), Gen("cup", i)])
    return V, H


def switch(D: SliceDiagram, s: int, kind: str) -> SliceDiagram:
    return splice(D, s, [Gen(kind, D.gens[s].pos)])


# -- vertex elimination --------------------------------------------------


def eliminate_vertex(D: SliceDiagram, s: int, form: int = 1) -> LinComb:
    """Expand the rigid vertex at slice ``s``.

    ``form=1`` uses ``-xo + q V + q^-1 H``; ``form=2`` uses
    ``-xu + q^-1 V + q H``. Both give the same value."""
    _require_unoriented(D)
    if D.gens[s].kind != "v4":
        raise DiagramError(f"slice {s} is not a vertex")
    V, H = smoothings(D, s)
    if form == 1:
        return LinComb([(-ONE, switch(D, s, "xo")), (Q, V), (QINV, H)])
    if form == 2:
        return LinComb([(-ONE, switch(D, s, "xu")), (QINV, V), (Q, H)])
    raise ValueError("form must be 1 or 2")


# -- links ---------------------------------------------------------------


class _Counter:
    def __init__(self, budget):
        self.left = budget

    def tick(self):
        self.left -= 1
        if self.left < 0:
            raise BudgetExceeded("skein node budget exhausted")


_memo: dict = {}


def first_nondescending(D: SliceDiagram):
    """Index of the first crossing met on its under strand, or None."""
    seen = set()
    for c in D.components:
        for gi, strand, _ in c.passes:
            if gi in seen:
                continue
            seen.add(gi)
            if D.gens[gi].kind == "v4":
                raise DiagramError("vertices must be eliminated first")
            over = "a" if D.gens[gi].kind == "xo" else "b"
            if strand != over:
                return gi
    return None


def _drop_free_circles(D: SliceDiagram):
    """Remove components that meet no crossing. Returns (diagram, count)."""
    free = [c for c in D.components if not c.passes]
    if not free:
        return D, 0
    drop = {sid for c in free for sid, _ in c.segs}
    subs = {}
    for s, g in enumerate(D.gens):
        if g.kind == "cup" and D.top_segs(s)[0] in drop:
            subs[s] = []
        elif g.kind == "cap" and D.bottom_segs(s)[0] in drop:
            subs[s] = []
    return rewrite(D, subs, drop), len(free)


def _self_writhe(D: SliceDiagram) -> int:
    owner = {}
    for c in D.components:
        for gi, strand, up in c.passes:
            owner.setdefault(gi, {})[strand] = (c.id, up)
    w = 0
    for gi, o in owner.items():
        if o["a"][0] == o["b"][0]:
            w += crossing_sign(D, gi, o["a"][1], o["b"][1])
    return w


def kauffman_link(D: SliceDiagram, N: int, max_nodes: int = DEFAULT_BUDGET) -> HalfLaurent:
    """Regular-isotopy Kauffman polynomial of a vertex-free diagram."""
    _require_unoriented(D)
    if any(g.kind == "v4" for g in D.gens):
        raise DiagramError("kauffman_link needs a diagram without vertices")
    return _link(canonical(D), N, _Counter(max_nodes))


def _link(D: SliceDiagram, N: int, counter: _Counter) -> HalfLaurent:
    key = (D.gens, N)
    hit = _memo.get(key)
    if hit is not None:
        return hit
    counter.tick()
    d = delta(N)
    D2, free = _drop_free_circles(D)
    if free:
        val = d ** free * _link(canonical(D2), N, counter)
        _memo[key] = val
        return val
    s = first_nondescending(D)
    if s is None:
        val = HalfLaurent.mono(2 * (N - 1) * _self_writhe(D)) * d ** len(D.components)
    else:
        V, H = smoothings(D, s)
        smooth = _link(canonical(V), N, counter) - _link(canonical(H), N, counter)
        if D.gens[s].kind == "xo":
            val = _link(canonical(switch(D, s, "xu")), N, counter) + Z * smooth
        else:
            val = _link(canonical(switch(D, s, "xo")), N, counter) - Z * smooth
    _memo[key] = val
    return val


def kv(D: SliceDiagram, N: int, form: int = 1, last_first: bool = False,
       max_nodes: int = DEFAULT_BUDGET) -> HalfLaurent:
    """Kauffman-Vogel polynomial: eliminate vertices, then evaluate links.

    ``last_first`` eliminates the topmost vertex first instead of the lowest,
    which is used to check order independence."""
    _require_unoriented(D)
    counter = _Counter(max_nodes)
    return _kv(D, N, form, last_first, counter)


def _kv(D, N, form, last_first, counter):
    vs = [s for s, g in enumerate(D.gens) if g.kind == "v4"]
    if not vs:
        return _link(canonical(D), N, counter)
    s = vs[-1] if last_first else vs[0]
    total = ZERO
    for c, T in eliminate_vertex(D, s, form):
        total = total + c * _kv(T, N, form, last_first, counter)
    return total


def clear_cache():
    _memo.clear()
