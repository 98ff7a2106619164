"""Balanced orientations, resolutions and the Jaeger-type state sum that
expresses the so(2N) Kauffman-Vogel polynomial through sl(N) values."""

from __future__ import annotations

from itertools import product

from .diagram import DiagramError, Gen, SliceDiagram, orient_cup, total_rotation
from .laurent import Q, QINV, ZERO, Z, HalfLaurent, ONE
from .moy_bracket import r_n

LEGS = {"BL": ("b", 0), "BR": ("b", 1), "TL": ("t", 0), "TR": ("t", 1)}
OVER = {"xo": frozenset({"BL", "TR"}), "xu": frozenset({"BR", "TL"})}
CROSSING_LIKE = (
    frozenset({"BL", "BR"}),
    frozenset({"TL", "TR"}),
    frozenset({"BL", "TL"}),
    frozenset({"BR", "TR"}),
)


def _check(D: SliceDiagram):
    if D.kind != "unoriented":
        raise DiagramError("expected an unoriented diagram")


def inward_legs(D: SliceDiagram, s: int, rho) -> frozenset:
    """Legs of node ``s`` pointing into it under the arc flips ``rho``."""
    ins = set()
    for name, (side, j) in LEGS.items():
        arc, starts = D.leg_arc[(s, side, j)]
        if (not starts) != bool(rho[arc]):
            ins.add(name)
    return frozenset(ins)


def _nodes(D: SliceDiagram):
    return [s for s, g in enumerate(D.gens) if g.kind in ("xo", "xu", "v4")]


def balanced_orientations(D: SliceDiagram) -> list[tuple]:
    """Arc orientations with two inward legs at every node.

    An orientation is a tuple of flags, one per arc; True reverses the arc
    relative to its reference direction. Listed in binary-counter order."""
    _check(D)
    n = len(D.arcs)
    nodes = _nodes(D)
    out = []
    for code in range(1 << n):
        rho = tuple(bool(code >> i & 1) for i in range(n))
        if all(len(inward_legs(D, s, rho)) == 2 for s in nodes):
            out.append(rho)
    return out


def crossing_type(D: SliceDiagram, s: int, rho) -> str:
    """``consistent``, ``top-outward`` or ``top-inward``."""
    ins = inward_legs(D, s, rho)
    over = OVER[D.gens[s].kind]
    if ins == over:
        return "top-inward"
    if not ins & over:
        return "top-outward"
    return "consistent"


def vertex_type(D: SliceDiagram, s: int, rho) -> str:
    return "crossing-like" if inward_legs(D, s, rho) in CROSSING_LIKE else "non-crossing-like"


def is_admissible(D: SliceDiagram, rho) -> bool:
    _check(D)
    return all(
        crossing_type(D, s, rho) != "top-inward"
        for s, g in enumerate(D.gens)
        if g.kind in ("xo", "xu")
    )


def admissible_orientations(D: SliceDiagram) -> list[tuple]:
    return [rho for rho in balanced_orientations(D) if is_admissible(D, rho)]


def resolution_sites(D: SliceDiagram, rho) -> list[int]:
    """Top-outward crossings and non-crossing-like vertices, bottom to top."""
    sites = []
    for s, g in enumerate(D.gens):
        if g.kind in ("xo", "xu"):
            t = crossing_type(D, s, rho)
            if t == "top-inward":
                raise DiagramError(f"slice {s}: orientation is not admissible")
            if t == "top-outward":
                sites.append(s)
        elif g.kind == "v4" and vertex_type(D, s, rho) == "non-crossing-like":
            sites.append(s)
    return sites


def resolutions(D: SliceDiagram, rho) -> list[dict]:
    sites = resolution_sites(D, rho)
    letters = [("A", "B") if D.gens[s].kind != "v4" else ("L", "R") for s in sites]
    return [dict(zip(sites, pick)) for pick in product(*letters)]


def _is_vertical(D: SliceDiagram, s: int, rho, letter: str) -> bool:
    kind = D.gens[s].kind
    if kind == "xo":
        return letter == "A"
    if kind == "xu":
        return letter == "B"
    outs = frozenset(LEGS) - inward_legs(D, s, rho)
    if outs == {"BL", "TR"}:
        return letter == "R"
    return letter == "L"


def segment_up(D: SliceDiagram, rho) -> dict[int, bool]:
    return {sid: (d > 0) != bool(rho[arc]) for sid, (arc, d) in D.seg_arc.items()}


def resolve(D: SliceDiagram, rho, sigma: dict) -> SliceDiagram:
    """The oriented diagram obtained by smoothing the resolution sites.

    Other crossings and vertices are kept; the output has kind ``link``."""
    _check(D)
    if not is_admissible(D, rho):
        raise DiagramError("orientation is not admissible")
    if set(sigma) != set(resolution_sites(D, rho)):
        raise DiagramError("resolution does not match the orientation")
    up = segment_up(D, rho)
    gens = []
    for s, g in enumerate(D.gens):
        if g.kind == "cup":
            gens.append(Gen("cup", g.pos, 1, orient_cup(up[D.top_segs(s)[0]])))
        elif s in sigma:
            if not _is_vertical(D, s, rho, sigma[s]):
                left_up = up[D.top_segs(s)[0]]
                gens += [Gen("cap", g.pos), Gen("cup", g.pos, 1, orient_cup(left_up))]
        else:
            gens.append(Gen(g.kind, g.pos))
    return SliceDiagram("link", gens, D.name)


def resolution_weight(D: SliceDiagram, rho, sigma: dict) -> HalfLaurent:
    w = ONE
    for letter in sigma.values():
        w = w * {"A": Z, "B": -Z, "L": Q, "R": QINV}[letter]
    return w


def jaeger_terms(D: SliceDiagram, twoN: int):
    """Yield ``(rho, sigma, coefficient, resolved diagram)``."""
    if twoN % 2 or twoN < 2:
        raise ValueError("twoN must be a positive even number")
    N = twoN // 2
    for rho in admissible_orientations(D):
        for sigma in resolutions(D, rho):
            R = resolve(D, rho, sigma)
            rot = total_rotation(R)
            coef = HalfLaurent.mono(-2 * (N - 1) * rot) * resolution_weight(D, rho, sigma)
            yield rho, sigma, coef, R


def jaeger_rhs(D: SliceDiagram, twoN: int) -> HalfLaurent:
    """Sum over admissible orientations and resolutions of weighted
    sl(N) values; equals the so(2N) Kauffman-Vogel polynomial."""
    N = twoN // 2
    total = ZERO
    for _, _, coef, R in jaeger_terms(D, twoN):
        total = total + coef * r_n(R, N)
    return total
