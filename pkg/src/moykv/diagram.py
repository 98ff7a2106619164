"""Slice-word diagrams: parsing, validation and geometric bookkeeping.

A diagram is a bottom-to-top word of elementary generators acting on a row of
points. Each point carries a color and, for oriented kinds, an up/down flag.
From the word we derive segments (a point tracked between the generator that
creates it and the one that consumes it), arcs (maximal runs of segments
through cups and caps) and, for vertex-free diagrams, components.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from functools import cached_property
from typing import NamedTuple

ARITY = {
    "cup": (0, 2),
    "cap": (2, 0),
    "mrg": (2, 1),
    "spl": (1, 2),
    "xo": (2, 2),
    "xu": (2, 2),
    "v4": (2, 2),
}
KIND_ORDER = {k: i for i, k in enumerate(ARITY)}
NODE_KINDS = frozenset({"mrg", "spl", "xo", "xu", "v4"})
CROSSINGS = frozenset({"xo", "xu"})
ALLOWED = {
    "moy": frozenset({"cup", "cap", "mrg", "spl", "xo", "xu"}),
    "link": frozenset({"cup", "cap", "xo", "xu", "v4"}),
    "unoriented": frozenset({"cup", "cap", "xo", "xu", "v4"}),
}
ORIENTED = frozenset({"moy", "link"})


class DiagramError(Exception):
    """Base class for diagram problems."""


class ParseError(DiagramError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno is not None else message)


class ValidationError(DiagramError):
    pass


@dataclass(frozen=True, order=True)
class Gen:
    """One slice. ``color`` is the strand color on a cup and the left output
    color on a split; ``orient`` is ``lu``/``ru`` on cups of oriented kinds
    (which endpoint of the cup points up)."""

    kind: str
    pos: int
    color: int | None = None
    orient: str | None = None

    def __str__(self) -> str:
        out = f"{self.kind} {self.pos}"
        if self.color is not None:
            out += f" color={self.color}"
        if self.orient is not None:
            out += f" orient={self.orient}"
        return out

    def key(self):
        return (self.pos, KIND_ORDER[self.kind], self.color or 0, self.orient or "")


class Point(NamedTuple):
    color: int
    up: bool | None


class Segment(NamedTuple):
    id: int
    lo: tuple[int, int]   # (gen index, top leg) that creates the segment
    hi: tuple[int, int]   # (gen index, bottom leg) that consumes it
    first: int            # first level containing the segment
    last: int             # last level containing it
    color: int
    up: bool | None


@dataclass
class Arc:
    id: int
    color: int
    segs: list            # [(segment id, +1 upward / -1 downward)]
    start: tuple | None   # (gen index, 'b'|'t', leg) or None when closed
    end: tuple | None
    turn2: int            # doubled turning along the listed direction

    @property
    def closed(self) -> bool:
        return self.start is None


@dataclass
class Component:
    id: int
    color: int
    segs: list            # [(segment id, direction)]
    passes: list          # [(gen index, 'a'|'b', going_up)] in traversal order
    turn2: int


class SliceDiagram:
    """A validated slice word of kind ``moy``, ``link`` or ``unoriented``."""

    def __init__(self, kind: str, gens, name: str = "D"):
        if kind not in ALLOWED:
            raise ValidationError(f"unknown kind {kind!r}")
        self.kind = kind
        self.gens = tuple(gens)
        self.name = name
        self.levels = _compute_levels(kind, self.gens)

    # -- identity -----------------------------------------------------
    @property
    def oriented(self) -> bool:
        return self.kind in ORIENTED

    def word(self):
        return (self.kind, self.gens)

    def __eq__(self, other):
        return isinstance(other, SliceDiagram) and self.word() == other.word()

    def __hash__(self):
        return hash(self.word())

    def __repr__(self):
        return f"SliceDiagram({self.name!r}, {self.kind}, {len(self.gens)} slices)"

    def with_gens(self, gens, kind: str | None = None, name: str | None = None) -> "SliceDiagram":
        return SliceDiagram(kind or self.kind, gens, name or self.name)

    def count(self, *kinds: str) -> int:
        return sum(1 for g in self.gens if g.kind in kinds)

    def colors(self) -> set[int]:
        return {p.color for lev in self.levels for p in lev}

    # -- segments -----------------------------------------------------
    @cached_property
    def _segments(self):
        seg_at: list[list[int]] = [[]]
        segs: list[list] = []
        bottom: list[list[int]] = []
        top: list[list[int]] = []
        for s, g in enumerate(self.gens):
            cur = seg_at[-1]
            n_in, n_out = ARITY[g.kind]
            consumed = cur[g.pos:g.pos + n_in]
            for j, sid in enumerate(consumed):
                segs[sid][2] = (s, j)
                segs[sid][4] = s
            created = []
            for j in range(n_out):
                p = self.levels[s + 1][g.pos + j]
                created.append(len(segs))
                segs.append([len(segs), (s, j), None, s + 1, None, p.color, p.up])
            bottom.append(consumed)
            top.append(created)
            seg_at.append(cur[:g.pos] + created + cur[g.pos + n_in:])
        return (
            [Segment(*row) for row in segs],
            seg_at,
            bottom,
            top,
        )

    @property
    def segments(self) -> list[Segment]:
        return self._segments[0]

    @property
    def seg_at(self) -> list[list[int]]:
        """``seg_at[level][position]`` is the segment id of that point."""
        return self._segments[1]

    def bottom_segs(self, s: int) -> list[int]:
        return self._segments[2][s]

    def top_segs(self, s: int) -> list[int]:
        return self._segments[3][s]

    def _step(self, sid: int, d: int):
        """Follow segment ``sid`` in direction ``d`` to the next generator.

        Returns ``(gen index, side, leg)`` where side is the generator side
        that was reached ('b' when arriving from below)."""
        seg = self.segments[sid]
        if d > 0:
            s, j = seg.hi
            return s, "b", j
        s, j = seg.lo
        return s, "t", j

    def _through_turn(self, s: int, side: str, j: int):
        """Continue through a cup or cap. Returns (next seg, dir, turn2)."""
        g = self.gens[s]
        if g.kind == "cap":
            nxt = self.bottom_segs(s)[1 - j]
            return nxt, -1, (1 if j == 1 else -1)
        nxt = self.top_segs(s)[1 - j]
        return nxt, 1, (1 if j == 0 else -1)

    # -- arcs ---------------------------------------------------------
    @cached_property
    def arcs(self) -> list[Arc]:
        """Maximal strand segments between nodes; ids by first appearance."""
        segs = self.segments
        seen: set[int] = set()
        arcs: list[Arc] = []
        for seg in segs:
            if seg.id in seen:
                continue
            d0 = 1 if (seg.up is None or seg.up) else -1
            # walk backwards to the start of the arc
            sid, d = seg.id, -d0
            closed = False
            while True:
                s, side, j = self._step(sid, d)
                if self.gens[s].kind in NODE_KINDS:
                    break
                sid, d, _ = self._through_turn(s, side, j)
                if sid == seg.id:
                    closed = True
                    break
            if closed:
                start_sid, start_dir = seg.id, d0
                start = None
            else:
                start = (s, side, j)
                start_sid, start_dir = sid, -d
            path = [(start_sid, start_dir)]
            turn2 = 0
            sid, d = start_sid, start_dir
            while True:
                s, side, j = self._step(sid, d)
                if self.gens[s].kind in NODE_KINDS:
                    end = (s, side, j)
                    break
                sid, d, t = self._through_turn(s, side, j)
                turn2 += t
                if closed and sid == start_sid:
                    end = None
                    break
                path.append((sid, d))
            for sid, _ in path:
                seen.add(sid)
            arcs.append(Arc(len(arcs), segs[start_sid].color, path, start, end, turn2))
        return arcs

    @cached_property
    def seg_arc(self) -> dict[int, tuple[int, int]]:
        """segment id -> (arc id, direction of the segment along the arc)."""
        out = {}
        for a in self.arcs:
            for sid, d in a.segs:
                out[sid] = (a.id, d)
        return out

    @cached_property
    def leg_arc(self) -> dict[tuple, tuple[int, bool]]:
        """(gen, side, leg) of a node -> (arc id, True if the arc starts there)."""
        out = {}
        for a in self.arcs:
            if a.start is not None:
                out[a.start] = (a.id, True)
                out[a.end] = (a.id, False)
        return out

    # -- components ---------------------------------------------------
    @cached_property
    def components(self) -> list[Component]:
        """Closed curves of a diagram without trivalent vertices.

        Crossings and rigid vertices are passed straight through. Each
        component starts at its first cup and leaves through the cup's left
        leg (for oriented kinds, along the orientation instead).
        """
        if any(g.kind in ("mrg", "spl") for g in self.gens):
            raise DiagramError("components are undefined on diagrams with trivalent vertices")
        seen: set[int] = set()
        comps: list[Component] = []
        for s, g in enumerate(self.gens):
            if g.kind != "cup":
                continue
            left = self.top_segs(s)[0]
            if left in seen:
                continue
            if self.oriented and not self.segments[left].up:
                start = self.top_segs(s)[1]
            else:
                start = left
            path, passes, turn2 = [], [], 0
            sid, d = start, 1
            while True:
                path.append((sid, d))
                seen.add(sid)
                gi, side, j = self._step(sid, d)
                k = self.gens[gi].kind
                if k in ("cup", "cap"):
                    sid, d, t = self._through_turn(gi, side, j)
                    turn2 += t
                else:
                    if side == "b":
                        strand = "a" if j == 0 else "b"
                        sid, d = self.top_segs(gi)[1 - j], 1
                    else:
                        strand = "a" if j == 1 else "b"
                        sid, d = self.bottom_segs(gi)[1 - j], -1
                    passes.append((gi, strand, d > 0))
                if sid == start and d == 1:
                    break
            comps.append(Component(len(comps), self.segments[start].color, path, passes, turn2))
        return comps

    def seg_component(self) -> dict[int, int]:
        return {sid: c.id for c in self.components for sid, _ in c.segs}

    # -- serialization ------------------------------------------------
    def to_text(self) -> str:
        lines = [f"diagram {self.name} {{", f"  kind: {self.kind}", "  slices:"]
        lines += [f"    {g}" for g in self.gens]
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __str__(self):
        return self.to_text()


# -- validation ----------------------------------------------------------


def _compute_levels(kind: str, gens) -> tuple:
    oriented = kind in ORIENTED
    allowed = ALLOWED[kind]
    level: list[Point] = []
    levels = [()]
    for s, g in enumerate(gens):
        where = f"slice {s} ({g})"
        if g.kind not in ARITY:
            raise ValidationError(f"{where}: unknown generator")
        if g.kind not in allowed:
            raise ValidationError(f"{where}: generator not allowed in a {kind} diagram")
        n_in, _ = ARITY[g.kind]
        if g.pos < 0 or g.pos + n_in > len(level):
            raise ValidationError(f"{where}: position out of range for width {len(level)}")
        pts = level[g.pos:g.pos + n_in]
        if g.kind == "cup":
            c = 1 if g.color is None else g.color
            if c < 0:
                raise ValidationError(f"{where}: negative color")
            if not oriented:
                if c != 1 or g.orient is not None:
                    raise ValidationError(f"{where}: unoriented cups carry no color or orientation")
                new = [Point(1, None), Point(1, None)]
            else:
                if g.orient not in ("lu", "ru"):
                    raise ValidationError(f"{where}: oriented cups need orient=lu or orient=ru")
                lu = g.orient == "lu"
                new = [Point(c, lu), Point(c, not lu)]
        elif g.kind == "cap":
            a, b = pts
            if a.color != b.color:
                raise ValidationError(f"{where}: cap joins colors {a.color} and {b.color}")
            if oriented and a.up == b.up:
                raise ValidationError(f"{where}: cap needs exactly one upward endpoint")
            new = []
        elif g.kind == "mrg":
            a, b = pts
            if a.up != b.up:
                raise ValidationError(f"{where}: merge legs must point the same vertical way")
            new = [Point(a.color + b.color, a.up)]
        elif g.kind == "spl":
            (a,) = pts
            left = 1 if g.color is None else g.color
            if not 0 <= left <= a.color:
                raise ValidationError(f"{where}: split color {left} exceeds incoming {a.color}")
            new = [Point(left, a.up), Point(a.color - left, a.up)]
        else:
            a, b = pts
            if g.kind == "v4" and (a.color != 1 or b.color != 1):
                raise ValidationError(f"{where}: rigid vertices carry color 1")
            new = [b, a]
        level = level[:g.pos] + new + level[g.pos + n_in:]
        levels.append(tuple(level))
    if level:
        raise ValidationError(f"diagram is not closed: final width {len(level)}")
    return tuple(levels)


# -- parsing -------------------------------------------------------------

_HEADER = re.compile(r"^diagram\s+(\S+)\s*\{$")


def parse_diagrams(text: str) -> list[SliceDiagram]:
    """Parse every ``diagram`` block in ``text``."""
    out = []
    block = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if block is None:
            m = _HEADER.match(line)
            if not m:
                raise ParseError(f"expected 'diagram <name> {{', got {line!r}", lineno)
            block = {"name": m.group(1), "kind": None, "gens": [], "slices": False, "line": lineno}
            continue
        if line == "}":
            if block["kind"] is None:
                raise ParseError("missing 'kind:' line", lineno)
            try:
                out.append(SliceDiagram(block["kind"], block["gens"], block["name"]))
            except ValidationError as exc:
                raise ValidationError(f"diagram {block['name']}: {exc}") from None
            block = None
            continue
        if line.startswith("kind:"):
            kind = line[5:].strip()
            if kind not in ALLOWED:
                raise ParseError(f"unknown kind {kind!r}", lineno)
            block["kind"] = kind
            continue
        if line == "slices:":
            block["slices"] = True
            continue
        if not block["slices"]:
            raise ParseError(f"unexpected line before 'slices:': {line!r}", lineno)
        block["gens"].append(_parse_gen(line, lineno, block["kind"]))
    if block is not None:
        raise ParseError("unterminated diagram block (missing '}')", block["line"])
    return out


def parse_diagram(text: str) -> SliceDiagram:
    """Parse exactly one diagram."""
    ds = parse_diagrams(text)
    if len(ds) != 1:
        raise ParseError(f"expected one diagram, found {len(ds)}")
    return ds[0]


def _parse_gen(line: str, lineno: int, kind: str | None) -> Gen:
    toks = line.split()
    name = toks[0]
    if name not in ARITY:
        raise ParseError(f"unknown generator {name!r}", lineno)
    if len(toks) < 2:
        raise ParseError(f"{name} needs a position", lineno)
    try:
        pos = int(toks[1])
    except ValueError:
        raise ParseError(f"bad position {toks[1]!r}", lineno) from None
    attrs = {}
    for t in toks[2:]:
        if "=" not in t:
            raise ParseError(f"bad attribute {t!r}", lineno)
        k, v = t.split("=", 1)
        if k not in ("color", "orient"):
            raise ParseError(f"unknown attribute {k!r}", lineno)
        attrs[k] = v
    color = None
    if "color" in attrs:
        if name not in ("cup", "spl"):
            raise ParseError(f"{name} takes no color", lineno)
        try:
            color = int(attrs["color"])
        except ValueError:
            raise ParseError(f"bad color {attrs['color']!r}", lineno) from None
        if color < 1:
            raise ParseError("colors must be positive", lineno)
    orient = attrs.get("orient")
    if orient is not None:
        if name != "cup":
            raise ParseError(f"{name} takes no orientation", lineno)
        if orient not in ("lu", "ru"):
            raise ParseError(f"orient must be lu or ru, got {orient!r}", lineno)
    if kind in ORIENTED and name == "cup":
        if orient is None:
            raise ParseError("cups of oriented diagrams need orient=", lineno)
        color = 1 if color is None else color
    if name == "spl" and color is None:
        color = 1
    if kind == "unoriented" and name == "cup" and color == 1:
        color = None
    return Gen(name, pos, color, orient)


# -- simple queries ------------------------------------------------------


def arcs(D: SliceDiagram) -> list[Arc]:
    return D.arcs


def crossing_sign(D: SliceDiagram, s: int, a_up: bool | None = None, b_up: bool | None = None) -> int:
    """Sign of crossing ``s``: with both strands upward xo is +1, xu is -1.

    Strand ``a`` runs from bottom-left to top-right."""
    g = D.gens[s]
    if g.kind not in CROSSINGS:
        raise DiagramError(f"slice {s} is not a crossing")
    if a_up is None:
        a_up = D.levels[s][g.pos].up
        b_up = D.levels[s][g.pos + 1].up
    base = 1 if g.kind == "xo" else -1
    return base * (1 if a_up else -1) * (1 if b_up else -1)


def _crossing_owners(D: SliceDiagram):
    """Map crossing index -> {strand: (component id, going_up)}."""
    owners: dict[int, dict] = {}
    for c in D.components:
        for gi, strand, up in c.passes:
            owners.setdefault(gi, {})[strand] = (c.id, up)
    return owners


def _no_vertices(D: SliceDiagram):
    if any(g.kind in ("mrg", "spl", "v4") for g in D.gens):
        raise DiagramError("writhe and linking numbers need a diagram without vertices")


def writhe(D: SliceDiagram) -> int:
    """Sum of crossing signs. Unoriented diagrams use component directions."""
    _no_vertices(D)
    owners = _crossing_owners(D)
    total = 0
    for s, g in enumerate(D.gens):
        if g.kind in CROSSINGS:
            o = owners[s]
            total += crossing_sign(D, s, o["a"][1], o["b"][1])
    return total


def component_writhe(D: SliceDiagram, k: int) -> int:
    """Signed count of self-crossings of component ``k``."""
    _no_vertices(D)
    total = 0
    for s, o in _crossing_owners(D).items():
        if o["a"][0] == k and o["b"][0] == k:
            total += crossing_sign(D, s, o["a"][1], o["b"][1])
    return total


def linking_number(D: SliceDiagram, c1: int, c2: int) -> int:
    _no_vertices(D)
    if c1 == c2:
        raise DiagramError("linking number needs two distinct components")
    n = len(D.components)
    if not (0 <= c1 < n and 0 <= c2 < n):
        raise DiagramError("no such component")
    total = 0
    for s, o in _crossing_owners(D).items():
        if {o["a"][0], o["b"][0]} == {c1, c2}:
            total += crossing_sign(D, s, o["a"][1], o["b"][1])
    if total % 2:
        raise DiagramError("odd inter-component crossing count")
    return total // 2


def component_rotation(D: SliceDiagram, component) -> int:
    """Rotation number of a closed component by cup/cap counting."""
    c = D.components[component] if isinstance(component, int) else component
    if c.turn2 % 2:
        raise DiagramError("component has half-integral turning")
    return c.turn2 // 2


def total_rotation(D: SliceDiagram) -> int:
    """Sum of rotation numbers of all strands of an oriented diagram,
    each strand counted once regardless of color."""
    if not D.oriented:
        raise DiagramError("rotation needs an oriented diagram")
    t = 0
    for s, g in enumerate(D.gens):
        if g.kind == "cup":
            t += 1 if g.orient == "ru" else -1
        elif g.kind == "cap":
            t += 1 if D.levels[s][g.pos + 1].up else -1
    return t // 2


def mirror(D: SliceDiagram) -> SliceDiagram:
    swap = {"xo": "xu", "xu": "xo"}
    return D.with_gens(replace(g, kind=swap.get(g.kind, g.kind)) for g in D.gens)


# -- word rewriting ------------------------------------------------------


def _commute(g1: Gen, g2: Gen):
    """If ``g1`` then ``g2`` act on disjoint points, return the swapped pair."""
    a1, (i1, o1) = g1.pos, ARITY[g1.kind]
    a2, (i2, o2) = g2.pos, ARITY[g2.kind]
    if a2 + i2 <= a1:
        return replace(g2, pos=a2), replace(g1, pos=a1 + o2 - i2)
    if a2 >= a1 + o1:
        return replace(g2, pos=a2 - o1 + i1), replace(g1, pos=a1)
    return None


def canonical(D: SliceDiagram) -> SliceDiagram:
    """Bubble commuting neighbours toward the lexicographically smaller word."""
    gens = list(D.gens)
    changed = True
    while changed:
        changed = False
        for j in range(len(gens) - 1):
            sw = _commute(gens[j], gens[j + 1])
            if sw is not None and sw[0].key() < gens[j].key():
                gens[j], gens[j + 1] = sw
                changed = True
    return D.with_gens(gens)


def splice(D: SliceDiagram, s: int, sub, kind: str | None = None) -> SliceDiagram:
    """Replace slice ``s`` by the generator list ``sub``."""
    gens = list(D.gens[:s]) + list(sub) + list(D.gens[s + 1:])
    return D.with_gens(gens, kind=kind)


def rewrite(D: SliceDiagram, subs: dict, drop=frozenset(), kind: str | None = None) -> SliceDiagram:
    """Replace several slices at once and delete the points of ``drop``.

    ``subs`` maps slice index to a generator list written in the original
    coordinates of that slice; positions are shifted left by the number of
    deleted points lying strictly left of the slice position.
    """
    return D.with_gens(rewrite_gens(D, subs, drop), kind=kind)


def rewrite_gens(D: SliceDiagram, subs: dict, drop=frozenset()) -> list:
    """The generator list produced by :func:`rewrite`, unvalidated."""
    out = []
    for s, g in enumerate(D.gens):
        row = D.seg_at[s]
        shift = sum(1 for p in range(min(g.pos, len(row))) if row[p] in drop)
        for h in subs.get(s, [g]):
            out.append(replace(h, pos=h.pos - shift))
    return out


def prune_zero(D: SliceDiagram) -> SliceDiagram:
    """Delete 0-colored strands; vertices left 2-valent disappear with them."""
    zero = {seg.id for seg in D.segments if seg.color == 0}
    if not zero:
        return D
    subs = {}
    for s, g in enumerate(D.gens):
        touched = [sid for sid in D.bottom_segs(s) + D.top_segs(s) if sid in zero]
        if touched:
            subs[s] = []
    return rewrite(D, subs, zero)


def orient_cup(left_up: bool) -> str:
    return "lu" if left_up else "ru"


def rotate_node(D: SliceDiagram, s: int, ccw: bool = True) -> SliceDiagram:
    """Redraw the 4-valent node at slice ``s`` turned a quarter turn.

    The node moves up one slice and is flanked by a cup and a cap; the new
    drawing is planar isotopic to the old one, so over/under geometry flips
    between xo and xu."""
    g = D.gens[s]
    if g.kind not in ("xo", "xu", "v4"):
        raise DiagramError(f"slice {s} is not a 4-valent node")
    i = g.pos
    flip = {"xo": "xu", "xu": "xo", "v4": "v4"}[g.kind]
    up = D.levels[s + 1]
    if ccw:
        tl = up[i]
        cup = Gen("cup", i, tl.color if D.oriented else None,
                  orient_cup(tl.up) if D.oriented else None)
        sub = [cup, Gen(flip, i + 1), Gen("cap", i + 2)]
    else:
        tr = up[i + 1]
        cup = Gen("cup", i + 2, tr.color if D.oriented else None,
                  orient_cup(not tr.up) if D.oriented else None)
        sub = [cup, Gen(flip, i + 1), Gen("cap", i)]
    return splice(D, s, sub)


def node_inputs(D: SliceDiagram, s: int) -> frozenset:
    """Which legs of an oriented 4-valent node point into it."""
    g = D.gens[s]
    b0, b1 = D.levels[s][g.pos], D.levels[s][g.pos + 1]
    t0, t1 = D.levels[s + 1][g.pos], D.levels[s + 1][g.pos + 1]
    ins = set()
    if b0.up:
        ins.add("BL")
    if b1.up:
        ins.add("BR")
    if not t0.up:
        ins.add("TL")
    if not t1.up:
        ins.add("TR")
    return frozenset(ins)


def upright(D: SliceDiagram) -> SliceDiagram:
    """Rotate every crossing and rigid vertex until both inputs are at the bottom."""
    if not D.oriented:
        raise DiagramError("upright needs an oriented diagram")
    while True:
        for s, g in enumerate(D.gens):
            if g.kind not in ("xo", "xu", "v4"):
                continue
            ins = node_inputs(D, s)
            if ins == {"BL", "BR"}:
                continue
            if ins in ({"TL", "TR"}, {"BL", "TL"}):
                D = rotate_node(D, s, ccw=True)
            elif ins == {"BR", "TR"}:
                D = rotate_node(D, s, ccw=False)
            else:
                raise DiagramError(f"slice {s}: inconsistent orientation at node")
            break
        else:
            return D


def widen_vertices(D: SliceDiagram) -> SliceDiagram:
    """Replace rigid vertices by the 1,1 -> 2 -> 1,1 merge/split pair."""
    if not any(g.kind == "v4" for g in D.gens):
        return D
    D = upright(D)
    gens = []
    for g in D.gens:
        if g.kind == "v4":
            gens += [Gen("mrg", g.pos), Gen("spl", g.pos, 1)]
        else:
            gens.append(g)
    return D.with_gens(gens, kind="moy")


def reattribute(D: SliceDiagram, color_of, up_of, kind: str) -> SliceDiagram:
    """Rebuild cup/split attributes from per-segment colors and directions."""
    gens = []
    oriented = kind in ORIENTED
    for s, g in enumerate(D.gens):
        if g.kind == "cup":
            sid = D.top_segs(s)[0]
            c = color_of(sid)
            if oriented:
                gens.append(Gen("cup", g.pos, c, orient_cup(up_of(sid))))
            else:
                gens.append(Gen("cup", g.pos))
        elif g.kind == "spl":
            gens.append(Gen("spl", g.pos, color_of(D.top_segs(s)[0])))
        else:
            gens.append(Gen(g.kind, g.pos))
    return D.with_gens(gens, kind=kind)


def forget_orientation(D: SliceDiagram) -> SliceDiagram:
    """Unoriented copy of a 1-colored link diagram."""
    if D.colors() - {1}:
        raise DiagramError("only 1-colored diagrams can be made unoriented")
    return reattribute(D, lambda sid: 1, lambda sid: None, "unoriented")


def orient_components(D: SliceDiagram, forward, color: int = 1) -> SliceDiagram:
    """Orient a vertex-free unoriented diagram, one flag per component
    (True keeps the traversal direction), coloring every strand ``color``."""
    comps = D.components
    if len(forward) != len(comps):
        raise DiagramError(f"need {len(comps)} orientation flags, got {len(forward)}")
    up = {}
    for c, f in zip(comps, forward):
        for sid, d in c.segs:
            up[sid] = (d > 0) == bool(f)
    return reattribute(D, lambda sid: color, up.get, "link")
