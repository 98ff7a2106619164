"""Small builders shared by the tests."""

from pathlib import Path

from moykv.diagram import Gen, SliceDiagram, parse_diagram

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def D(kind, word, name="D"):
    return SliceDiagram(kind, [Gen(*t) for t in word], name)


def shift(word, k):
    return [(t[0], t[1] + k) + tuple(t[2:]) for t in word]


def closure(a, b, tangle, orient="ru", kind="moy"):
    """Close a tangle on two strands (colors a left, b right) around the left."""
    return D(kind, [("cup", 0, b, orient), ("cup", 1, a, orient)] + shift(tangle, 2)
             + [("cap", 1), ("cap", 0)])


def closure3(braid, color=1, kind="link"):
    """Close a braid on three upward strands."""
    if kind == "unoriented":
        cups = [("cup", 0), ("cup", 1), ("cup", 2)]
    else:
        cups = [("cup", 0, color, "ru"), ("cup", 1, color, "ru"), ("cup", 2, color, "ru")]
    return D(kind, cups + shift(braid, 3) + [("cap", 2), ("cap", 1), ("cap", 0)])


def uclosure(tangle):
    """Two-bridge style closure of an unoriented tangle on two strands."""
    return D("unoriented", [("cup", 0), ("cup", 0)] + shift(tangle, 1) + [("cap", 2), ("cap", 0)])


def fork_graph(moves, a, b):
    """A fork of color a+b whose two strands trade color through rungs, then closed.

    Each move is (to_left, k); moves that would empty a strand are skipped."""
    word = [("cup", 0, a + b, "ru"), ("spl", 1, a)]
    for to_left, k in moves:
        if to_left and k < b:
            word += [("spl", 2, k), ("mrg", 1)]
            a, b = a + k, b - k
        elif not to_left and k < a:
            word += [("spl", 1, a - k), ("mrg", 2)]
            a, b = a - k, b + k
    return D("moy", word + [("mrg", 1), ("cap", 0)])


def load(sub, name):
    return parse_diagram((CORPUS / sub / f"{name}.moy").read_text())


def load_dir(sub):
    return [parse_diagram(p.read_text()) for p in sorted((CORPUS / sub).glob("*.moy"))]


CIRCLE = D("moy", [("cup", 0, 1, "ru"), ("cap", 0)])
UNKNOT = D("unoriented", [("cup", 0), ("cap", 0)])
KINK = D("unoriented", [("cup", 0), ("cup", 1), ("xo", 0), ("cap", 1), ("cap", 0)])
KINK_ORIENTED = D("link", [("cup", 0, 1, "lu"), ("cup", 1, 1, "lu"), ("xo", 0), ("cap", 1), ("cap", 0)])
THETA = D("moy", [("cup", 0, 2, "ru"), ("spl", 1, 1), ("mrg", 1), ("cap", 0)])
BOUQUET = D("unoriented", [("cup", 0), ("cup", 1), ("v4", 0), ("cap", 1), ("cap", 0)])
