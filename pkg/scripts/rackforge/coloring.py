"""Knot diagrams from planar-diagram codes, and their quandle colorings.

A PD code lists crossings ``X(i, j, k, l)``: edge labels read
counterclockwise from the incoming under-edge, so the under strand runs
``i -> k`` and the over strand joins ``j`` and ``l``. The token ``O`` stands
for a crossingless unknotted component.

Edges meeting along an over strand belong to one Wirtinger arc. Colorings
assign a quandle element to each arc so that at every crossing::

    positive:  out == in ◁ over
    negative:  out ◁ over == in

A crossing is positive when its over strand runs from ``l`` to ``j``.
"""

import logging
import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InconsistentDiagramError, NotAQuandleError, ParseError
from .racks import FiniteRack, left_divide

logger = logging.getLogger(__name__)

Coloring = Tuple[int, ...]

_TOKEN = re.compile(r"\s*(?:(?P<cross>[Xx])\s*[\(\[](?P<args>[^\)\]]*)[\)\]]|(?P<loop>O)\b)")
_SEPARATOR = re.compile(r"[\s,;]*")


@dataclass(frozen=True)
class Crossing:
    over: int
    under_in: int
    under_out: int
    positive: bool

    @property
    def sign(self) -> int:
        return 1 if self.positive else -1


@dataclass(frozen=True)
class KnotDiagram:
    """Arcs ``0..arcs-1`` and the crossings between them."""

    arcs: int
    crossings: Tuple[Crossing, ...]

    @classmethod
    def unknot(cls) -> "KnotDiagram":
        return cls(1, ())

    def writhe(self) -> int:
        return sum(c.sign for c in self.crossings)


def validate_diagram(arcs: int, crossings: Sequence[Crossing]) -> KnotDiagram:
    """Raises InconsistentDiagramError on out-of-range arcs or an arc ending twice."""
    if arcs < 1:
        raise InconsistentDiagramError("a diagram needs at least one arc")
    ending: Dict[int, int] = {}
    for c, crossing in enumerate(crossings):
        for arc in (crossing.over, crossing.under_in, crossing.under_out):
            if not 0 <= arc < arcs:
                raise InconsistentDiagramError(f"crossing {c} names arc {arc} of {arcs}", (c, arc))
        if crossing.under_out in ending:
            raise InconsistentDiagramError(
                f"arc {crossing.under_out} starts at crossings {ending[crossing.under_out]} and {c}",
                (ending[crossing.under_out], c))
        ending[crossing.under_out] = c
    return KnotDiagram(arcs, tuple(crossings))


# ---------------------------------------------------------------------------
# PD parsing
# ---------------------------------------------------------------------------

def _strip_comments(text: str) -> str:
    return "\n".join(line.split("#", 1)[0] for line in text.splitlines())


_WRAPPER = re.compile(r"\s*PD\s*[\(\[](?P<body>.*)[\)\]]\s*", re.DOTALL | re.IGNORECASE)


def _tokenize(text: str) -> Tuple[List[Tuple[int, ...]], int]:
    """Crossing label tuples and the number of free loops."""
    start, end = 0, len(text)
    wrapped = _WRAPPER.fullmatch(text)
    if wrapped:
        start, end = wrapped.span("body")
    crossings, loops = [], 0
    pos = start
    while True:
        pos = _SEPARATOR.match(text, pos, end).end()
        if pos >= end:
            break
        match = _TOKEN.match(text, pos, end)
        if match is None:
            raise ParseError(f"unexpected {text[pos:min(pos + 10, end)]!r}", pos)
        if match.group("loop"):
            loops += 1
        else:
            fields = [f.strip() for f in match.group("args").split(",")]
            if len(fields) != 4 or not all(re.fullmatch(r"-?\d+", f) for f in fields):
                raise ParseError("a crossing needs four integer labels", match.start("args"))
            crossings.append(tuple(int(f) for f in fields))
        pos = match.end()
    if not crossings and not loops:
        raise ParseError("no crossings or loops in PD code", start)
    return crossings, loops


def _orient(labels: List[Tuple[int, ...]]) -> List[bool]:
    """Decide for each crossing whether the over strand enters at ``j``.

    Every edge label enters exactly one slot and leaves from one; the under
    slots fix ``i`` as entering and ``k`` as leaving, and the rest follows by
    walking along components. A component that never passes under is
    oriented from its lower label.
    """
    occurrences: Dict[int, List[Tuple[int, int]]] = {}
    for c, quad in enumerate(labels):
        for slot, label in enumerate(quad):
            occurrences.setdefault(label, []).append((c, slot))
    for label, seen in occurrences.items():
        if len(seen) != 2:
            raise InconsistentDiagramError(f"edge {label} appears {len(seen)} times, expected 2", (label,))

    entering: Dict[Tuple[int, int], bool] = {}
    pending: List[Tuple[Tuple[int, int], bool]] = []
    for c in range(len(labels)):
        pending += [((c, 0), True), ((c, 2), False)]

    def settle() -> None:
        while pending:
            place, value = pending.pop()
            if place in entering:
                if entering[place] != value:
                    raise InconsistentDiagramError(f"edge orientation clash at crossing {place[0]}", place)
                continue
            entering[place] = value
            c, slot = place
            label = labels[c][slot]
            other = next(o for o in occurrences[label] if o != place)
            pending.append((other, not value))
            if slot in (1, 3):
                pending.append(((c, 4 - slot), not value))

    settle()
    for c, quad in enumerate(labels):
        if (c, 1) not in entering:
            pending.append(((c, 1), quad[1] < quad[3]))
            settle()
    return [entering[(c, 1)] for c in range(len(labels))]


class _UnionFind:
    def __init__(self) -> None:
        self.parent: Dict[int, int] = {}

    def find(self, item: int) -> int:
        self.parent.setdefault(item, item)
        while self.parent[item] != item:
            self.parent[item] = self.parent[self.parent[item]]
            item = self.parent[item]
        return item

    def union(self, a: int, b: int) -> None:
        self.parent[self.find(a)] = self.find(b)


def parse_pd(text: str) -> KnotDiagram:
    """Parse a PD code into a diagram on Wirtinger arcs.

    Raises:
        ParseError: Malformed text, with the character offset.
        InconsistentDiagramError: Labels that do not close up into a diagram.
    """
    labels, loops = _tokenize(_strip_comments(text))
    enters_at_j = _orient(labels)

    arcs = _UnionFind()
    for i, j, k, l in labels:
        for label in (i, k):
            arcs.find(label)
        arcs.union(j, l)
    roots = sorted({arcs.find(label) for quad in labels for label in quad})
    arc_of = {root: n for n, root in enumerate(roots)}

    crossings = [
        Crossing(over=arc_of[arcs.find(j)], under_in=arc_of[arcs.find(i)],
                 under_out=arc_of[arcs.find(k)], positive=not enters_at_j[c])
        for c, (i, j, k, l) in enumerate(labels)
    ]
    diagram = validate_diagram(len(roots) + loops, crossings)
    logger.debug(f"Parsed PD code: {diagram.arcs} arcs, {len(diagram.crossings)} crossings")
    return diagram


def torus_link_pd(n: int) -> str:
    """PD code of the ``(2, n)`` torus knot (n odd) or two-component link (n even)."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if n % 2:
        def wrap(v: int) -> int:
            return (v - 1) % (2 * n) + 1
        quads = [(i, wrap(i + n), wrap(i + 1), wrap(i + n + 1)) for i in range(1, 2 * n, 2)]
    else:
        def a(k: int) -> int:
            return k if k else n

        def b(k: int) -> int:
            return n + k if k else 2 * n
        quads = [(a(c - 1), b(c - 1), a(c), b(c)) if c % 2 else (b(c - 1), a(c - 1), b(c), a(c))
                 for c in range(1, n + 1)]
    return " ".join(f"X({','.join(str(v) for v in quad)})" for quad in quads)


# ---------------------------------------------------------------------------
# Colorings
# ---------------------------------------------------------------------------

def _propagate(diagram: KnotDiagram, quandle: FiniteRack, colors: List[Optional[int]]) -> bool:
    """Fill in every color forced by a crossing; False on a contradiction."""
    t = quandle.table
    changed = True
    while changed:
        changed = False
        for c in diagram.crossings:
            over, cin, cout = colors[c.over], colors[c.under_in], colors[c.under_out]
            if over is None:
                continue
            if cin is not None:
                expected = t[cin][over] if c.positive else left_divide(quandle, cin, over)
                if cout is None:
                    colors[c.under_out] = expected
                    changed = True
                elif cout != expected:
                    return False
            elif cout is not None:
                colors[c.under_in] = left_divide(quandle, cout, over) if c.positive else t[cout][over]
                changed = True
    return True


def enumerate_colorings(diagram: KnotDiagram, quandle: FiniteRack) -> List[Coloring]:
    """All arc colorings, in lexicographic order.

    Raises:
        NotAQuandleError: If ``quandle`` is only a rack.
    """
    if not quandle.is_quandle:
        raise NotAQuandleError("colorings need a quandle")
    found: List[Coloring] = []

    def descend(colors: List[Optional[int]]) -> None:
        free = next((arc for arc, color in enumerate(colors) if color is None), None)
        if free is None:
            found.append(tuple(colors))
            return
        for value in quandle.elements():
            trial = list(colors)
            trial[free] = value
            if _propagate(diagram, quandle, trial):
                descend(trial)

    descend([None] * diagram.arcs)
    found.sort()
    logger.debug(f"{len(found)} colorings of a {diagram.arcs}-arc diagram by a quandle of order {quandle.size}")
    return found


def coloring_count(diagram: KnotDiagram, quandle: FiniteRack) -> int:
    return len(enumerate_colorings(diagram, quandle))
