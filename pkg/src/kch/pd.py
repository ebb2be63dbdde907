"""Planar diagram codes for oriented links.

Input format: statements separated by ``;``, each either the literal
``UNKNOT`` (a crossing-free circle) or ``X[a,b,c,d]`` with positive integer
arc labels listed counterclockwise starting from the incoming under-strand.
Slot 0 is therefore the under-strand arriving, slot 2 the under-strand
leaving, and slots 1 and 3 carry the over-strand.  The over-strand direction
is not written down; it is inferred from the global requirement that every
arc runs from exactly one crossing exit to exactly one crossing entry.  A
crossing is positive when its over-strand enters at slot 3 and leaves at
slot 1, negative the other way around.

Components whose arcs touch only over-slots admit both orientations; the
lowest-numbered crossing involved is canonically given the positive one, so
parsing is deterministic.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass

from .errors import DomainError, ParseError

Crossing = tuple[int, int, int, int]

_X_STATEMENT = re.compile(
    r"X\s*\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\]"
)


@dataclass(frozen=True)
class LinkDiagram:
    """An oriented link diagram: crossing records, their signs, free circles."""

    crossings: tuple[Crossing, ...]
    signs: tuple[int, ...]
    circles: int = 0

    def __post_init__(self):
        if len(self.signs) != len(self.crossings):
            raise DomainError("need exactly one sign per crossing")
        if any(s not in (-1, 1) for s in self.signs):
            raise DomainError("crossing signs must be +1 or -1")
        if self.circles < 0:
            raise DomainError("circle count cannot be negative")
        if self.circles == 0 and not self.crossings:
            raise DomainError("a diagram needs at least one component")
        entries: Counter = Counter()
        exits: Counter = Counter()
        for record, sign in zip(self.crossings, self.signs):
            if any(label <= 0 for label in record):
                raise DomainError("arc labels must be positive integers")
            a, b, c, d = record
            entries[a] += 1
            exits[c] += 1
            if sign > 0:
                entries[d] += 1
                exits[b] += 1
            else:
                entries[b] += 1
                exits[d] += 1
        if set(entries) != set(exits) or any(v != 1 for v in entries.values()) or any(
            v != 1 for v in exits.values()
        ):
            raise DomainError("every arc must enter one crossing and leave one crossing")

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    def arc_labels(self) -> tuple[int, ...]:
        labels = set()
        for record in self.crossings:
            labels.update(record)
        return tuple(sorted(labels))

    def writhe(self) -> int:
        return sum(self.signs)

    def successor_map(self) -> dict[int, tuple[int, int, bool]]:
        """arc -> (next arc, crossing index, True when the passage is under)."""
        out: dict[int, tuple[int, int, bool]] = {}
        for k, (record, sign) in enumerate(zip(self.crossings, self.signs)):
            a, b, c, d = record
            out[a] = (c, k, True)
            if sign > 0:
                out[d] = (b, k, False)
            else:
                out[b] = (d, k, False)
        return out

    def component_cycles(self) -> tuple[tuple[int, ...], ...]:
        """Arc cycles of the strands, each starting at its smallest label."""
        successor = self.successor_map()
        seen: set[int] = set()
        cycles = []
        for start in sorted(successor):
            if start in seen:
                continue
            cycle = []
            arc = start
            while True:
                cycle.append(arc)
                seen.add(arc)
                arc = successor[arc][0]
                if arc == start:
                    break
            cycles.append(tuple(cycle))
        return tuple(cycles)

    @property
    def component_count(self) -> int:
        return len(self.component_cycles()) + self.circles


def parse_pd(text: str) -> LinkDiagram:
    """Parse the PD format, inferring orientations and crossing signs."""
    statements = [piece.strip() for piece in text.split(";")]
    statements = [piece for piece in statements if piece]
    if not statements:
        raise ParseError("empty diagram text")
    crossings: list[Crossing] = []
    circles = 0
    for idx, statement in enumerate(statements, start=1):
        if statement == "UNKNOT":
            circles += 1
            continue
        match = _X_STATEMENT.fullmatch(statement)
        if match is None:
            raise ParseError(f"statement {idx}: expected X[a,b,c,d] or UNKNOT, got {statement!r}")
        labels = tuple(int(g) for g in match.groups())
        if any(label == 0 for label in labels):
            raise ParseError(f"statement {idx}: arc labels must be positive")
        crossings.append(labels)

    counts: Counter = Counter()
    for record in crossings:
        counts.update(record)
    for label, count in sorted(counts.items()):
        if count != 2:
            raise ParseError(f"arc {label} appears {count} times; every arc appears exactly twice")

    signs = _infer_signs(crossings)
    return LinkDiagram(tuple(crossings), signs, circles)


def _infer_signs(crossings: list[Crossing]) -> tuple[int, ...]:
    """Assign an over-strand direction to each crossing.

    Roles (entry/exit) propagate from the fixed under-strand slots through
    the rule that each arc has one entry and one exit end; surviving
    ambiguity means a component lies entirely on over-strands, and its
    lowest-numbered crossing is set positive.
    """
    occurrences: dict[int, list[tuple[int, int]]] = {}
    for k, record in enumerate(crossings):
        for slot, label in enumerate(record):
            occurrences.setdefault(label, []).append((k, slot))

    roles: dict[tuple[int, int], bool] = {}
    over_dir: dict[int, int] = {}
    queue: list[tuple[int, int, bool]] = []

    def crossing_of(statement_index: int) -> str:
        return f"crossing {statement_index + 1}"

    def set_role(k: int, slot: int, is_entry: bool) -> None:
        key = (k, slot)
        known = roles.get(key)
        if known is not None:
            if known != is_entry:
                raise ParseError(f"orientation inconsistency at {crossing_of(k)}")
            return
        roles[key] = is_entry
        queue.append((k, slot, is_entry))

    def set_over_dir(k: int, direction: int) -> None:
        known = over_dir.get(k)
        if known is not None:
            if known != direction:
                raise ParseError(f"orientation inconsistency at {crossing_of(k)}")
            return
        over_dir[k] = direction
        # positive: enters at slot 3, leaves at slot 1
        set_role(k, 3, direction > 0)
        set_role(k, 1, direction < 0)

    for k in range(len(crossings)):
        set_role(k, 0, True)
        set_role(k, 2, False)

    def drain() -> None:
        while queue:
            k, slot, is_entry = queue.pop()
            if slot in (1, 3):
                if slot == 3:
                    set_over_dir(k, 1 if is_entry else -1)
                else:
                    set_over_dir(k, -1 if is_entry else 1)
            label = crossings[k][slot]
            first, second = occurrences[label]
            other = second if (k, slot) == first else first
            set_role(other[0], other[1], not is_entry)

    drain()
    for k in range(len(crossings)):
        if k not in over_dir:
            set_over_dir(k, 1)
            drain()
    return tuple(over_dir[k] for k in range(len(crossings)))


def switch_crossing(diagram: LinkDiagram, index: int) -> LinkDiagram:
    """Exchange over- and under-strand at one crossing, flipping its sign.

    The record is rotated so the new under-strand arrival sits in slot 0;
    all other crossings and the inferred orientations are untouched.
    """
    if not (0 <= index < diagram.crossing_count):
        raise DomainError(f"no crossing {index}")
    a, b, c, d = diagram.crossings[index]
    sign = diagram.signs[index]
    if sign > 0:
        record = (d, a, b, c)
    else:
        record = (b, c, d, a)
    crossings = list(diagram.crossings)
    signs = list(diagram.signs)
    crossings[index] = record
    signs[index] = -sign
    return LinkDiagram(tuple(crossings), tuple(signs), diagram.circles)


def smooth_crossing(diagram: LinkDiagram, index: int) -> LinkDiagram:
    """Replace one crossing by the oriented smoothing.

    Entering and leaving arcs are joined respecting orientation (positive:
    slot 0 to slot 1 and slot 3 to slot 2; negative: slot 0 to slot 3 and
    slot 1 to slot 2).  A join whose two ends already belong to the same arc
    chain closes a free circle.
    """
    if not (0 <= index < diagram.crossing_count):
        raise DomainError(f"no crossing {index}")
    a, b, c, d = diagram.crossings[index]
    sign = diagram.signs[index]
    joins = ((a, b), (d, c)) if sign > 0 else ((a, d), (b, c))

    parent: dict[int, int] = {}

    def find(x: int) -> int:
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    circles = diagram.circles
    for x, y in joins:
        rx, ry = find(x), find(y)
        if rx == ry:
            circles += 1
        else:
            parent[max(rx, ry)] = min(rx, ry)

    crossings = []
    signs = []
    for k, (record, s) in enumerate(zip(diagram.crossings, diagram.signs)):
        if k == index:
            continue
        crossings.append(tuple(find(label) for label in record))
        signs.append(s)
    return LinkDiagram(tuple(crossings), tuple(signs), circles)
