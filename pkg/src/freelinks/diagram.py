"""Unsigned Gauss codes for free link and tangle diagrams.

A free diagram is stored as one pass sequence per component.  Each crossing
name occurs exactly twice across all sequences (the two passes through a
4-valent vertex).  Open components are oriented arcs read from the lower
endpoint to the upper endpoint; closed components are circles stored with an
arbitrary basepoint at position 0.  Virtual crossings are never represented:
an unsigned Gauss code determines a free diagram up to detour moves, and
every unsigned code is realizable, so no planarity check is performed.

Components are enumerated: ``components[k]`` is component ``k + 1`` and the
numbering is part of the data (it is preserved by all move and splice
operations elsewhere in the package).
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass

__all__ = [
    "Diagram",
    "ComponentCode",
    "Basepoint",
    "CrossingType",
    "Violation",
    "DiagramError",
    "ParseError",
    "parse_diagram",
    "serialize_diagram",
    "validate",
    "crossing_occurrences",
    "crossing_type",
    "pure_crossings",
    "is_good_condition",
    "canonical_form",
    "canonical_key",
    "cut_link",
]

TOKEN_RE = re.compile(r"[A-Za-z0-9_]+\Z")

HEADER_RE = re.compile(r"(tangle|link)\s+n=(\d+)\Z")
COMPONENT_RE = re.compile(r"component\s+(\d+)\s+(open|closed):(.*)\Z")


class DiagramError(ValueError):
    """A diagram violates a structural precondition."""


class ParseError(DiagramError):
    """The text form of a diagram is malformed."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + ("" if column is None else f", column {column}") + ")"
        super().__init__(message + where)


@dataclass(frozen=True)
class ComponentCode:
    """One component of a diagram: its pass sequence in traversal order."""

    closed: bool
    passes: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.passes)


@dataclass(frozen=True)
class Diagram:
    """An enumerated free link or tangle diagram as unsigned Gauss codes."""

    kind: str  # "tangle" or "link"
    components: tuple[ComponentCode, ...]

    @property
    def n(self) -> int:
        return len(self.components)

    @property
    def crossing_names(self) -> frozenset[str]:
        return frozenset(name for comp in self.components for name in comp.passes)

    @property
    def crossing_count(self) -> int:
        return sum(len(comp) for comp in self.components) // 2

    def component(self, i: int) -> ComponentCode:
        """Component by its 1-based index."""
        if not 1 <= i <= self.n:
            raise DiagramError(f"component index {i} out of range 1..{self.n}")
        return self.components[i - 1]


@dataclass(frozen=True)
class Basepoint:
    """A cut location on a component: just before pass ``offset``."""

    component: int
    offset: int


@dataclass(frozen=True)
class CrossingType:
    """The pair of component indices joined by a crossing, with i <= j."""

    i: int
    j: int

    @property
    def is_pure(self) -> bool:
        return self.i == self.j


@dataclass(frozen=True)
class Violation:
    """One broken diagram invariant: the rule name and where it fails."""

    rule: str
    where: str
    detail: str

    def __str__(self) -> str:
        return f"{self.rule} at {self.where}: {self.detail}"


# -- parsing and serialization ----------------------------------------------


def parse_diagram(text: str | bytes) -> Diagram:
    """Parse the line-oriented text format.

    Line 1 is ``tangle n=<N>`` or ``link n=<N>``, followed by N lines
    ``component <i> open: <tok> ...`` or ``component <i> closed: <tok> ...``.
    ``#`` starts a comment; blank lines are skipped.  Raises :class:`ParseError`
    on malformed syntax, on a crossing that does not occur exactly twice, and
    on duplicate or missing component indices.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")

    lines: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            lines.append((lineno, stripped))

    if not lines:
        raise ParseError("empty input: expected 'tangle n=<N>' or 'link n=<N>' header", 1, 1)

    headerno, header = lines[0]
    m = HEADER_RE.match(header)
    if m is None:
        raise ParseError("expected 'tangle n=<N>' or 'link n=<N>'", headerno, 1)
    kind = m.group(1)
    n = int(m.group(2))

    body = lines[1:]
    if len(body) != n:
        raise ParseError(
            f"expected {n} component lines, found {len(body)}",
            body[-1][0] if body else headerno,
            1,
        )

    entries: dict[int, ComponentCode] = {}
    for lineno, line in body:
        m = COMPONENT_RE.match(line)
        if m is None:
            raise ParseError("expected 'component <i> open:|closed: <tokens>'", lineno, 1)
        index = int(m.group(1))
        closed = m.group(2) == "closed"
        rest = m.group(3)
        if not 1 <= index <= n:
            raise ParseError(f"component index {index} out of range 1..{n}", lineno, 1)
        if index in entries:
            raise ParseError(f"duplicate component index {index}", lineno, 1)
        tokens = rest.split()
        for tok in tokens:
            if TOKEN_RE.match(tok) is None:
                col = line.index(tok) + 1
                raise ParseError(f"invalid crossing name {tok!r}", lineno, col)
        entries[index] = ComponentCode(closed=closed, passes=tuple(tokens))

    missing = [i for i in range(1, n + 1) if i not in entries]
    if missing:
        raise ParseError(f"missing component lines for indices {missing}", headerno, 1)

    diagram = Diagram(kind=kind, components=tuple(entries[i] for i in range(1, n + 1)))

    counts = Counter(name for comp in diagram.components for name in comp.passes)
    bad = sorted(name for name, c in counts.items() if c != 2)
    if bad:
        raise ParseError(
            "crossings must occur exactly twice; offenders: " + " ".join(bad),
            headerno,
        )
    return diagram


def serialize_diagram(d: Diagram) -> str:
    """Inverse of :func:`parse_diagram` on valid diagrams."""
    lines = [f"{d.kind} n={d.n}"]
    for i, comp in enumerate(d.components, start=1):
        openness = "closed" if comp.closed else "open"
        suffix = (" " + " ".join(comp.passes)) if comp.passes else ""
        lines.append(f"component {i} {openness}:{suffix}")
    return "\n".join(lines) + "\n"


# -- structural checks -------------------------------------------------------


def validate(d: Diagram) -> list[Violation]:
    """Check all diagram invariants; an empty list means the diagram is valid.

    Violations are data, not errors: invalid diagrams are representable so
    that their defects can be reported.
    """
    violations: list[Violation] = []
    if d.kind not in ("tangle", "link"):
        violations.append(Violation("kind", "header", f"unknown kind {d.kind!r}"))

    counts: Counter[str] = Counter()
    for ci, comp in enumerate(d.components, start=1):
        counts.update(comp.passes)
        if d.kind == "tangle" and comp.closed:
            violations.append(
                Violation("kind", f"component {ci}", "closed component in a tangle")
            )
        elif d.kind == "link" and not comp.closed:
            violations.append(
                Violation("kind", f"component {ci}", "open component in a link")
            )
        for tok in comp.passes:
            if TOKEN_RE.match(tok) is None:
                violations.append(
                    Violation("token", f"component {ci}", f"unserializable name {tok!r}")
                )

    for name in sorted(counts):
        if counts[name] != 2:
            violations.append(
                Violation("arity", f"crossing {name}", f"occurs {counts[name]} times, expected 2")
            )
    return violations


def crossing_occurrences(d: Diagram) -> dict[str, list[tuple[int, int]]]:
    """Map each crossing name to its passes as ``(component, position)`` pairs.

    Components are 1-based and occurrences are listed in scan order.
    """
    occ: dict[str, list[tuple[int, int]]] = {}
    for ci, comp in enumerate(d.components, start=1):
        for pos, name in enumerate(comp.passes):
            occ.setdefault(name, []).append((ci, pos))
    return occ


def crossing_type(d: Diagram, c: str) -> CrossingType:
    """The normalized pair (i, j), i <= j, of components carrying the two passes of c."""
    occ = crossing_occurrences(d).get(c)
    if occ is None:
        raise DiagramError(f"unknown crossing {c!r}")
    if len(occ) != 2:
        raise DiagramError(f"crossing {c!r} occurs {len(occ)} times, expected 2")
    i, j = occ[0][0], occ[1][0]
    return CrossingType(min(i, j), max(i, j))


def pure_crossings(d: Diagram) -> set[str]:
    """Crossings whose two passes lie on a single component."""
    occ = crossing_occurrences(d)
    return {name for name, places in occ.items() if len(places) == 2 and places[0][0] == places[1][0]}


def is_good_condition(d: Diagram) -> tuple[bool, dict[tuple[int, int], int]]:
    """Whether every mixed pair (i, j), i < j, carries an even number of crossings.

    Returns the verdict and the full parity table (count mod 2 per pair).
    Pure-crossing counts are unconstrained.
    """
    table = {(i, j): 0 for i in range(1, d.n + 1) for j in range(i + 1, d.n + 1)}
    for places in crossing_occurrences(d).values():
        if len(places) != 2:
            continue
        i, j = places[0][0], places[1][0]
        if i != j:
            key = (min(i, j), max(i, j))
            table[key] ^= 1
    return all(bit == 0 for bit in table.values()), table


# -- canonical form -----------------------------------------------------------


def _closed_variants(passes: tuple[str, ...]) -> list[tuple[str, ...]]:
    """All rotations of a closed pass sequence and of its reversal."""
    if not passes:
        return [()]
    variants = set()
    for seq in (passes, passes[::-1]):
        for r in range(len(seq)):
            variants.add(seq[r:] + seq[:r])
    return sorted(variants)


def canonical_key(d: Diagram) -> tuple:
    """A hashable value equal for exactly the diagrams related by crossing
    renaming, closed-component rotation and closed-component reversal.

    Crossings are relabeled 1, 2, 3, ... in order of first occurrence while
    scanning components in index order; per closed component, the
    rotation/reversal producing the lexicographically least relabeled pass
    sequence is chosen by exhaustive search over all combinations.  The
    search is pruned: a combination whose relabeled prefix is already beaten
    can never win, so only tying prefixes are carried forward (the result is
    identical to the unpruned product).
    """
    bad = validate(d)
    if bad:
        raise DiagramError("invalid diagram: " + "; ".join(str(v) for v in bad))

    # state: (labels dict, next fresh label) for one undominated prefix
    states: list[tuple[dict[str, int], int]] = [({}, 1)]
    key_parts: list[tuple[bool, tuple[int, ...]]] = []
    for comp in d.components:
        variants = _closed_variants(comp.passes) if comp.closed else [comp.passes]
        best: tuple[int, ...] | None = None
        survivors: list[tuple[dict[str, int], int]] = []
        seen: set[tuple] = set()
        for labels, nxt in states:
            for variant in variants:
                lbls = dict(labels)
                fresh = nxt
                rel = []
                for tok in variant:
                    code = lbls.get(tok)
                    if code is None:
                        code = lbls[tok] = fresh
                        fresh += 1
                    rel.append(code)
                key = tuple(rel)
                if best is None or key < best:
                    best = key
                    survivors = [(lbls, fresh)]
                    seen = {(fresh, tuple(sorted(lbls.items())))}
                elif key == best:
                    sig = (fresh, tuple(sorted(lbls.items())))
                    if sig not in seen:
                        seen.add(sig)
                        survivors.append((lbls, fresh))
        assert best is not None
        key_parts.append((comp.closed, best))
        states = survivors
    return (d.kind, tuple(key_parts))


def canonical_form(d: Diagram) -> Diagram:
    """The canonical representative of d under renaming/rotation/reversal.

    Open components are never rotated or reversed (their orientation and
    endpoints are fixed structure); component indices are never permuted.
    Idempotent, and equal on any two diagrams differing only by crossing
    renaming, closed-component basepoint rotation, or closed-component
    traversal reversal.
    """
    kind, parts = canonical_key(d)
    comps = tuple(
        ComponentCode(closed=closed, passes=tuple(str(code) for code in rel))
        for closed, rel in parts
    )
    return Diagram(kind=kind, components=comps)


# -- cutting a link into a tangle ---------------------------------------------


def cut_link(d: Diagram, basepoints: list[Basepoint]) -> Diagram:
    """Cut every closed component at its basepoint, producing a tangle.

    Each component's pass sequence becomes the cyclic sequence read from the
    cut; crossing names and types are unchanged.  New intersections made when
    routing endpoints are virtual, hence invisible at the Gauss-code level.
    """
    if d.kind != "link":
        raise DiagramError("cut_link expects a link")
    if len(basepoints) != d.n:
        raise DiagramError(f"need exactly one basepoint per component, got {len(basepoints)} for n={d.n}")
    offsets: dict[int, int] = {}
    for b in basepoints:
        if not 1 <= b.component <= d.n:
            raise DiagramError(f"basepoint component {b.component} out of range 1..{d.n}")
        if b.component in offsets:
            raise DiagramError(f"two basepoints on component {b.component}")
        length = len(d.components[b.component - 1])
        if not 0 <= b.offset <= length:
            raise DiagramError(
                f"basepoint offset {b.offset} out of range 0..{length} on component {b.component}"
            )
        offsets[b.component] = b.offset % length if length else 0

    comps = []
    for ci, comp in enumerate(d.components, start=1):
        o = offsets[ci]
        comps.append(ComponentCode(closed=False, passes=comp.passes[o:] + comp.passes[:o]))
    return Diagram(kind="tangle", components=tuple(comps))
