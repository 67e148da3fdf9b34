"""Reidemeister moves for free diagrams, acting on Gauss codes.

The three moves become local rewriting rules on pass sequences:

* first move: delete or insert an adjacent double occurrence ``x x``;
* second move: delete or insert two crossings whose four occurrences form
  two disjoint adjacent pairs, each pair reading ``x y`` or ``y x`` (free
  diagrams carry no signs, so both relative orders are legal);
* third move: three disjoint adjacent pairs covering the letter sets
  ``{x,y} {x,z} {y,z}``; applying the move reverses each pair in place.

Adjacency is cyclic on closed components.  A pair located at position ``p``
occupies positions ``p`` and ``p+1`` modulo the component length, so on a
closed component ``p = len-1`` denotes the pair wrapping over the stored
basepoint.  Insertions may likewise be "wrapped" (one letter prepended, one
appended), which makes every deletion exactly invertible.

Deletions and third-move sites are finitely enumerable; insertions form
infinite families and are produced as candidate lists for the random walk
and the bounded search instead.
"""

from __future__ import annotations

import random
import re
from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .diagram import (
    ComponentCode,
    Diagram,
    DiagramError,
    canonical_key,
    pure_crossings,
    validate,
)

__all__ = [
    "MoveSite",
    "WalkTrace",
    "SearchVerdict",
    "MoveError",
    "enumerate_moves",
    "apply_move",
    "inverse_site",
    "move_candidates",
    "random_walk",
    "bounded_equivalence_search",
    "serialize_trace",
    "parse_trace",
    "replay",
]

DELETION_KINDS = ("R1_delete", "R2_delete", "R3")
ALL_KINDS = ("R1_delete", "R1_insert", "R2_delete", "R2_insert", "R3")


class MoveError(ValueError):
    """A move site does not apply to the given diagram."""


@dataclass(frozen=True)
class MoveSite:
    """A located move, with enough data to apply it deterministically.

    ``pairs`` locates adjacent pairs as ``(component, position)`` with
    1-based components (used by deletions and the third move); ``slots``
    locates insertions as ``(component, position, wrapped)``.  For a second
    move insertion, the first slot receives the letters ``names`` in order
    and the second receives them in the same order when ``same_order`` else
    swapped.
    """

    kind: str
    names: tuple[str, ...]
    pairs: tuple[tuple[int, int], ...] = ()
    slots: tuple[tuple[int, int, bool], ...] = ()
    same_order: bool = True


@dataclass(frozen=True)
class WalkTrace:
    """A replayable move sequence: replaying ``moves`` from ``initial`` yields ``final``."""

    initial: Diagram
    moves: tuple[MoveSite, ...]
    final: Diagram


@dataclass(frozen=True)
class SearchVerdict:
    """Outcome of a bounded equivalence search; never claims inequivalence."""

    equivalent: bool
    trace: WalkTrace | None = None


# -- pattern scanning ---------------------------------------------------------


def _adjacent_pairs(d: Diagram) -> list[tuple[int, int, tuple[str, str]]]:
    """All adjacent pairs as (component, position, letters), deduplicated.

    On a closed 2-pass component the two cyclic adjacencies cover the same
    position set, so only position 0 is reported.
    """
    out = []
    for ci, comp in enumerate(d.components, start=1):
        L = len(comp.passes)
        if L < 2:
            continue
        positions = range(L) if comp.closed else range(L - 1)
        seen: set[frozenset[int]] = set()
        for p in positions:
            q = (p + 1) % L
            posset = frozenset((p, q))
            if posset in seen:
                continue
            seen.add(posset)
            out.append((ci, p, (comp.passes[p], comp.passes[q])))
    return out


def _pair_positions(comp: ComponentCode, pos: int) -> tuple[int, int]:
    L = len(comp.passes)
    if L < 2:
        raise MoveError(f"no adjacent pair in a component of length {L}")
    if comp.closed:
        if not 0 <= pos < L:
            raise MoveError(f"pair position {pos} out of range 0..{L - 1}")
        return pos, (pos + 1) % L
    if not 0 <= pos < L - 1:
        raise MoveError(f"pair position {pos} out of range 0..{L - 2}")
    return pos, pos + 1


def enumerate_moves(d: Diagram, *, kinds=None, forbid_pure: bool = False) -> list[MoveSite]:
    """All applicable deletion and third-move sites of the requested kinds.

    Insertions are infinite families and are not enumerated (see
    :func:`move_candidates`).  Under ``forbid_pure``, first-move sites are
    dropped entirely and the remaining sites are filtered so that the result
    of applying them has no pure crossing.
    """
    bad = validate(d)
    if bad:
        raise DiagramError("invalid diagram: " + "; ".join(str(v) for v in bad))
    if kinds is None:
        kinds = set(DELETION_KINDS)
    else:
        kinds = set(kinds)
        unknown = kinds - set(ALL_KINDS)
        if unknown:
            raise MoveError(f"unknown move kinds {sorted(unknown)}")

    pairs = _adjacent_pairs(d)
    sites: list[MoveSite] = []

    if "R1_delete" in kinds and not forbid_pure:
        for ci, p, (a, b) in pairs:
            if a == b:
                sites.append(MoveSite("R1_delete", names=(a,), pairs=((ci, p),)))

    if "R2_delete" in kinds:
        by_letters: dict[frozenset[str], list[tuple[int, int]]] = {}
        for ci, p, (a, b) in pairs:
            if a != b:
                by_letters.setdefault(frozenset((a, b)), []).append((ci, p))
        for letters, places in by_letters.items():
            for loc1, loc2 in combinations(places, 2):
                if not _disjoint(d, loc1, loc2):
                    continue
                first, second = sorted((loc1, loc2))
                ci, p = first
                comp = d.components[ci - 1]
                x, y = comp.passes[p], comp.passes[_pair_positions(comp, p)[1]]
                sites.append(MoveSite("R2_delete", names=(x, y), pairs=(first, second)))

    if "R3" in kinds:
        by_letters = {}
        for ci, p, (a, b) in pairs:
            if a != b:
                by_letters.setdefault(frozenset((a, b)), []).append((ci, p))
        lettersets = sorted(by_letters, key=sorted)
        for s1, s2, s3 in combinations(lettersets, 3):
            union = s1 | s2 | s3
            if len(union) != 3:
                continue
            # three distinct 2-subsets of a 3-set are exactly {x,y} {x,z} {y,z}
            for loc1 in by_letters[s1]:
                for loc2 in by_letters[s2]:
                    for loc3 in by_letters[s3]:
                        locs = (loc1, loc2, loc3)
                        if all(
                            _disjoint(d, u, v) for u, v in combinations(locs, 2)
                        ):
                            sites.append(
                                MoveSite("R3", names=tuple(sorted(union)), pairs=tuple(sorted(locs)))
                            )

    seen_sites = set()
    unique = []
    for site in sites:
        sig = (site.kind, site.pairs)
        if sig not in seen_sites:
            seen_sites.add(sig)
            unique.append(site)

    if forbid_pure:
        unique = [s for s in unique if not pure_crossings(apply_move(d, s))]
    unique.sort(key=lambda s: (s.kind, s.pairs, s.names))
    return unique


def _disjoint(d: Diagram, loc1: tuple[int, int], loc2: tuple[int, int]) -> bool:
    (c1, p1), (c2, p2) = loc1, loc2
    if c1 != c2:
        return True
    comp = d.components[c1 - 1]
    return not (set(_pair_positions(comp, p1)) & set(_pair_positions(comp, p2)))


# -- application --------------------------------------------------------------


def apply_move(d: Diagram, m: MoveSite) -> Diagram:
    """Apply a move site; raises :class:`MoveError` if its pattern is absent.

    Component count, component indices, openness and all passes outside the
    site are unchanged.
    """
    comps = list(d.components)
    if m.kind == "R1_delete":
        ((ci, p),) = m.pairs
        comp = _component(d, ci)
        a, b = _pair_positions(comp, p)
        (x,) = m.names
        if comp.passes[a] != x or comp.passes[b] != x:
            raise MoveError(f"no double occurrence of {x!r} at component {ci} position {p}")
        comps[ci - 1] = _delete_positions(comp, {a, b})
    elif m.kind == "R1_insert":
        ((ci, p, wrapped),) = m.slots
        (x,) = m.names
        if x in d.crossing_names:
            raise MoveError(f"crossing name {x!r} already present")
        comp = _component(d, ci)
        comps[ci - 1] = _insert_pair(comp, p, (x, x), wrapped)
    elif m.kind == "R2_delete":
        loc1, loc2 = m.pairs
        x, y = m.names
        if x == y:
            raise MoveError("second-move crossings must be distinct")
        _check_pair_letters(d, loc1, (x, y))
        second = _pair_letters(d, loc2)
        if set(second) != {x, y}:
            raise MoveError(f"pair at {loc2} reads {second}, expected letters {{{x}, {y}}}")
        if not _disjoint(d, loc1, loc2):
            raise MoveError("second-move pairs overlap")
        deletions: dict[int, set[int]] = {}
        for ci, p in (loc1, loc2):
            a, b = _pair_positions(_component(d, ci), p)
            deletions.setdefault(ci, set()).update((a, b))
        for ci, positions in deletions.items():
            comps[ci - 1] = _delete_positions(comps[ci - 1], positions)
    elif m.kind == "R2_insert":
        slot_a, slot_b = m.slots
        x, y = m.names
        if x == y:
            raise MoveError("second-move crossings must be distinct")
        for name in (x, y):
            if name in d.crossing_names:
                raise MoveError(f"crossing name {name!r} already present")
        pair_a = (x, y)
        pair_b = (x, y) if m.same_order else (y, x)
        comps = _apply_two_inserts(d, comps, (slot_a, pair_a), (slot_b, pair_b))
    elif m.kind == "R3":
        locs = m.pairs
        if len(locs) != 3:
            raise MoveError("third move needs exactly three pairs")
        lettersets = [frozenset(_pair_letters(d, loc)) for loc in locs]
        union = frozenset().union(*lettersets)
        if len(union) != 3 or any(len(s) != 2 for s in lettersets) or len(set(lettersets)) != 3:
            raise MoveError(f"pairs at {locs} do not form a triangle")
        for u, v in combinations(locs, 2):
            if not _disjoint(d, u, v):
                raise MoveError("third-move pairs overlap")
        for ci, p in locs:
            comp = comps[ci - 1]
            a, b = _pair_positions(comp, p)
            passes = list(comp.passes)
            passes[a], passes[b] = passes[b], passes[a]
            comps[ci - 1] = ComponentCode(comp.closed, tuple(passes))
    else:
        raise MoveError(f"unknown move kind {m.kind!r}")
    return Diagram(kind=d.kind, components=tuple(comps))


def _component(d: Diagram, ci: int) -> ComponentCode:
    if not 1 <= ci <= d.n:
        raise MoveError(f"component {ci} out of range 1..{d.n}")
    return d.components[ci - 1]


def _pair_letters(d: Diagram, loc: tuple[int, int]) -> tuple[str, str]:
    ci, p = loc
    comp = _component(d, ci)
    a, b = _pair_positions(comp, p)
    return comp.passes[a], comp.passes[b]


def _check_pair_letters(d: Diagram, loc: tuple[int, int], expected: tuple[str, str]):
    actual = _pair_letters(d, loc)
    if actual != expected:
        raise MoveError(f"pair at {loc} reads {actual}, expected {expected}")


def _delete_positions(comp: ComponentCode, positions: set[int]) -> ComponentCode:
    passes = tuple(tok for k, tok in enumerate(comp.passes) if k not in positions)
    return ComponentCode(comp.closed, passes)


def _insert_pair(comp: ComponentCode, pos: int, pair: tuple[str, str], wrapped: bool) -> ComponentCode:
    if wrapped:
        if not comp.closed:
            raise MoveError("wrapped insertion needs a closed component")
        first, second = pair
        return ComponentCode(True, (second,) + comp.passes + (first,))
    if not 0 <= pos <= len(comp.passes):
        raise MoveError(f"insertion position {pos} out of range 0..{len(comp.passes)}")
    return ComponentCode(comp.closed, comp.passes[:pos] + pair + comp.passes[pos:])


def _apply_two_inserts(d, comps, first, second):
    (slot_a, pair_a), (slot_b, pair_b) = first, second
    (ca, pa, wa), (cb, pb, wb) = slot_a, slot_b
    if ca != cb:
        comps[ca - 1] = _insert_pair(_component(d, ca), pa, pair_a, wa)
        comps[cb - 1] = _insert_pair(_component(d, cb), pb, pair_b, wb)
        return comps
    comp = _component(d, ca)
    if wa and wb:
        raise MoveError("at most one wrapped insertion per component")
    if wa:
        comp = _insert_pair(comp, pb, pair_b, False)
        comp = _insert_pair(comp, 0, pair_a, True)
    elif wb:
        comp = _insert_pair(comp, pa, pair_a, False)
        comp = _insert_pair(comp, 0, pair_b, True)
    elif pa <= pb:
        comp = _insert_pair(comp, pb, pair_b, False)
        comp = _insert_pair(comp, pa, pair_a, False)
    else:
        comp = _insert_pair(comp, pa, pair_a, False)
        comp = _insert_pair(comp, pb, pair_b, False)
    comps[ca - 1] = comp
    return comps


# -- inversion ----------------------------------------------------------------


def inverse_site(d: Diagram, m: MoveSite) -> MoveSite:
    """The site undoing ``m``: applying it to ``apply_move(d, m)`` restores ``d``.

    The third move is its own inverse at the same site.
    """
    if m.kind == "R3":
        return m
    if m.kind == "R1_delete":
        ((ci, p),) = m.pairs
        comp = _component(d, ci)
        wrapped = comp.closed and p == len(comp.passes) - 1
        return MoveSite("R1_insert", names=m.names, slots=((ci, 0 if wrapped else p, wrapped),))
    if m.kind == "R1_insert":
        ((ci, p, wrapped),) = m.slots
        comp = _component(d, ci)
        newlen = len(comp.passes) + 2
        pos = newlen - 1 if wrapped else p
        return MoveSite("R1_delete", names=m.names, pairs=((ci, pos),))
    if m.kind == "R2_delete":
        return _inverse_r2_delete(d, m)
    if m.kind == "R2_insert":
        return _inverse_r2_insert(d, m)
    raise MoveError(f"unknown move kind {m.kind!r}")


def _is_wrapped_pair(comp: ComponentCode, p: int) -> bool:
    return comp.closed and len(comp.passes) >= 2 and p == len(comp.passes) - 1


def _inverse_r2_delete(d: Diagram, m: MoveSite) -> MoveSite:
    entries = []
    for ci, p in m.pairs:
        comp = _component(d, ci)
        entries.append((ci, p, _is_wrapped_pair(comp, p), _pair_letters(d, (ci, p))))
    (c1, p1, w1, l1), (c2, p2, w2, l2) = entries
    if c1 != c2:
        slots = ((c1, 0 if w1 else p1, w1), (c2, 0 if w2 else p2, w2))
        letters = (l1, l2)
    else:
        if w1 and w2:
            raise MoveError("two wrapped pairs on one component cannot be disjoint")
        if w1:
            (c1, p1, w1, l1), (c2, p2, w2, l2) = (c2, p2, w2, l2), (c1, p1, w1, l1)
        if w2:
            slots = ((c1, p1 - 1, False), (c2, 0, True))
            letters = (l1, l2)
        else:
            if p1 > p2:
                (p1, l1), (p2, l2) = (p2, l2), (p1, l1)
            slots = ((c1, p1, False), (c2, p2 - 2, False))
            letters = (l1, l2)
    return MoveSite(
        "R2_insert",
        names=letters[0],
        slots=slots,
        same_order=(letters[1] == letters[0]),
    )


def _inverse_r2_insert(d: Diagram, m: MoveSite) -> MoveSite:
    slot_a, slot_b = m.slots
    (ca, pa, wa), (cb, pb, wb) = slot_a, slot_b
    x, y = m.names
    if ca != cb:
        La, Lb = len(_component(d, ca).passes), len(_component(d, cb).passes)
        pair_a = (ca, La + 1 if wa else pa)
        pair_b = (cb, Lb + 1 if wb else pb)
    else:
        L = len(_component(d, ca).passes)
        if wa and wb:
            raise MoveError("at most one wrapped insertion per component")
        if wa:
            pair_a = (ca, L + 3)
            pair_b = (cb, pb + 1)
        elif wb:
            pair_a = (ca, pa + 1)
            pair_b = (cb, L + 3)
        elif pa <= pb:
            pair_a = (ca, pa)
            pair_b = (cb, pb + 2)
        else:
            pair_a = (ca, pa + 2)
            pair_b = (cb, pb)
    first, second = sorted((pair_a, pair_b))
    # anchor the stored names to the sorted first pair
    first_letters = (x, y) if first == pair_a else ((x, y) if m.same_order else (y, x))
    return MoveSite("R2_delete", names=first_letters, pairs=(first, second))


# -- candidate generation, walks, search --------------------------------------


def _fresh_names(d: Diagram, count: int) -> list[str]:
    existing = d.crossing_names
    names = []
    k = 1
    while len(names) < count:
        name = f"w{k}"
        if name not in existing:
            names.append(name)
        k += 1
    return names


def _insert_slots(d: Diagram) -> list[tuple[int, int]]:
    slots = []
    for ci, comp in enumerate(d.components, start=1):
        L = len(comp.passes)
        stop = L + 1 if not comp.closed else max(L, 1)
        for pos in range(stop):
            slots.append((ci, pos))
    return slots


def move_candidates(
    d: Diagram,
    *,
    forbid_pure: bool = False,
    max_size: int,
    insertions: bool = True,
) -> list[MoveSite]:
    """Deletions and third-move sites plus a finite slate of insertions.

    Insertions are rejected when the result would exceed ``max_size``
    crossings or, under ``forbid_pure``, would create a pure crossing (all
    first-move insertions and same-component second-move insertions).
    """
    sites = enumerate_moves(d, forbid_pure=forbid_pure)
    if not insertions:
        return sites
    count = d.crossing_count
    slots = _insert_slots(d)
    if not forbid_pure and count + 1 <= max_size:
        (x,) = _fresh_names(d, 1)
        for ci, pos in slots:
            sites.append(MoveSite("R1_insert", names=(x,), slots=((ci, pos, False),)))
    if count + 2 <= max_size:
        x, y = _fresh_names(d, 2)
        for a in range(len(slots)):
            for b in range(a, len(slots)):
                (ca, pa), (cb, pb) = slots[a], slots[b]
                if forbid_pure and ca == cb:
                    continue
                for same_order in (True, False):
                    sites.append(
                        MoveSite(
                            "R2_insert",
                            names=(x, y),
                            slots=((ca, pa, False), (cb, pb, False)),
                            same_order=same_order,
                        )
                    )
    return sites


def random_walk(
    d: Diagram,
    steps: int,
    seed: int,
    *,
    forbid_pure: bool = False,
    max_size: int | None = None,
) -> WalkTrace:
    """Apply ``steps`` uniformly chosen applicable moves; deterministic per seed.

    Stops early (recording fewer steps) if no move is applicable under the
    options.
    """
    if max_size is None:
        max_size = d.crossing_count + 4
    rng = random.Random(seed)
    current = d
    applied: list[MoveSite] = []
    for _ in range(steps):
        candidates = move_candidates(current, forbid_pure=forbid_pure, max_size=max_size)
        if not candidates:
            break
        site = candidates[rng.randrange(len(candidates))]
        current = apply_move(current, site)
        applied.append(site)
    return WalkTrace(initial=d, moves=tuple(applied), final=current)


def bounded_equivalence_search(
    a: Diagram,
    b: Diagram,
    depth: int,
    *,
    forbid_pure: bool = False,
    max_nodes: int = 50000,
) -> SearchVerdict:
    """Breadth-first search for a move sequence from ``a`` to ``b``.

    States are deduplicated by canonical form; insertions are bounded by the
    larger input's crossing count plus a slack of 2.  Returns a replayable
    trace on success and ``unknown`` otherwise (never claims inequivalence;
    exhausting ``max_nodes`` also yields unknown).
    """
    if a.n != b.n:
        raise MoveError(f"mismatched component counts: {a.n} vs {b.n}")
    if a.kind != b.kind:
        raise MoveError(f"mismatched kinds: {a.kind} vs {b.kind}")
    target = canonical_key(b)
    if canonical_key(a) == target:
        return SearchVerdict(True, WalkTrace(a, (), a))
    max_size = max(a.crossing_count, b.crossing_count) + 2
    visited = {canonical_key(a)}
    frontier: deque[tuple[Diagram, tuple[MoveSite, ...]]] = deque([(a, ())])
    nodes = 0
    for _ in range(depth):
        next_frontier: deque[tuple[Diagram, tuple[MoveSite, ...]]] = deque()
        while frontier:
            diag, trace = frontier.popleft()
            for site in move_candidates(diag, forbid_pure=forbid_pure, max_size=max_size):
                neighbor = apply_move(diag, site)
                key = canonical_key(neighbor)
                if key in visited:
                    continue
                visited.add(key)
                extended = trace + (site,)
                if key == target:
                    return SearchVerdict(True, WalkTrace(a, extended, neighbor))
                nodes += 1
                if nodes >= max_nodes:
                    return SearchVerdict(False, None)
                next_frontier.append((neighbor, extended))
        frontier = next_frontier
    return SearchVerdict(False, None)


# -- trace serialization ------------------------------------------------------

_SLOT_RE = re.compile(r"(\d+):(w|\d+)\Z")


def _format_slot(slot: tuple[int, int, bool]) -> str:
    ci, pos, wrapped = slot
    return f"{ci}:w" if wrapped else f"{ci}:{pos}"


def serialize_trace(trace: WalkTrace) -> str:
    """One move per line: ``<kind> <crossing names> <locations>``."""
    lines = []
    for m in trace.moves:
        parts = [m.kind, *m.names]
        parts += [f"{ci}:{p}" for ci, p in m.pairs]
        parts += [_format_slot(slot) for slot in m.slots]
        if m.kind == "R2_insert":
            parts.append("same" if m.same_order else "swap")
        lines.append(" ".join(parts))
    return "\n".join(lines) + ("\n" if lines else "")


def _parse_slot(token: str, lineno: int) -> tuple[int, int, bool]:
    m = _SLOT_RE.match(token)
    if m is None:
        raise MoveError(f"trace line {lineno}: bad location {token!r}")
    ci = int(m.group(1))
    if m.group(2) == "w":
        return ci, 0, True
    return ci, int(m.group(2)), False


def parse_trace(text: str) -> list[MoveSite]:
    """Parse the line-oriented trace log emitted by :func:`serialize_trace`."""
    moves = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "R1_delete":
            (x, loc) = parts[1], _parse_slot(parts[2], lineno)
            moves.append(MoveSite(kind, names=(x,), pairs=((loc[0], loc[1]),)))
        elif kind == "R1_insert":
            (x, slot) = parts[1], _parse_slot(parts[2], lineno)
            moves.append(MoveSite(kind, names=(x,), slots=(slot,)))
        elif kind == "R2_delete":
            x, y = parts[1], parts[2]
            locs = [_parse_slot(tok, lineno) for tok in parts[3:5]]
            moves.append(MoveSite(kind, names=(x, y), pairs=tuple((c, p) for c, p, _ in locs)))
        elif kind == "R2_insert":
            x, y = parts[1], parts[2]
            slots = tuple(_parse_slot(tok, lineno) for tok in parts[3:5])
            if parts[5] not in ("same", "swap"):
                raise MoveError(f"trace line {lineno}: expected 'same' or 'swap', got {parts[5]!r}")
            moves.append(MoveSite(kind, names=(x, y), slots=slots, same_order=parts[5] == "same"))
        elif kind == "R3":
            names = tuple(parts[1:4])
            locs = [_parse_slot(tok, lineno) for tok in parts[4:7]]
            moves.append(MoveSite(kind, names=names, pairs=tuple((c, p) for c, p, _ in locs)))
        else:
            raise MoveError(f"trace line {lineno}: unknown move kind {kind!r}")
    return moves


def replay(initial: Diagram, moves) -> Diagram:
    """Apply a move sequence, validating each application."""
    current = initial
    for m in moves:
        current = apply_move(current, m)
    return current
