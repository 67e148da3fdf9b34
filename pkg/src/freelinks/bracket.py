"""Splicing of crossings and the mod-2 bracket of a free diagram.

Splicing removes a 4-valent vertex and reconnects its four half-edges in
one of the two ways that do not recreate the vertex.  With the two passes of
a crossing ordered by scan order (components in index order, positions left
to right), and writing in/out for the half-edges before/after a pass in
traversal direction, the two branches are

* ``A``: join in1-out2 and out1-in2 (on one component this splits it:
  an open ``P x Q x R`` becomes the open ``P R`` plus the circle ``Q``,
  a closed ``x Q x R`` becomes the circles ``Q`` and ``R``);
* ``B``: join in1-in2 and out1-out2 (no split: ``P rev(Q) R``, resp. the
  circle ``Q rev(R)``).

A crossing whose passes lie on two different components reconnects them into
one by the same rule (either branch merges).  Branches are anchored to the
source diagram, and an assignment of branches to several crossings is applied
simultaneously by rewiring all chosen vertices at once; the result therefore
does not depend on any ordering of the splices.

The bracket of a diagram with m pure crossings expands all 2^m branch
assignments over the pure crossings, keeps exactly the results with the
original number of components (those inherit the source enumeration, since a
pure-crossing splice never connects two different components), reduces the
canonical forms mod 2, and for m = 0 is the single canonicalized summand.

Bracket values are compared as sets of canonical forms: equality and
distinctness verdicts are sound, but since equivalence of individual
summands is only certified by bounded search, the comparison may also answer
unknown.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations

from . import invariant as _invariant
from .diagram import (
    ComponentCode,
    Diagram,
    canonical_form,
    canonical_key,
    crossing_occurrences,
    is_good_condition,
    pure_crossings,
    validate,
)
from .moves import apply_move, bounded_equivalence_search, move_candidates

__all__ = [
    "SpliceChoice",
    "Bracket",
    "Verdict",
    "BracketError",
    "splice",
    "apply_splices",
    "splice_expansion",
    "bracket",
    "bracket_equal",
    "serialize_bracket",
]


class BracketError(ValueError):
    """A splice or bracket operation was applied outside its preconditions."""


@dataclass(frozen=True)
class SpliceChoice:
    """One crossing together with a reconnection branch (``A`` or ``B``)."""

    crossing: str
    branch: str

    def __post_init__(self):
        if self.branch not in ("A", "B"):
            raise BracketError(f"branch must be 'A' or 'B', got {self.branch!r}")


@dataclass(frozen=True)
class Bracket:
    """Mod-2 set of canonical-form summands, all with ``n`` components."""

    kind: str
    n: int
    summands: frozenset[Diagram]


@dataclass(frozen=True)
class Verdict:
    """Three-valued comparison outcome."""

    status: str  # "equal" | "distinct" | "unknown"
    certificate: str | None = None


# -- simultaneous splicing via port rewiring ----------------------------------


def _splice_components(d: Diagram, branches: dict[str, str]):
    """Apply all splices of ``branches`` at once.

    Returns ``(components, sources)`` where ``sources[k]`` is the set of
    source component indices whose arcs or passes the k-th result component
    traverses.  Result components are ordered: for each source component in
    index order, the curve through its start (open) or through the arc
    leaving its first pass (closed, when that pass is spliced) or through its
    first pass itself; then all remaining curves in scan order.
    """
    occs = crossing_occurrences(d)
    for name, branch in branches.items():
        if name not in occs:
            raise BracketError(f"unknown crossing {name!r}")
        if branch not in ("A", "B"):
            raise BracketError(f"branch must be 'A' or 'B', got {branch!r}")

    arc: dict[tuple, tuple] = {}

    def join(p, q):
        arc[p] = q
        arc[q] = p

    for ci, comp in enumerate(d.components, start=1):
        L = len(comp.passes)
        if L == 0:
            if not comp.closed:
                join(("s", ci), ("e", ci))
            continue
        for k in range(L - 1):
            join((ci, k, "o"), (ci, k + 1, "i"))
        if comp.closed:
            join((ci, L - 1, "o"), (ci, 0, "i"))
        else:
            join(("s", ci), (ci, 0, "i"))
            join((ci, L - 1, "o"), ("e", ci))

    via: dict[tuple, tuple] = {}
    spliced: set[tuple[int, int]] = set()
    for name, branch in branches.items():
        (c1, p1), (c2, p2) = occs[name]
        spliced.update(((c1, p1), (c2, p2)))
        if branch == "A":
            links = (((c1, p1, "i"), (c2, p2, "o")), ((c1, p1, "o"), (c2, p2, "i")))
        else:
            links = (((c1, p1, "i"), (c2, p2, "i")), ((c1, p1, "o"), (c2, p2, "o")))
        for u, v in links:
            via[u] = v
            via[v] = u

    visited: set[tuple] = set()
    names = {occ: name for name, places in occs.items() for occ in places}

    def trace(start, cycle: bool):
        """Walk from a port entered via its arc; emit surviving passes."""
        seq: list[str] = []
        touched: set[int] = set()
        port = start
        first = True
        while True:
            if cycle and not first and port == start:
                return seq, touched, None
            if port[0] in ("s", "e"):
                visited.add(port)
                return seq, touched, port
            ci, pos, side = port
            touched.add(ci)
            visited.add(port)
            if (ci, pos) in spliced:
                out = via[port]
            else:
                seq.append(names[(ci, pos)])
                out = (ci, pos, "o" if side == "i" else "i")
            visited.add(out)
            touched.add(out[0])
            port = arc[out]
            first = False

    components: list[ComponentCode] = []
    sources: list[set[int]] = []

    # curves anchored at original components, in index order
    for ci, comp in enumerate(d.components, start=1):
        if not comp.closed:
            start = ("s", ci)
            if start in visited:
                continue
            visited.add(start)
            seq, touched, end = trace(arc[start], cycle=False)
            if end[0] == "s":
                # the reconnection would join two lower endpoints, so the
                # result is not readable as lower-to-upper strands
                raise BracketError(
                    "splice reverses one open component onto another; "
                    "such a reconnection has no open-strand representation"
                )
            touched.add(ci)
            components.append(ComponentCode(False, tuple(seq)))
            sources.append(touched)
        elif len(comp.passes) == 0:
            components.append(ComponentCode(True, ()))
            sources.append({ci})
        else:
            anchor = arc[(ci, 0, "o")] if (ci, 0) in spliced else (ci, 0, "i")
            if anchor in visited:
                continue
            seq, touched, _ = trace(anchor, cycle=True)
            components.append(ComponentCode(True, tuple(seq)))
            sources.append(touched)

    # leftover closed curves: start at the first surviving pass so segments
    # read forward, then sweep pass-free cycles
    for ci, comp in enumerate(d.components, start=1):
        for pos in range(len(comp.passes)):
            port = (ci, pos, "i")
            if (ci, pos) in spliced or port in visited:
                continue
            seq, touched, _ = trace(port, cycle=True)
            components.append(ComponentCode(True, tuple(seq)))
            sources.append(touched)
    for ci, comp in enumerate(d.components, start=1):
        for pos in range(len(comp.passes)):
            for side in ("i", "o"):
                port = (ci, pos, side)
                if port in visited:
                    continue
                seq, touched, _ = trace(port, cycle=True)
                components.append(ComponentCode(True, tuple(seq)))
                sources.append(touched)

    return components, sources


def apply_splices(d: Diagram, branches: dict[str, str]) -> Diagram:
    """Splice several crossings simultaneously, branches per crossing.

    Branch labels refer to the scan order of each crossing's passes in ``d``
    itself, so the result is independent of any splice ordering.
    """
    components, _ = _splice_components(d, dict(branches))
    return Diagram(kind=d.kind, components=tuple(components))


def splice(d: Diagram, s: SpliceChoice) -> Diagram:
    """Splice one crossing.

    For a pure crossing, branch ``A`` splits its component and branch ``B``
    reverses the enclosed segment in place; a crossing joining two different
    components (as arises between intermediate results of repeated splicing)
    merges them under either branch.
    """
    return apply_splices(d, {s.crossing: s.branch})


def splice_expansion(d: Diagram, crossings: tuple[str, ...] | None = None):
    """Yield ``(assignment, components, sources)`` over all branch assignments.

    By default the assignment ranges over the pure crossings of ``d`` in
    sorted order; all 2^m combinations are produced, including those whose
    component count disqualifies them from the bracket.
    """
    if crossings is None:
        crossings = tuple(sorted(pure_crossings(d)))
    m = len(crossings)
    for code in range(1 << m):
        assignment = {
            crossings[r]: "AB"[(code >> r) & 1] for r in range(m)
        }
        components, sources = _splice_components(d, assignment)
        yield assignment, components, sources


def _summand_from(d: Diagram, components, sources) -> Diagram | None:
    """Order an exactly-n splice result by inherited component index."""
    if len(components) != d.n:
        return None
    owners = []
    for touched in sources:
        if len(touched) != 1:
            raise BracketError(
                "splice result mixes source components; only pure crossings may be spliced"
            )
        owners.append(next(iter(touched)))
    if sorted(owners) != list(range(1, d.n + 1)):
        return None
    ordered = [comp for _, comp in sorted(zip(owners, components))]
    return Diagram(kind=d.kind, components=tuple(ordered))


def bracket(d: Diagram, *, max_pure: int = 20, jobs: int = 1) -> Bracket:
    """Expand all splicings of all pure crossings and reduce mod 2.

    Keeps exactly the summands with ``d.n`` components; each is
    canonicalized, and pairs of equal canonical forms cancel.  A diagram
    without pure crossings brackets to the singleton of its own canonical
    form.  Raises when the diagram is invalid or has more than ``max_pure``
    pure crossings.
    """
    bad = validate(d)
    if bad:
        raise BracketError("invalid diagram: " + "; ".join(str(v) for v in bad))
    pures = tuple(sorted(pure_crossings(d)))
    if len(pures) > max_pure:
        raise BracketError(
            f"{len(pures)} pure crossings exceed the expansion cap of {max_pure}; "
            "raise max_pure explicitly to proceed"
        )
    if jobs > 1 and len(pures) >= 4:
        keys = _expand_parallel(d, pures, jobs)
        members = {key: _diagram_from_key(key) for key in keys}
    else:
        members: dict[tuple, Diagram] = {}
        for _, components, sources in splice_expansion(d, pures):
            summand = _summand_from(d, components, sources)
            if summand is None:
                continue
            canonical = canonical_form(summand)
            key = canonical_key(canonical)
            if key in members:
                del members[key]
            else:
                members[key] = canonical
    for summand in members.values():
        if pure_crossings(summand):
            raise BracketError("bracket summand retained a pure crossing")
    return Bracket(kind=d.kind, n=d.n, summands=frozenset(members.values()))


def _diagram_from_key(key) -> Diagram:
    kind, parts = key
    return Diagram(
        kind=kind,
        components=tuple(
            ComponentCode(closed, tuple(str(c) for c in rel)) for closed, rel in parts
        ),
    )


def _expand_chunk(args):
    d, pures, start, stop = args
    odd: set[tuple] = set()
    for code in range(start, stop):
        assignment = {pures[r]: "AB"[(code >> r) & 1] for r in range(len(pures))}
        components, sources = _splice_components(d, assignment)
        summand = _summand_from(d, components, sources)
        if summand is None:
            continue
        odd ^= {canonical_key(summand)}
    return odd


def _expand_parallel(d: Diagram, pures, jobs: int) -> set[tuple]:
    from multiprocessing import Pool

    total = 1 << len(pures)
    step = max(1, total // (jobs * 4))
    ranges = [(d, pures, lo, min(lo + step, total)) for lo in range(0, total, step)]
    result: set[tuple] = set()
    with Pool(jobs) as pool:
        for odd in pool.imap_unordered(_expand_chunk, ranges):
            result ^= odd
    return result


def serialize_bracket(b: Bracket) -> str:
    """Header plus each summand in the diagram file format, sorted."""
    from .diagram import serialize_diagram

    bodies = sorted(serialize_diagram(s) for s in b.summands)
    head = f"bracket n={b.n} summands={len(bodies)}\n"
    return head + "\n".join(bodies)


# -- comparison ---------------------------------------------------------------


def _class_key(s: Diagram):
    """A hashable invariant of the restricted-move class of a summand.

    Combines the good-condition parity table with, when defined, the full
    word-invariant fingerprint; both are preserved by second and third moves
    through pure-crossing-free diagrams, so differing multiset parities of
    these keys certify distinct bracket values.
    """
    good, table = is_good_condition(s)
    parity = tuple(sorted(table.items()))
    if not good:
        return (parity, None)
    fp = _invariant.fingerprint(s)
    from .words import render_word

    rendered = tuple(
        (pair, along, render_word(word)) for (pair, along), word in sorted(fp.items())
    )
    return (parity, rendered)


def _render_class_key(key) -> str:
    parity, rendered = key
    if rendered is None:
        odd = [f"({i},{j})" for (i, j), bit in parity if bit]
        return "odd crossing parities at pairs " + (", ".join(odd) or "none")
    return "; ".join(f"pair ({i},{j}) along {a}: {w}" for (i, j), a, w in rendered)


def _match_leftovers(a_side: list[Diagram], b_side: list[Diagram], depth: int, max_nodes: int):
    """Pair up summands certified equivalent through pure-crossing-free moves.

    Matched pairs cancel between the two brackets; two summands of one
    bracket in the same class cancel inside it (values are mod 2).  Returns
    the unmatched remainders.  Certification is tiered: one-move
    neighborhoods settle depths 1 and 2 by key lookup and intersection, and
    full searches run only for pairs still unmatched at depth >= 3.
    """
    every = a_side + b_side
    nA = len(a_side)
    if not every or depth < 1:
        return a_side, b_side
    max_size = max(s.crossing_count for s in every) + 2
    keys = [canonical_key(s) for s in every]
    neighborhoods = []
    for s in every:
        seen = set()
        for site in move_candidates(s, forbid_pure=True, max_size=max_size):
            seen.add(canonical_key(apply_move(s, site)))
        neighborhoods.append(frozenset(seen))

    searched: dict[tuple[int, int], bool] = {}

    def linked(u: int, v: int, deep: bool) -> bool:
        if keys[v] in neighborhoods[u] or keys[u] in neighborhoods[v]:
            return True
        if depth >= 2 and neighborhoods[u] & neighborhoods[v]:
            return True
        if deep:
            pair = (min(u, v), max(u, v))
            if pair not in searched:
                searched[pair] = bounded_equivalence_search(
                    every[pair[0]],
                    every[pair[1]],
                    depth,
                    forbid_pure=True,
                    max_nodes=max_nodes,
                ).equivalent
            return searched[pair]
        return False

    rest_a = list(range(nA))
    rest_b = list(range(nA, len(every)))
    for deep in (False, True) if depth >= 3 else (False,):
        adjacency = {u: [v for v in rest_b if linked(u, v, deep)] for u in rest_a}
        match_b: dict[int, int] = {}

        def augment(u: int, banned: set[int]) -> bool:
            for v in adjacency[u]:
                if v in banned:
                    continue
                banned.add(v)
                if v not in match_b or augment(match_b[v], banned):
                    match_b[v] = u
                    return True
            return False

        for u in list(rest_a):
            augment(u, set())
        matched_a = set(match_b.values())
        rest_a = [u for u in rest_a if u not in matched_a]
        rest_b = [v for v in rest_b if v not in match_b]
        for rest in (rest_a, rest_b):
            dropped: set[int] = set()
            for u, v in combinations(list(rest), 2):
                if u not in dropped and v not in dropped and linked(u, v, deep):
                    dropped.update((u, v))
            rest[:] = [w for w in rest if w not in dropped]
        if not rest_a and not rest_b:
            break
    return [every[u] for u in rest_a], [every[v] for v in rest_b]


def bracket_equal(p: Bracket, q: Bracket, depth: int, *, max_nodes: int = 20000) -> Verdict:
    """Compare two bracket values; sound for ``equal`` and ``distinct``.

    Stage 1 tests canonical-form set equality.  Stage 2 tries to cancel the
    symmetric difference by pairing summands certified equivalent through
    pure-crossing-free move sequences of at most ``depth`` moves.  Stage 3
    compares invariant class keys of whatever remains: a key with odd
    multiplicity difference certifies distinctness and is returned as the
    certificate.  Otherwise the answer is unknown.
    """
    if p.n != q.n:
        raise BracketError(f"mismatched component counts: {p.n} vs {q.n}")
    if p.kind != q.kind:
        raise BracketError(f"mismatched kinds: {p.kind} vs {q.kind}")
    a_members = {canonical_key(s): s for s in p.summands}
    b_members = {canonical_key(s): s for s in q.summands}
    if set(a_members) == set(b_members):
        return Verdict("equal")
    a_only = [a_members[k] for k in sorted(set(a_members) - set(b_members))]
    b_only = [b_members[k] for k in sorted(set(b_members) - set(a_members))]

    rest_a, rest_b = _match_leftovers(a_only, b_only, depth, max_nodes)
    if not rest_a and not rest_b:
        return Verdict("equal")

    counts: Counter = Counter(_class_key(s) for s in rest_a)
    counts.subtract(_class_key(s) for s in rest_b)
    odd = sorted(
        (key for key, c in counts.items() if c % 2 != 0),
        key=lambda key: (key[1] is None, str(key)),
    )
    if odd:
        return Verdict("distinct", certificate=_render_class_key(odd[0]))
    return Verdict("unknown")
