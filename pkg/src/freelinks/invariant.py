"""Word invariants of tangles and links in good condition.

Every mixed crossing c of type (i, j) on an n-strand tangle receives a
letter: the bit vector whose entry for a third component k is the parity of
the number of type-(i, k) passes strictly before c on strand i plus the
number of type-(j, k) passes strictly before c on strand j, both counted
from the lower endpoints.  Reading the type-(i, j) crossings along strand i
and reducing gives a word in the free product of copies of Z2; for tangles
in good condition without pure crossings this reduced word is unchanged by
second and third moves.

A link is cut at one basepoint per component to obtain a tangle; moving a
basepoint changes the word only by slides (past a crossing with a third
component) or conjugation (past a type-(i, j) crossing), so the canonical
slide/conjugacy class of the word is a link invariant.
"""

from __future__ import annotations

from .diagram import (
    Basepoint,
    Diagram,
    crossing_occurrences,
    cut_link,
    is_good_condition,
    pure_crossings,
    validate,
)
from .words import (
    GroupContext,
    Letter,
    Word,
    canonical_class_word,
    make_word,
    reduce,
)

__all__ = [
    "Fingerprint",
    "InvariantError",
    "lk",
    "lk_vector",
    "word_invariant",
    "word_table",
    "link_word",
    "link_invariant",
    "fingerprint",
    "render_fingerprint",
]


class InvariantError(ValueError):
    """The diagram violates a precondition of the word invariant."""


# ((i, j), along) -> canonical class word of the pair read along that strand
Fingerprint = dict[tuple[tuple[int, int], int], Word]


def _require_tangle(d: Diagram):
    bad = validate(d)
    if bad:
        raise InvariantError("invalid diagram: " + "; ".join(str(v) for v in bad))
    if any(comp.closed for comp in d.components):
        raise InvariantError("closed component present; cut the link first")
    pure = pure_crossings(d)
    if pure:
        raise InvariantError(
            "pure crossings present: " + " ".join(sorted(pure)) + "; expand with the bracket instead"
        )


def _partners(d: Diagram, occ) -> dict[str, tuple[int, int]]:
    """Crossing name -> the two component indices it joins (scan order)."""
    return {name: (places[0][0], places[1][0]) for name, places in occ.items()}


def _prefix_counts(d: Diagram, partners) -> list[list[tuple[int, ...]]]:
    """Per component ci, per position p: how many passes before p meet each
    other component, indexed 0..n (entry 0 unused)."""
    tables = [[]]
    for ci, comp in enumerate(d.components, start=1):
        running = [0] * (d.n + 1)
        rows = [tuple(running)]
        for name in comp.passes:
            a, b = partners[name]
            running[b if a == ci else a] += 1
            rows.append(tuple(running))
        tables.append(rows)
    return tables


def lk(d: Diagram, c: str, k: int) -> int:
    """The linking bit of crossing c toward component k.

    Counts, mod 2, the type-(i, k) passes strictly before c on component i
    and the type-(j, k) passes strictly before c on component j, where
    (i, j) is the type of c.  Requires a pure-crossing-free tangle and
    k outside {i, j}.
    """
    _require_tangle(d)
    occ = crossing_occurrences(d)
    if c not in occ:
        raise InvariantError(f"unknown crossing {c!r}")
    (ci, pi), (cj, pj) = occ[c]
    if not 1 <= k <= d.n:
        raise InvariantError(f"component {k} out of range 1..{d.n}")
    if k in (ci, cj):
        raise InvariantError(f"component {k} is one of the two strands of crossing {c!r}")
    tables = _prefix_counts(d, _partners(d, occ))
    return (tables[ci][pi][k] + tables[cj][pj][k]) % 2


def lk_vector(d: Diagram, c: str) -> Letter:
    """The letter of crossing c: its linking bits over all third components."""
    _require_tangle(d)
    occ = crossing_occurrences(d)
    if c not in occ:
        raise InvariantError(f"unknown crossing {c!r}")
    (ci, pi), (cj, pj) = occ[c]
    context = GroupContext(d.n, ci, cj)
    tables = _prefix_counts(d, _partners(d, occ))
    return tuple((tables[ci][pi][k] + tables[cj][pj][k]) % 2 for k in context.strands)


def _checked_pair(d: Diagram, i: int, j: int):
    if i == j:
        raise InvariantError("the component pair must consist of two distinct components")
    if not (1 <= i <= d.n and 1 <= j <= d.n):
        raise InvariantError(f"pair ({i}, {j}) out of range 1..{d.n}")


def _require_good(d: Diagram):
    good, table = is_good_condition(d)
    if not good:
        odd = sorted(pair for pair, bit in table.items() if bit)
        raise InvariantError(f"good condition fails: odd crossing count for pairs {odd}")


def word_table(d: Diagram) -> dict[tuple[int, int], Word]:
    """The reduced words of all ordered pairs: ``(along, other) -> word``.

    One traversal computes the letters of every mixed crossing; use this when
    many pairs of the same diagram are needed.
    """
    _require_tangle(d)
    _require_good(d)
    occ = crossing_occurrences(d)
    partners = _partners(d, occ)
    tables = _prefix_counts(d, partners)
    letters: dict[str, Letter] = {}
    for name, ((ci, pi), (cj, pj)) in occ.items():
        context = GroupContext(d.n, ci, cj)
        letters[name] = tuple(
            (tables[ci][pi][k] + tables[cj][pj][k]) % 2 for k in context.strands
        )
    out: dict[tuple[int, int], Word] = {}
    for along in range(1, d.n + 1):
        comp = d.components[along - 1]
        for other in range(1, d.n + 1):
            if other == along:
                continue
            seq = [
                letters[name]
                for name in comp.passes
                if {*partners[name]} == {along, other}
            ]
            context = GroupContext(d.n, along, other)
            out[(along, other)] = reduce(make_word(context, seq))
    return out


def word_invariant(d: Diagram, i: int, j: int) -> Word:
    """The reduced word of the type-(i, j) crossings read along strand i.

    Requires an n-strand tangle in good condition without pure crossings.
    Invariant, as a reduced word, under second and third moves through
    pure-crossing-free diagrams.
    """
    _checked_pair(d, i, j)
    return word_table(d)[(i, j)]


def _default_basepoints(d: Diagram) -> list[Basepoint]:
    return [Basepoint(i, 0) for i in range(1, d.n + 1)]


def link_word(d: Diagram, basepoints: list[Basepoint], i: int, j: int) -> Word:
    """The word of the tangle obtained by cutting the link at ``basepoints``.

    Depends on the basepoints only up to slides and conjugation.
    """
    if d.kind != "link":
        raise InvariantError("link_word expects a link")
    return word_invariant(cut_link(d, basepoints), i, j)


def link_invariant(d: Diagram, i: int, j: int) -> Word:
    """The canonical slide/conjugacy class word of the link, pair (i, j).

    Computed from the offset-0 basepoints; the class does not depend on that
    choice.
    """
    return canonical_class_word(link_word(d, _default_basepoints(d), i, j))


def fingerprint(d: Diagram) -> Fingerprint:
    """Canonical class words for all pairs and both traversal choices.

    Keys are ``((i, j), along)`` with i < j and along in {i, j}.  Defined for
    diagrams in good condition without pure crossings; tangles use their
    words directly, links cut at offset-0 basepoints.
    """
    base = cut_link(d, _default_basepoints(d)) if d.kind == "link" else d
    table = word_table(base)
    out: dict[tuple[tuple[int, int], int], Word] = {}
    for i in range(1, d.n + 1):
        for j in range(i + 1, d.n + 1):
            out[((i, j), i)] = canonical_class_word(table[(i, j)])
            out[((i, j), j)] = canonical_class_word(table[(j, i)])
    return out


def render_fingerprint(fp: Fingerprint) -> str:
    from .words import render_word

    return "; ".join(
        f"pair ({i},{j}) along {along}: {render_word(word)}"
        for ((i, j), along), word in sorted(fp.items())
    )
