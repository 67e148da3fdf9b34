"""Words in the free product of 2^(n-2) copies of Z2.

For an n-component diagram and a fixed pair of components {i, j}, the value
group is generated by the maps sigma : {1..n} \\ {i, j} -> Z2, one free
factor per map, subject only to sigma^2 = 1.  A letter is stored as a bit
tuple of length n - 2, indexed by the remaining components in ascending
order.  Because every generator is its own inverse, words over this alphabet
reduce by deleting adjacent equal letters, and conjugacy of cyclically
reduced words is rotation equality.

The slide automorphisms flip one fixed bit in every letter; they commute and
are involutions, so the subgroup they generate is enumerated by the 2^(n-2)
bit masks.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

__all__ = [
    "GroupContext",
    "Letter",
    "Word",
    "WordError",
    "make_word",
    "reduce",
    "cyclic_reduce",
    "conjugate_equal",
    "slide",
    "apply_mask",
    "slide_conjugacy_equal",
    "letter_index",
    "canonical_class_word",
    "orbit_representatives",
    "render_letter",
    "render_word",
]

Letter = tuple[int, ...]


class WordError(ValueError):
    """A word operation was applied to incompatible or malformed data."""


@dataclass(frozen=True)
class GroupContext:
    """The value group for component count n and component pair {i, j}."""

    n: int
    i: int
    j: int

    def __post_init__(self):
        if self.i == self.j:
            raise WordError("the component pair must consist of two distinct components")
        if not (1 <= self.i <= self.n and 1 <= self.j <= self.n):
            raise WordError(f"pair ({self.i}, {self.j}) out of range 1..{self.n}")
        if self.i > self.j:
            i, j = self.j, self.i
            object.__setattr__(self, "i", i)
            object.__setattr__(self, "j", j)

    @property
    def strands(self) -> tuple[int, ...]:
        """The remaining component indices, ascending; letters are bit maps on these."""
        return tuple(k for k in range(1, self.n + 1) if k not in (self.i, self.j))

    @property
    def width(self) -> int:
        return self.n - 2


@dataclass(frozen=True)
class Word:
    """A sequence of letters in one group context."""

    context: GroupContext
    letters: tuple[Letter, ...]

    def __post_init__(self):
        for letter in self.letters:
            if len(letter) != self.context.width:
                raise WordError(
                    f"letter {letter} has length {len(letter)}, expected {self.context.width}"
                )
            if any(bit not in (0, 1) for bit in letter):
                raise WordError(f"letter {letter} has non-bit entries")

    def __len__(self) -> int:
        return len(self.letters)


def make_word(context: GroupContext, letters) -> Word:
    return Word(context, tuple(tuple(letter) for letter in letters))


def _same_context(u: Word, v: Word) -> GroupContext:
    if u.context != v.context:
        raise WordError(f"mixed contexts: {u.context} vs {v.context}")
    return u.context


def reduce(w: Word) -> Word:
    """Delete adjacent equal letters until none remain.

    The result is the unique reduced representative of w in the free product
    (reduction over a confluent rewriting system).

    >>> ctx = GroupContext(3, 1, 2)
    >>> reduce(make_word(ctx, [(0,), (0,)])).letters
    ()
    >>> reduce(make_word(ctx, [(1,), (0,), (0,), (1,), (1,)])).letters
    ((1,),)
    """
    stack: list[Letter] = []
    for letter in w.letters:
        if stack and stack[-1] == letter:
            stack.pop()
        else:
            stack.append(letter)
    return Word(w.context, tuple(stack))


def cyclic_reduce(w: Word) -> Word:
    """Reduce, then strip equal first/last letters; conjugate to w.

    >>> ctx = GroupContext(4, 1, 2)
    >>> cyclic_reduce(make_word(ctx, [(0, 0), (0, 1), (1, 1), (0, 0)])).letters
    ((0, 1), (1, 1))
    """
    letters = list(reduce(w).letters)
    # interior stays reduced after stripping, so no re-reduction is needed
    while len(letters) >= 2 and letters[0] == letters[-1]:
        letters = letters[1:-1]
    return Word(w.context, tuple(letters))


def _rotations(letters: tuple[Letter, ...]):
    if not letters:
        yield letters
        return
    for r in range(len(letters)):
        yield letters[r:] + letters[:r]


def conjugate_equal(u: Word, v: Word) -> bool:
    """Whether u and v are conjugate.

    In a free product of Z2 factors, two cyclically reduced words are
    conjugate exactly when one is a cyclic rotation of the other.
    """
    _same_context(u, v)
    cu, cv = cyclic_reduce(u).letters, cyclic_reduce(v).letters
    if len(cu) != len(cv):
        return False
    return any(rot == cv for rot in _rotations(cu))


def slide(w: Word, l: int) -> Word:
    """Flip bit ``l`` in every letter of w (l names a strand component).

    Letterwise action of the automorphism determined by flipping one
    generator coordinate; an involution, and it preserves reducedness.
    """
    strands = w.context.strands
    if l not in strands:
        raise WordError(f"component {l} is not a strand of {w.context}")
    r = strands.index(l)
    flipped = tuple(
        letter[:r] + (letter[r] ^ 1,) + letter[r + 1 :] for letter in w.letters
    )
    return Word(w.context, flipped)


def apply_mask(w: Word, mask: Letter) -> Word:
    """XOR every letter of w with ``mask`` (a composite of slides)."""
    if len(mask) != w.context.width:
        raise WordError(f"mask {mask} has length {len(mask)}, expected {w.context.width}")
    return Word(
        w.context,
        tuple(tuple(b ^ m for b, m in zip(letter, mask)) for letter in w.letters),
    )


def _all_masks(context: GroupContext):
    return product((0, 1), repeat=context.width)


def slide_conjugacy_equal(u: Word, v: Word) -> bool:
    """Whether some composite of slides takes u to a conjugate of v.

    The slides commute and are involutions, so the 2^(n-2) bit masks
    enumerate the whole slide subgroup.
    """
    _same_context(u, v)
    return any(conjugate_equal(apply_mask(u, mask), v) for mask in _all_masks(u.context))


def letter_index(x: Letter) -> int:
    """The free-product factor number of a letter, in [0, 2^(n-2)).

    Bit of rank r (ascending strand order) has weight 2^r; this fixes one
    bijection between letters and factors.

    >>> letter_index((0, 1))
    2
    >>> letter_index((1, 1))
    3
    """
    return sum(bit << r for r, bit in enumerate(x))


def _lex_key(letters: tuple[Letter, ...]) -> tuple[int, ...]:
    return tuple(letter_index(letter) for letter in letters)


def canonical_class_word(w: Word) -> Word:
    """The least word in the slide/conjugacy class of w.

    Lexicographically least (letters ordered by :func:`letter_index`) among
    all rotations of the cyclic reduction of every masked image of w.  Two
    words have equal canonical class words exactly when they are
    slide-conjugacy equal.
    """
    core = cyclic_reduce(w)
    best: tuple[Letter, ...] | None = None
    for mask in _all_masks(w.context):
        masked = apply_mask(core, mask).letters  # masking preserves cyclic reducedness
        for rot in _rotations(masked):
            if best is None or _lex_key(rot) < _lex_key(best):
                best = rot
    assert best is not None
    return Word(w.context, best)


def orbit_representatives(w: Word) -> dict[Letter, Word]:
    """Per mask, the rotation-least conjugacy representative of the masked word.

    The key set is always the full mask cube Z2^(n-2); distinct masks may
    share a representative.
    """
    reps: dict[Letter, Word] = {}
    for mask in _all_masks(w.context):
        masked = apply_mask(cyclic_reduce(w), mask).letters
        best = min(_rotations(masked), key=_lex_key)
        reps[mask] = Word(w.context, best)
    return reps


def render_letter(x: Letter) -> str:
    return "(" + ",".join(str(bit) for bit in x) + ")"


def render_word(w: Word) -> str:
    """Letters as parenthesized bit tuples joined by a dot; the empty word is ``1``."""
    if not w.letters:
        return "1"
    return "·".join(render_letter(letter) for letter in w.letters)
