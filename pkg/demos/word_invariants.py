"""Words valued in free products of copies of Z2.

Every mixed crossing of an n-strand tangle gets a letter built from
crossing-count parities; reading the crossings of one component pair along
a strand gives a word that survives the moves.  For links the word is
well defined up to slides (bit flips) and conjugation, so links are
compared by canonical class words.

Run from the repository root:  python3 demos/word_invariants.py
"""

from pathlib import Path

from freelinks import (
    Basepoint,
    GroupContext,
    canonical_class_word,
    cyclic_reduce,
    fingerprint,
    link_invariant,
    link_word,
    lk_vector,
    make_word,
    orbit_representatives,
    render_fingerprint,
    render_word,
    slide,
    word_invariant,
)
from freelinks.diagram import parse_diagram

DATA = Path(__file__).parent / "data"

print("== letters and words of a tangle ==")
tangle = parse_diagram((DATA / "three_strand.tangle").read_text())
for name in ("a", "d"):
    print(f"letter of crossing {name}:", lk_vector(tangle, name))
word = word_invariant(tangle, 1, 2)
print("word for pair (1,2) along strand 1:", render_word(word))
print("word for pair (1,3) along strand 1:", render_word(word_invariant(tangle, 1, 3)))
print("full fingerprint:", render_fingerprint(fingerprint(tangle)))

print()
print("== reduction and conjugacy in the value group ==")
ctx = GroupContext(4, 1, 2)
w = make_word(ctx, [(0, 0), (0, 1), (1, 1), (0, 0)])
print("word:", render_word(w))
print("cyclic reduction:", render_word(cyclic_reduce(w)))
print("canonical class word:", render_word(canonical_class_word(w)))
print("slide orbit representatives:")
for mask, rep in sorted(orbit_representatives(w).items()):
    print(f"  mask {mask}: {render_word(rep)}")

print()
print("== a four-component link with a nontrivial value ==")
link = parse_diagram((DATA / "four_component.link").read_text())
points = [Basepoint(i, 0) for i in range(1, 5)]
raw = link_word(link, points, 1, 2)
print("word at offset-0 basepoints:", render_word(raw))
value = link_invariant(link, 1, 2)
print("canonical class word:", render_word(value))
print("nontrivial, so the link is not trivial:", value.letters != ())

print()
print("== basepoints only matter up to slides and conjugation ==")
closure = parse_diagram(
    (DATA / "three_strand.tangle").read_text().replace("tangle", "link").replace("open", "closed")
)
base = link_word(closure, [Basepoint(1, 0), Basepoint(2, 0), Basepoint(3, 0)], 1, 2)
shifted = link_word(closure, [Basepoint(1, 3), Basepoint(2, 0), Basepoint(3, 0)], 1, 2)
print("offset 0 word:", render_word(base))
print("offset 3 word:", render_word(shifted))
print("the shift is one slide:", shifted == slide(base, 3))
print("classes agree:", canonical_class_word(base) == canonical_class_word(shifted))
