import random

import pytest

from freelinks.diagram import (
    Basepoint,
    ComponentCode,
    CrossingType,
    Diagram,
    DiagramError,
    ParseError,
    canonical_form,
    canonical_key,
    crossing_type,
    cut_link,
    is_good_condition,
    parse_diagram,
    pure_crossings,
    serialize_diagram,
    validate,
)

from genutil import naive_canonical_key, random_any_diagram, random_good_diagram, scramble


class TestParse:
    def test_trivial_one_strand(self):
        d = parse_diagram("tangle n=1\ncomponent 1 open:")
        assert d.kind == "tangle"
        assert d.n == 1
        assert d.crossing_count == 0

    def test_roundtrip_sample(self, sample_tangle):
        assert sample_tangle.n == 3
        assert sample_tangle.crossing_count == 6
        assert parse_diagram(serialize_diagram(sample_tangle)) == sample_tangle

    def test_minimal_kink(self):
        d = parse_diagram("link n=1\ncomponent 1 closed: x x")
        assert d.components[0].closed
        assert pure_crossings(d) == {"x"}

    def test_comments_and_blanks(self):
        d = parse_diagram("# heading\n\ntangle n=1  # trailing\ncomponent 1 open: a a\n")
        assert d.crossing_count == 1

    def test_accepts_bytes(self):
        d = parse_diagram(b"link n=1\ncomponent 1 closed: x x\n")
        assert d.crossing_count == 1

    def test_bad_header(self):
        with pytest.raises(ParseError) as err:
            parse_diagram("knot n=1\ncomponent 1 open:")
        assert err.value.line == 1

    def test_arity_violation(self):
        with pytest.raises(ParseError, match="exactly twice"):
            parse_diagram("tangle n=1\ncomponent 1 open: x")

    def test_duplicate_component_index(self):
        with pytest.raises(ParseError, match="duplicate"):
            parse_diagram("tangle n=2\ncomponent 1 open: x\ncomponent 1 open: x")

    def test_component_count_mismatch(self):
        with pytest.raises(ParseError):
            parse_diagram("tangle n=2\ncomponent 1 open:")

    def test_bad_token_reports_column(self):
        with pytest.raises(ParseError) as err:
            parse_diagram("tangle n=1\ncomponent 1 open: a,b a,b")
        assert err.value.line == 2
        assert err.value.column is not None

    def test_roundtrip_random(self):
        rng = random.Random(5)
        for _ in range(40):
            d = random_any_diagram(rng, 8)
            assert parse_diagram(serialize_diagram(d)) == d


class TestValidate:
    def test_sample_valid(self, sample_tangle):
        assert validate(sample_tangle) == []

    def test_odd_occurrence(self):
        d = Diagram("tangle", (ComponentCode(False, ("x",)),))
        rules = [v.rule for v in validate(d)]
        assert rules == ["arity"]

    def test_closed_component_in_tangle(self):
        d = Diagram("tangle", (ComponentCode(True, ("x", "x")),))
        assert any(v.rule == "kind" for v in validate(d))

    def test_pass_count_is_twice_crossings(self):
        rng = random.Random(11)
        for _ in range(30):
            d = random_any_diagram(rng, 9)
            assert sum(len(c) for c in d.components) == 2 * d.crossing_count


class TestCrossingQueries:
    def test_types_on_sample(self, sample_tangle):
        assert crossing_type(sample_tangle, "a") == CrossingType(1, 2)
        assert crossing_type(sample_tangle, "f") == CrossingType(2, 3)
        assert not crossing_type(sample_tangle, "a").is_pure

    def test_pure_type(self):
        d = parse_diagram("link n=1\ncomponent 1 closed: x x")
        assert crossing_type(d, "x") == CrossingType(1, 1)
        assert crossing_type(d, "x").is_pure

    def test_unknown_crossing(self, sample_tangle):
        with pytest.raises(DiagramError, match="unknown"):
            crossing_type(sample_tangle, "zz")

    def test_pure_crossings(self, sample_tangle):
        assert pure_crossings(sample_tangle) == set()
        knot = parse_diagram("link n=1\ncomponent 1 closed: x y x y")
        assert pure_crossings(knot) == {"x", "y"}
        bigon = parse_diagram("tangle n=2\ncomponent 1 open: p q\ncomponent 2 open: p q")
        assert pure_crossings(bigon) == set()


class TestGoodCondition:
    def test_sample(self, sample_tangle):
        good, table = is_good_condition(sample_tangle)
        assert good
        assert table == {(1, 2): 0, (1, 3): 0, (2, 3): 0}

    def test_single_crossing_pair(self):
        d = parse_diagram("tangle n=2\ncomponent 1 open: a\ncomponent 2 open: a")
        good, table = is_good_condition(d)
        assert not good
        assert table == {(1, 2): 1}

    def test_empty_diagram(self):
        d = parse_diagram("tangle n=2\ncomponent 1 open:\ncomponent 2 open:")
        assert is_good_condition(d) == (True, {(1, 2): 0})

    def test_pure_crossings_not_constrained(self):
        d = parse_diagram("link n=1\ncomponent 1 closed: x x")
        assert is_good_condition(d) == (True, {})


class TestCanonicalForm:
    def test_rotation_same_form(self):
        a = parse_diagram("link n=1\ncomponent 1 closed: y x y x")
        b = parse_diagram("link n=1\ncomponent 1 closed: x y x y")
        assert canonical_form(a) == canonical_form(b)

    def test_idempotent(self, sample_tangle):
        c = canonical_form(sample_tangle)
        assert canonical_form(c) == c

    def test_reversal_same_form(self):
        a = parse_diagram("link n=1\ncomponent 1 closed: x y x z y z")
        b = Diagram("link", (ComponentCode(True, tuple(reversed(a.components[0].passes))),))
        assert canonical_form(a) == canonical_form(b)

    def test_open_components_not_reversed(self):
        a = parse_diagram("tangle n=2\ncomponent 1 open: x y\ncomponent 2 open: y x")
        b = parse_diagram("tangle n=2\ncomponent 1 open: x y\ncomponent 2 open: x y")
        assert canonical_form(a) != canonical_form(b)

    def test_components_never_reindexed(self):
        d = parse_diagram("link n=2\ncomponent 1 closed:\ncomponent 2 closed: x x")
        c = canonical_form(d)
        assert len(c.components[0]) == 0
        assert len(c.components[1]) == 2

    def test_invalid_diagram_rejected(self):
        with pytest.raises(DiagramError):
            canonical_form(Diagram("tangle", (ComponentCode(False, ("x",)),)))

    def test_scramble_invariance(self):
        rng = random.Random(23)
        for _ in range(60):
            d = random_any_diagram(rng, 8)
            assert canonical_key(scramble(rng, d)) == canonical_key(d)

    def test_matches_naive_oracle(self):
        rng = random.Random(37)
        for _ in range(60):
            d = random_any_diagram(rng, 7)
            assert canonical_key(d) == naive_canonical_key(d)


class TestCutLink:
    def test_offset_zero(self):
        d = Diagram("link", (ComponentCode(True, ("a", "b", "d", "e")),))
        t = cut_link(d, [Basepoint(1, 0)])
        assert t.kind == "tangle"
        assert t.components[0].passes == ("a", "b", "d", "e")

    def test_rotation(self):
        d = Diagram("link", (ComponentCode(True, ("a", "b", "d", "e")),))
        t = cut_link(d, [Basepoint(1, 2)])
        assert t.components[0].passes == ("d", "e", "a", "b")

    def test_closure_cut_is_identity(self, sample_tangle, sample_closure):
        t = cut_link(sample_closure, [Basepoint(i, 0) for i in (1, 2, 3)])
        assert t == sample_tangle

    def test_bad_component(self, sample_closure):
        with pytest.raises(DiagramError, match="out of range"):
            cut_link(sample_closure, [Basepoint(1, 0), Basepoint(2, 0), Basepoint(5, 0)])

    def test_bad_offset(self, sample_closure):
        with pytest.raises(DiagramError, match="offset"):
            cut_link(sample_closure, [Basepoint(1, 9), Basepoint(2, 0), Basepoint(3, 0)])

    def test_preserves_types_and_parity(self):
        rng = random.Random(91)
        for _ in range(25):
            d = random_good_diagram(rng, rng.randint(2, 4), 8, kind="link")
            points = [
                Basepoint(i, rng.randint(0, len(d.components[i - 1])))
                for i in range(1, d.n + 1)
            ]
            t = cut_link(d, points)
            for name in d.crossing_names:
                assert crossing_type(t, name) == crossing_type(d, name)
            assert is_good_condition(t) == is_good_condition(d)
