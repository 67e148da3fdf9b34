import random

import pytest

from freelinks.diagram import (
    canonical_key,
    is_good_condition,
    parse_diagram,
    pure_crossings,
    validate,
)
from freelinks.moves import (
    MoveError,
    MoveSite,
    apply_move,
    bounded_equivalence_search,
    enumerate_moves,
    inverse_site,
    move_candidates,
    parse_trace,
    random_walk,
    replay,
    serialize_trace,
)

from genutil import random_any_diagram, random_good_diagram


class TestEnumerate:
    def test_kink_single_site(self):
        d = parse_diagram("link n=1\ncomponent 1 closed: x x")
        sites = enumerate_moves(d)
        assert [s.kind for s in sites] == ["R1_delete"]

    def test_bigon_single_site(self):
        d = parse_diagram("tangle n=2\ncomponent 1 open: p q\ncomponent 2 open: p q")
        sites = enumerate_moves(d)
        assert [s.kind for s in sites] == ["R2_delete"]
        assert sites[0].pairs == ((1, 0), (2, 0))

    def test_triangle_single_r3(self, triangle):
        sites = enumerate_moves(triangle)
        assert [s.kind for s in sites] == ["R3"]
        assert sites[0].names == ("x", "y", "z")

    def test_reversed_order_bigon(self):
        d = parse_diagram("tangle n=2\ncomponent 1 open: p q\ncomponent 2 open: q p")
        assert [s.kind for s in enumerate_moves(d)] == ["R2_delete"]

    def test_overlapping_pairs_do_not_match(self):
        d = parse_diagram("link n=1\ncomponent 1 closed: x y x y")
        # the only second-move patterns use disjoint pairs
        sites = enumerate_moves(d, kinds={"R2_delete"})
        for s in sites:
            assert len({pos for _, pos in s.pairs}) == 2

    def test_forbid_pure_drops_r1(self):
        d = parse_diagram("link n=1\ncomponent 1 closed: x x")
        assert enumerate_moves(d, forbid_pure=True) == []

    def test_forbid_pure_requires_pure_free_result(self):
        d = parse_diagram("link n=1\ncomponent 1 closed: x y x y")
        # deleting the two crossings leaves the crossingless circle: allowed
        sites = enumerate_moves(d, forbid_pure=True)
        assert sites and all(s.kind == "R2_delete" for s in sites)
        kept = parse_diagram("link n=2\ncomponent 1 closed: x y x y\ncomponent 2 closed: z z")
        # any second-move deletion leaves the kink z z: no site survives
        assert enumerate_moves(kept, forbid_pure=True) == []

    def test_sites_are_applicable(self):
        rng = random.Random(3)
        for _ in range(40):
            d = random_any_diagram(rng, 8)
            for site in enumerate_moves(d):
                apply_move(d, site)


class TestApply:
    def test_r1_delete_open(self):
        d = parse_diagram("tangle n=1\ncomponent 1 open: x x a a")
        site = MoveSite("R1_delete", names=("x",), pairs=((1, 0),))
        assert apply_move(d, site).components[0].passes == ("a", "a")

    def test_r2_delete_bigon(self):
        d = parse_diagram("tangle n=2\ncomponent 1 open: p q\ncomponent 2 open: p q")
        (site,) = enumerate_moves(d)
        out = apply_move(d, site)
        assert all(c.passes == () for c in out.components)
        assert out.n == 2

    def test_r3_swaps_each_pair(self, triangle):
        (site,) = enumerate_moves(triangle)
        out = apply_move(triangle, site)
        assert [c.passes for c in out.components] == [("y", "x"), ("z", "x"), ("z", "y")]

    def test_r3_twice_is_identity(self, triangle):
        (site,) = enumerate_moves(triangle)
        assert apply_move(apply_move(triangle, site), site) == triangle

    def test_pattern_absent(self):
        d = parse_diagram("tangle n=1\ncomponent 1 open: x a x a")
        site = MoveSite("R1_delete", names=("x",), pairs=((1, 0),))
        with pytest.raises(MoveError):
            apply_move(d, site)

    def test_insert_requires_fresh_name(self):
        d = parse_diagram("link n=1\ncomponent 1 closed: x x")
        site = MoveSite("R1_insert", names=("x",), slots=((1, 0, False),))
        with pytest.raises(MoveError, match="already present"):
            apply_move(d, site)

    def test_moves_preserve_structure(self):
        rng = random.Random(19)
        for _ in range(60):
            d = random_any_diagram(rng, 8)
            parity = is_good_condition(d)[1]
            for site in move_candidates(d, max_size=d.crossing_count + 2):
                out = apply_move(d, site)
                assert validate(out) == []
                assert out.n == d.n
                assert out.kind == d.kind
                assert [c.closed for c in out.components] == [c.closed for c in d.components]
                assert is_good_condition(out)[1] == parity


class TestInverses:
    def test_delete_insert_roundtrip_exact(self):
        rng = random.Random(7)
        for _ in range(80):
            d = random_any_diagram(rng, 8)
            for site in move_candidates(d, max_size=d.crossing_count + 2):
                out = apply_move(d, site)
                back = apply_move(out, inverse_site(d, site))
                assert back == d, (site, d, out)

    def test_wrapped_kink_roundtrip(self):
        d = parse_diagram("link n=1\ncomponent 1 closed: x a a x")
        for site in enumerate_moves(d, kinds={"R1_delete"}):
            out = apply_move(d, site)
            assert apply_move(out, inverse_site(d, site)) == d

    def test_wrapped_bigon_roundtrip(self):
        d = parse_diagram("link n=2\ncomponent 1 closed: p a a q\ncomponent 2 closed: q p")
        sites = [s for s in enumerate_moves(d, kinds={"R2_delete"}) if s.names[0] in "pq"]
        assert sites
        for site in sites:
            out = apply_move(d, site)
            assert apply_move(out, inverse_site(d, site)) == d


class TestRandomWalk:
    def test_zero_steps(self, sample_tangle):
        trace = random_walk(sample_tangle, 0, seed=1)
        assert trace.final == sample_tangle
        assert trace.moves == ()

    def test_deterministic(self, sample_tangle):
        a = random_walk(sample_tangle, 30, seed=7)
        b = random_walk(sample_tangle, 30, seed=7)
        assert a == b

    def test_forbid_pure_invariants(self, sample_tangle):
        trace = random_walk(sample_tangle, 100, seed=7, forbid_pure=True, max_size=14)
        assert not pure_crossings(trace.final)
        assert is_good_condition(trace.final) == is_good_condition(sample_tangle)
        current = sample_tangle
        for site in trace.moves:
            current = apply_move(current, site)
            assert not pure_crossings(current)
        assert current == trace.final

    def test_respects_max_size(self):
        rng = random.Random(2)
        d = random_good_diagram(rng, 3, 4)
        trace = random_walk(d, 60, seed=5, max_size=6)
        current = d
        for site in trace.moves:
            current = apply_move(current, site)
            assert current.crossing_count <= 6

    def test_stops_when_stuck(self):
        d = parse_diagram("tangle n=1\ncomponent 1 open: x x")
        trace = random_walk(d, 10, seed=1, forbid_pure=True, max_size=2)
        # no deletions survive the pure filter and no insertions are allowed
        assert trace.moves == ()


class TestBoundedSearch:
    def test_reflexive(self, sample_tangle):
        verdict = bounded_equivalence_search(sample_tangle, sample_tangle, 0)
        assert verdict.equivalent
        assert verdict.trace.moves == ()

    def test_bigon_to_circle(self):
        a = parse_diagram("link n=1\ncomponent 1 closed: x y x y")
        b = parse_diagram("link n=1\ncomponent 1 closed:")
        verdict = bounded_equivalence_search(a, b, 1)
        assert verdict.equivalent
        assert len(verdict.trace.moves) == 1
        assert canonical_key(replay(a, verdict.trace.moves)) == canonical_key(b)

    def test_triangle_r3_image(self, triangle):
        (site,) = enumerate_moves(triangle)
        image = apply_move(triangle, site)
        verdict = bounded_equivalence_search(triangle, image, 1, forbid_pure=True)
        assert verdict.equivalent
        assert len(verdict.trace.moves) == 1

    def test_component_count_mismatch(self, sample_tangle, triangle):
        bad = parse_diagram("tangle n=1\ncomponent 1 open:")
        with pytest.raises(MoveError, match="component counts"):
            bounded_equivalence_search(sample_tangle, bad, 1)

    def test_unknown_within_depth(self, sample_tangle, trivial_tangle):
        verdict = bounded_equivalence_search(sample_tangle, trivial_tangle, 1, forbid_pure=True)
        assert not verdict.equivalent
        assert verdict.trace is None

    def test_two_step_path(self):
        a = parse_diagram("tangle n=1\ncomponent 1 open: x x y y")
        b = parse_diagram("tangle n=1\ncomponent 1 open:")
        assert not bounded_equivalence_search(a, b, 1).equivalent
        verdict = bounded_equivalence_search(a, b, 2)
        assert verdict.equivalent
        assert len(verdict.trace.moves) == 2


class TestTraceFormat:
    def test_roundtrip(self, sample_tangle):
        trace = random_walk(sample_tangle, 40, seed=9, max_size=12)
        text = serialize_trace(trace)
        assert parse_trace(text) == list(trace.moves)
        assert replay(trace.initial, parse_trace(text)) == trace.final

    def test_replay_rejects_stale_trace(self, sample_tangle, triangle):
        trace = random_walk(sample_tangle, 10, seed=3)
        if not trace.moves:
            pytest.skip("walk recorded no moves")
        with pytest.raises(MoveError):
            replay(triangle, list(trace.moves))
