"""Command-line front end.

Subcommands: ``validate``, ``invariant``, ``bracket``, ``compare``,
``fuzz``, ``orbit``, ``replay``.  Exit codes: 0 success (results on
stdout), 1 a comparison or fuzz check found the inputs distinct or a
failure, 2 usage or parse errors, 3 precondition failures (for example a
diagram out of good condition).  Output is deterministic for fixed inputs
and seed; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bracket import BracketError, bracket, bracket_equal, serialize_bracket
from .diagram import (
    Basepoint,
    Diagram,
    DiagramError,
    ParseError,
    canonical_key,
    is_good_condition,
    parse_diagram,
    pure_crossings,
    serialize_diagram,
    validate,
)
from .invariant import (
    InvariantError,
    fingerprint,
    link_invariant,
    link_word,
    word_invariant,
)
from .moves import (
    MoveError,
    WalkTrace,
    apply_move,
    bounded_equivalence_search,
    parse_trace,
    random_walk,
    replay,
    serialize_trace,
)
from .words import WordError, orbit_representatives, render_word

__all__ = ["run", "main"]


def _pair(text: str) -> tuple[int, int]:
    try:
        i, j = (int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected I,J with integers, got {text!r}")
    return i, j


def _basepoints(text: str) -> list[Basepoint]:
    points = []
    try:
        for chunk in text.split(","):
            comp, offset = chunk.split(":")
            points.append(Basepoint(int(comp), int(offset)))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected basepoints like '1:0,2:3', got {text!r}"
        )
    return points


def _load(path: str) -> Diagram:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror or e}")
    return parse_diagram(text)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="freelinks",
        description="Invariants of free knots, links and n-n tangles on Gauss codes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a diagram file and report its summary")
    p.add_argument("file")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("invariant", help="word invariant for one component pair")
    p.add_argument("file")
    p.add_argument("--pair", type=_pair, required=True, metavar="I,J")
    p.add_argument("--along", type=int, default=None, metavar="I|J")
    p.add_argument("--basepoints", type=_basepoints, default=None, metavar="1:o1,2:o2,...")
    p.set_defaults(func=_cmd_invariant)

    p = sub.add_parser("bracket", help="mod-2 splicing bracket of a diagram")
    p.add_argument("file")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=_cmd_bracket)

    p = sub.add_parser("compare", help="decide equal / distinct / unknown for two diagrams")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--pair", type=_pair, default=None, metavar="I,J")
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("fuzz", help="random move walk with invariant checks")
    p.add_argument("file")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--forbid-pure", action="store_true")
    p.add_argument("--max-size", type=int, default=None)
    p.set_defaults(func=_cmd_fuzz)

    p = sub.add_parser("orbit", help="masked conjugacy representatives of a word")
    p.add_argument("file")
    p.add_argument("--pair", type=_pair, required=True, metavar="I,J")
    p.set_defaults(func=_cmd_orbit)

    p = sub.add_parser("replay", help="apply a recorded move trace to a diagram")
    p.add_argument("file")
    p.add_argument("trace")
    p.set_defaults(func=_cmd_replay)

    return parser


def _cmd_validate(args) -> int:
    d = _load(args.file)
    violations = validate(d)
    if violations:
        print(f"invalid, n={d.n}, violations={len(violations)}")
        for v in violations:
            print(f"  {v}")
        return 0
    good, _ = is_good_condition(d)
    print(
        f"valid, n={d.n}, crossings={d.crossing_count}, "
        f"good-condition={'true' if good else 'false'}, pure={len(pure_crossings(d))}"
    )
    return 0


def _resolve_along(args) -> tuple[int, int]:
    i, j = args.pair
    along = getattr(args, "along", None)
    if along is None:
        along = i
    if along not in (i, j):
        raise InvariantError(f"--along must be one of the pair, got {along}")
    other = j if along == i else i
    return along, other


def _cmd_invariant(args) -> int:
    d = _load(args.file)
    along, other = _resolve_along(args)
    if d.kind == "tangle":
        word = word_invariant(d, along, other)
    elif args.basepoints is not None:
        word = link_word(d, args.basepoints, along, other)
    else:
        word = link_invariant(d, along, other)
    print(render_word(word))
    return 0


def _cmd_bracket(args) -> int:
    d = _load(args.file)
    value = bracket(d, jobs=args.jobs)
    sys.stdout.write(serialize_bracket(value))
    return 0


def _cmd_compare(args) -> int:
    a = _load(args.file_a)
    b = _load(args.file_b)
    for name, d in ((args.file_a, a), (args.file_b, b)):
        violations = validate(d)
        if violations:
            raise DiagramError(f"{name} is invalid: " + "; ".join(str(v) for v in violations))
    if a.n != b.n or a.kind != b.kind:
        raise DiagramError(
            f"cannot compare: {a.kind} n={a.n} versus {b.kind} n={b.n}"
        )

    pure_free = not pure_crossings(a) and not pure_crossings(b)
    good = is_good_condition(a)[0] and is_good_condition(b)[0]

    if pure_free and good:
        fa, fb = fingerprint(a), fingerprint(b)
        if args.pair is not None:
            i, j = sorted(args.pair)
            fa = {k: v for k, v in fa.items() if k[0] == (i, j)}
            fb = {k: v for k, v in fb.items() if k[0] == (i, j)}
        if fa != fb:
            print("distinct")
            for key in sorted(fa):
                if fa[key] != fb[key]:
                    (i, j), along = key
                    print(
                        f"certificate: pair ({i},{j}) along {along}: "
                        f"{render_word(fa[key])} != {render_word(fb[key])}"
                    )
                    break
            return 1

    if canonical_key(a) == canonical_key(b):
        print("equal")
        return 0

    if pure_free:
        found = bounded_equivalence_search(a, b, args.depth, forbid_pure=True)
        if found.equivalent:
            print("equal")
            print("trace:")
            sys.stdout.write(serialize_trace(found.trace))
            return 0

    verdict = bracket_equal(
        bracket(a, jobs=args.jobs), bracket(b, jobs=args.jobs), args.depth
    )
    print(verdict.status)
    if verdict.status == "distinct":
        print(f"certificate: {verdict.certificate}")
        return 1
    return 0


def _fingerprint_applicable(d: Diagram) -> bool:
    return not pure_crossings(d) and is_good_condition(d)[0]


def _cmd_fuzz(args) -> int:
    d = _load(args.file)
    violations = validate(d)
    if violations:
        raise DiagramError(f"{args.file} is invalid: " + "; ".join(str(v) for v in violations))
    walk = random_walk(
        d, args.steps, args.seed, forbid_pure=args.forbid_pure, max_size=args.max_size
    )
    parity = is_good_condition(d)[1]
    track_words = args.forbid_pure and _fingerprint_applicable(d)
    reference = fingerprint(d) if track_words else None

    current = d
    for step, site in enumerate(walk.moves, start=1):
        current = apply_move(current, site)
        failure = None
        if validate(current):
            failure = "validity"
        elif current.n != d.n or current.kind != d.kind:
            failure = "component-count"
        elif is_good_condition(current)[1] != parity:
            failure = "parity-table"
        elif args.forbid_pure and not pure_crossings(d) and pure_crossings(current):
            failure = "pure-crossing"
        elif track_words and fingerprint(current) != reference:
            failure = "fingerprint"
        if failure:
            print(f"FAIL step={step} check={failure}")
            sys.stdout.write(
                serialize_trace(WalkTrace(d, walk.moves[:step], current))
            )
            return 1
    if current != walk.final:
        print("FAIL replay mismatch")
        return 1
    print(
        f"PASS steps={len(walk.moves)} seed={args.seed} crossings={walk.final.crossing_count}"
    )
    return 0


def _cmd_orbit(args) -> int:
    d = _load(args.file)
    along, other = _resolve_along(args)
    if d.kind == "tangle":
        word = word_invariant(d, along, other)
    else:
        word = link_word(d, [Basepoint(i, 0) for i in range(1, d.n + 1)], along, other)
    reps = orbit_representatives(word)
    rendered = sorted({render_word(rep) for rep in reps.values()})
    print(f"orbit masks={len(reps)} distinct={len(rendered)}")
    for line in rendered:
        print(line)
    return 0


def _cmd_replay(args) -> int:
    d = _load(args.file)
    try:
        text = Path(args.trace).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read {args.trace}: {e.strerror or e}")
    final = replay(d, parse_trace(text))
    sys.stdout.write(serialize_diagram(final))
    return 0


def run(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else 2
    try:
        return args.func(args)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (DiagramError, InvariantError, WordError, MoveError, BracketError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
