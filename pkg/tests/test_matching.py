import itertools

import pytest

from dodgson import (
    CANONICAL_NO,
    CANONICAL_YES,
    MatchingInstance,
    ParseError,
    enumerate_instances,
    has_matching,
    parse_matching,
    serialize_matching,
)


def test_canonical_instances():
    assert not has_matching(CANONICAL_NO)
    assert has_matching(CANONICAL_YES)


def test_single_triple_covers_q1():
    inst = MatchingInstance(("w",), ("x",), ("y",), (("w", "x", "y"),))
    assert has_matching(inst)


def test_empty_triple_set_has_no_matching():
    inst = MatchingInstance(("w",), ("x",), ("y",), ())
    assert not has_matching(inst)


def test_validation_rules():
    with pytest.raises(ValueError, match="disjoint"):
        MatchingInstance(("a",), ("a",), ("y",), ())
    with pytest.raises(ValueError, match="same number"):
        MatchingInstance(("w", "w2"), ("x",), ("y",), ())
    with pytest.raises(ValueError, match="non-empty"):
        MatchingInstance((), (), (), ())
    with pytest.raises(ValueError, match="not in W x X x Y"):
        MatchingInstance(("w",), ("x",), ("y",), (("x", "w", "y"),))


def test_triples_deduplicate_and_sort():
    inst = MatchingInstance(
        ("w2", "w1"), ("x1", "x2"), ("y1", "y2"),
        (("w2", "x1", "y1"), ("w1", "x1", "y1"), ("w2", "x1", "y1")),
    )
    assert inst.w_items == ("w1", "w2")
    assert inst.triples == (("w1", "x1", "y1"), ("w2", "x1", "y1"))


def test_enumeration_counts():
    assert len(list(enumerate_instances(1, (1, 1)))) == 1
    assert len(list(enumerate_instances(2, (2, 2)))) == 28
    singles = list(enumerate_instances(2, (1, 1)))
    assert len(singles) == 8
    assert not any(has_matching(inst) for inst in singles)


def test_enumeration_desk_scale_guard():
    with pytest.raises(ValueError, match="desk scale"):
        next(enumerate_instances(4, (1, 1)))


def test_matching_is_monotone_in_triples():
    universe = sorted(itertools.product(("w1", "w2"), ("x1", "x2"), ("y1", "y2")))
    for combo in itertools.combinations(universe, 2):
        base = MatchingInstance(("w1", "w2"), ("x1", "x2"), ("y1", "y2"), combo)
        if not has_matching(base):
            continue
        for extra in universe:
            grown = MatchingInstance(
                ("w1", "w2"), ("x1", "x2"), ("y1", "y2"), combo + (extra,)
            )
            assert has_matching(grown)


def test_q2_matching_means_two_coordinate_disjoint_triples():
    universe = sorted(itertools.product(("w1", "w2"), ("x1", "x2"), ("y1", "y2")))
    for m in (2, 3):
        for combo in itertools.combinations(universe, m):
            inst = MatchingInstance(("w1", "w2"), ("x1", "x2"), ("y1", "y2"), combo)
            directly = any(
                all(a[i] != b[i] for i in range(3))
                for a, b in itertools.combinations(combo, 2)
            )
            assert has_matching(inst) == directly


def test_parse_round_trip():
    text = serialize_matching(CANONICAL_YES)
    assert parse_matching(text) == CANONICAL_YES


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError, match="line 1"):
        parse_matching("V: a\n")
    with pytest.raises(ParseError, match="line 4"):
        parse_matching("W: w\nX: x\nY: y\nw x\n")
    with pytest.raises(ParseError, match="missing"):
        parse_matching("W: w\nX: x\n")
