import pytest
from hypothesis import given, strategies as st

from weylstrata.errors import InvalidTypeError
from weylstrata.rootsys import (CartanType, build_root_system, classify_subset,
                                degrees, levi_by_name, levi_representatives,
                                subsystem_type, weyl_order)


def test_parse_print_roundtrip():
    for text in ("E8", "A4+A3", "D5+A2", "T", "G2", "B3+C2"):
        t = CartanType.parse(text)
        assert CartanType.parse(t.text) == t


def test_parse_canonical_order():
    assert CartanType.parse("A3+A4").text == "A4+A3"
    assert CartanType.parse("a2+d5").text == "D5+A2"


def test_invalid_types_rejected():
    for bad in ("E9", "F5", "G3", "D1", "H4", "A0", "Q3"):
        with pytest.raises(InvalidTypeError):
            CartanType.parse(bad)


@given(st.lists(st.tuples(st.sampled_from("AD"), st.integers(2, 6)),
                min_size=1, max_size=3))
def test_component_order_is_canonical(comps):
    t = CartanType(tuple(comps))
    assert list(t.components) == sorted(t.components,
                                        key=lambda c: (c[0], -c[1]))
    assert CartanType.parse(t.text) == t


ROOT_COUNTS = {"A2": (6, 3), "A1+A1": (4, 2), "B2": (8, 4), "G2": (12, 6),
               "F4": (48, 24), "D4": (24, 12), "E6": (72, 36),
               "E7": (126, 63), "E8": (240, 120)}


@pytest.mark.parametrize("text,counts", sorted(ROOT_COUNTS.items()))
def test_root_counts(text, counts):
    rs = build_root_system(text)
    assert (len(rs.roots), rs.n_positive) == counts
    # every root is +- a positive root
    pos = set(rs.positive_roots)
    for r in rs.roots:
        assert r in pos or tuple(-x for x in r) in pos


def test_roots_closed_under_simple_reflections():
    rs = build_root_system("D4")
    for i in range(rs.rank):
        for r in rs.roots:
            assert rs.reflect(i, r) in rs.index_of


@pytest.mark.parametrize("text", sorted(ROOT_COUNTS))
def test_positive_roots_match_degrees(text):
    rs = build_root_system(text)
    assert rs.n_positive == sum(d - 1 for d in degrees(rs))


def test_degrees_values():
    assert degrees(build_root_system("A2")) == [2, 3]
    assert degrees(build_root_system("E8")) == [2, 8, 12, 14, 18, 20, 24, 30]
    assert degrees(build_root_system("A1")) == [2]
    assert degrees(build_root_system("D4")) == [2, 4, 4, 6]


def test_subsystem_type_examples():
    rs = build_root_system("E8")
    # nodes 2..8 (1-based Bourbaki) span D7
    assert subsystem_type(rs, range(1, 8)).text == "D7"
    assert subsystem_type(rs, []).text == "T"
    rs3 = build_root_system("A3")
    assert subsystem_type(rs3, [0, 2]).text == "A1+A1"


def test_classify_subset_standard_numbering():
    rs = build_root_system("E8")
    t, maps = classify_subset(rs, range(1, 8))
    assert t.text == "D7" and len(maps[0]) == 7
    # the fork node of D7 is E8 node 4 (0-based 3)
    assert maps[0][4] == 3  # standard D7 node 5 = centre neighbour order
    t2, maps2 = classify_subset(rs, [0, 2, 3, 4, 1])
    assert t2.text == "D5"


def test_levi_representatives_small():
    reps = levi_representatives(build_root_system("A2"))
    assert [r.name for r in reps] == ["T", "A1", "A2"]
    reps = levi_representatives(build_root_system("A1+A1"))
    assert [r.name for r in reps] == ["T", "A1#1", "A1#2", "A1+A1"]


def test_levi_representatives_e7_prime_phenomenon():
    reps = levi_representatives(build_root_system("E7"))
    assert len(reps) == 32
    twins = sorted(r.name for r in reps if r.ambiguous)
    assert twins == ["A1+A1+A1#1", "A1+A1+A1#2", "A3+A1#1", "A3+A1#2",
                     "A5#1", "A5#2"]


def test_levi_representatives_exhaustive_partition():
    # every subset of simple roots is conjugate to exactly one representative
    from weylstrata.permgrp import build_group, subset_conjugator

    rs = build_root_system("A3")
    ctx = build_group(rs)
    reps = levi_representatives(rs)
    simple = rs.simple_root_indices
    for mask in range(1 << rs.rank):
        s = frozenset(simple[i] for i in range(rs.rank) if mask >> i & 1)
        hits = [r for r in reps
                if subset_conjugator(ctx, s, r.subset) is not None]
        assert len(hits) == 1


def test_levi_by_name():
    rs = build_root_system("E7")
    assert levi_by_name(rs, "A5#2").tag == 2
    with pytest.raises(InvalidTypeError):
        levi_by_name(rs, "A5")      # ambiguous
    with pytest.raises(InvalidTypeError):
        levi_by_name(rs, "G2")


def test_weyl_orders():
    assert weyl_order(CartanType.parse("E8")) == 696729600
    assert weyl_order(CartanType.parse("E7")) == 2903040
    assert weyl_order(CartanType.parse("T")) == 1


def test_deterministic_rebuild():
    a = build_root_system("E6")
    b = build_root_system("E6")
    assert a.roots == b.roots
