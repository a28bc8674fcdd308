import pathlib

import pytest
from hypothesis import given, strategies as st

from weylstrata.chartab import (IrrepLabel, ProductLabel, dump_character_table,
                                load_character_table, lookup_irrep,
                                parse_label, partitions, product_table,
                                symmetric_table, type_a_class_name,
                                validate_table)
from weylstrata.errors import (EngineError, TableFormatError,
                               UnknownLabelError)
from weylstrata.permgrp import build_group
from weylstrata.rootsys import build_root_system

DATA = pathlib.Path(__file__).resolve().parents[1] / "src/weylstrata/data"


def test_label_parse_print():
    for text in ("1_0", "15_16", "2016_19", "3_2''", "1_3'"):
        assert parse_label(text).text == text
    with pytest.raises(UnknownLabelError):
        parse_label("x_1")
    with pytest.raises(EngineError):
        parse_label("0_1")


@given(st.integers(1, 4000), st.integers(0, 120),
       st.sampled_from(["", "'", "''"]))
def test_label_roundtrip_property(dim, b, mark):
    lab = IrrepLabel(dim, b, mark)
    assert parse_label(lab.text) == lab


def test_product_label():
    lab = ProductLabel((IrrepLabel(2, 1), IrrepLabel(1, 3)))
    assert lab.dim == 2 and lab.b == 4
    assert parse_label(lab.text) == lab


def test_partitions():
    assert partitions(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert len(partitions(9)) == 30


def test_type_a_class_names():
    assert type_a_class_name((1, 1, 1)) == "A_0"
    assert type_a_class_name((3, 2, 2, 1)) == "A_2+2A_1"
    assert type_a_class_name((4,)) == "A_3"


def test_symmetric_table_s2_s3_s4():
    t2 = symmetric_table(2)
    assert [l.text for l in t2.labels()] == ["1_0", "1_1"]
    t3 = symmetric_table(3)
    i2 = lookup_irrep(t3, "2_1")
    c3 = next(i for i, c in enumerate(t3.classes) if c.element_order == 3)
    assert t3.values(i2)[c3] == -1
    assert sum(l.dim ** 2 for l in symmetric_table(4).labels()) == 24
    assert lookup_irrep(t3, "1_3") >= 0
    with pytest.raises(EngineError):
        symmetric_table(10)


@pytest.mark.parametrize("n", range(2, 8))
def test_symmetric_tables_validate(n):
    t = symmetric_table(n)
    ctx = build_group(build_root_system("A%d" % (n - 1)))
    report = validate_table(t, ctx)
    assert report.ok, report.failures[:3]


def test_lookup_errors_list_candidates():
    t = symmetric_table(5)
    with pytest.raises(UnknownLabelError) as exc:
        lookup_irrep(t, "4_100")
    assert exc.value.candidates


def test_product_table_examples():
    empty = product_table([])
    assert len(empty.classes) == 1 and empty.irreps[0][0].text == "1_0"
    p = product_table([symmetric_table(2), symmetric_table(2)])
    assert len(p.classes) == 4
    assert sorted(l.b for l in p.labels()) == [0, 1, 1, 2]
    p2 = product_table([symmetric_table(3), symmetric_table(2)])
    assert len(p2.irreps) == 6
    assert sum(l.dim ** 2 for l in p2.labels()) == 12
    single = product_table([symmetric_table(3)])
    assert single is symmetric_table(3)


def test_product_table_validates_against_group():
    p = product_table([symmetric_table(3), symmetric_table(2)])
    ctx = build_group(build_root_system("A2+A1"))
    assert validate_table(p, ctx).ok


def test_wct_roundtrip():
    t = symmetric_table(4)
    assert load_character_table(dump_character_table(t)).irreps == t.irreps


def test_wct_rejects_malformed():
    with pytest.raises(TableFormatError):
        load_character_table("WCT 2\n")
    good = dump_character_table(symmetric_table(3))
    # perturb one value: load still works, validation must fail
    lines = good.splitlines()
    idx, line = next((i, l) for i, l in enumerate(lines) if l.startswith("I 2_1"))
    parts = line.split()
    parts[-1] = str(int(parts[-1]) + 1)
    lines[idx] = " ".join(parts)
    t = load_character_table("\n".join(lines))
    ctx = build_group(build_root_system("A2"))
    report = validate_table(t, ctx)
    assert any("orthogonality" in f for f in report.failures)


def test_wct_rejects_duplicate_labels_and_nonsquare():
    t = symmetric_table(3)
    text = dump_character_table(t)
    dup = text.replace("I 1_3", "I 1_0", 1)
    with pytest.raises(TableFormatError):
        load_character_table(dup)
    nonsquare = "\n".join(text.splitlines()[:-1])
    with pytest.raises(TableFormatError):
        load_character_table(nonsquare)


BUNDLED = ["a1", "a2", "a3", "a4", "a5", "d4", "d5", "d6", "d7", "g2",
           "e6", "e7", "e8"]


@pytest.mark.parametrize("name", BUNDLED)
def test_bundled_tables_exist(name):
    assert (DATA / ("%s.wct" % name)).exists()


def test_bundled_e6_shape():
    t = load_character_table((DATA / "e6.wct").read_text())
    assert len(t.classes) == 25 and len(t.irreps) == 25
    assert t.order == 51840
    assert lookup_irrep(t, "15_16") >= 0


def test_bundled_matches_symmetric_tables():
    # independently computed type-A tables agree with the bundled files
    for n in range(2, 7):
        bundled = load_character_table(
            (DATA / ("a%d.wct" % (n - 1))).read_text())
        mn = symmetric_table(n)

        def normal(t):
            order = sorted(range(len(t.classes)),
                           key=lambda i: (t.classes[i].name, t.classes[i].size))
            rows = {lab.text: tuple(row[i] for i in order)
                    for lab, row in t.irreps}
            cls = sorted((c.name, c.size, c.element_order) for c in t.classes)
            return rows, cls

        rb, cb = normal(bundled)
        rm, cm = normal(mn)
        assert cb == cm
        assert rb == rm
