import pytest

from rank3kit.distinguisher import (CLASS_B_TABLE, CLASS_C_TABLE, Coincidence,
                                    a1_divisibility, coincidence_family_pairs,
                                    embedded_tables_json, emit_exception_table,
                                    exception_table_text,
                                    pairwise_intersections, scan_class_a,
                                    scan_class_b, scan_class_c)
from rank3kit.formulas import ParameterTriple

LEMMA_A_TRIPLES = {
    (3 ** 2, 4, 4), (3 ** 4, 16, 64), (3 ** 6, 104, 624),
    (2 ** 4, 5, 10), (2 ** 6, 21, 42), (2 ** 8, 51, 204),
    (2 ** 10, 93, 930), (2 ** 12, 315, 3780), (2 ** 16, 3855, 61680),
    (5 ** 2, 8, 16),
}

LEMMA_B_TRIPLES = {
    (7 ** 2, 24, 24), (17 ** 2, 96, 192), (23 ** 2, 264, 264),
    (3 ** 6, 104, 624), (47 ** 2, 1104, 1104), (3 ** 4, 16, 64),
    (7 ** 4, 480, 1920),
}

LEMMA_C_TRIPLES = {(3 ** 4, 40, 40), (2 ** 12, 315, 3780),
                   (89 ** 2, 2640, 5280)}


def test_a1_divisibility():
    assert not a1_divisibility(ParameterTriple.of(29 ** 2, 168, 672))
    assert a1_divisibility(ParameterTriple.of(17 ** 2, 96, 192))
    assert a1_divisibility(ParameterTriple.of(13, 6, 6))
    # quotient 10 does not divide d = 5
    assert not a1_divisibility(ParameterTriple.of(3 ** 5, 22, 220))


def test_embedded_table_shapes():
    assert len(CLASS_B_TABLE) == 16
    assert len(CLASS_C_TABLE) == 26
    data = embedded_tables_json()
    assert len(data["class_b"]) == 16
    assert len(data["class_c"]) == 26


def test_scan_class_b():
    got = {(t.n, t.m1, t.m2) for t in scan_class_b()}
    assert got == LEMMA_B_TRIPLES
    assert (13 ** 2, 72, 96) not in got  # 72 does not divide 96
    assert len(scan_class_b()) == 7


def test_scan_class_c():
    got = {(t.n, t.m1, t.m2) for t in scan_class_c()}
    assert got == LEMMA_C_TRIPLES
    assert len(scan_class_c()) == 3


def test_scan_class_a():
    got = {(t.n, t.m1, t.m2) for t in scan_class_a()}
    assert got == LEMMA_A_TRIPLES
    # bilinear branch with r = 4, m = 3 is the 2^12 entry
    assert (2 ** 12, 315, 3780) in got


def test_every_scan_triple_passes_divisibility():
    for t in scan_class_a() + scan_class_b() + scan_class_c():
        assert a1_divisibility(t)


def test_scans_are_deterministic():
    assert scan_class_a() == scan_class_a()
    assert scan_class_b() == scan_class_b()
    assert scan_class_c() == scan_class_c()


def test_exception_table():
    table = emit_exception_table()
    assert table.class_a == ((16, 5), (64, 21), (256, 51), (1024, 93),
                             (4096, 315), (65536, 3855), (9, 4), (81, 16),
                             (729, 104), (25, 8))
    assert table.class_b == ((81, 16), (729, 104), (49, 24), (2401, 480),
                             (289, 96), (529, 264), (2209, 1104))
    assert table.class_c == ((4096, 315), (81, 40), (7921, 2640))
    assert len(table.class_a) == 10
    assert emit_exception_table() == table  # regeneration is idempotent
    text = exception_table_text()
    assert "(A)" in text and "3855" in text


def test_pairwise_intersections_default_grid():
    cos = pairwise_intersections(16, 6)
    pairs = coincidence_family_pairs(cos)
    assert pairs == {("H", "VO"), ("VO", "VSz")}
    # every H/VO collision is the m = 2 bilinear graph against the
    # plus-type polar graph over the same field
    for c in cos:
        fams = dict(c.members)
        if "H" in fams:
            r, m = fams["H"]
            eps, dim, q = fams["VO"]
            assert (m, eps, dim, q) == (2, "+", 4, r)
        else:
            assert fams["VSz"] == (8,)
            assert fams["VO"] == ("-", 4, 8)
    # the alternating-forms and half-spin rows never collide
    for c in cos:
        fams = {f for f, _ in c.members}
        assert "A5" not in fams and "VD55" not in fams


def test_pairwise_intersections_extended_grid():
    small = pairwise_intersections(16, 6)
    big = pairwise_intersections(32, 8)
    assert coincidence_family_pairs(big) == coincidence_family_pairs(small)
    extra = [c for c in big if c not in small]
    non_hvo = [c for c in extra if {f for f, _ in c.members} != {"H", "VO"}]
    assert len(non_hvo) == 1
    assert dict(non_hvo[0].members) == {"VSz": (32,), "VO": ("-", 4, 32)}


def test_pairwise_intersections_rejects_small_grid():
    with pytest.raises(ValueError):
        pairwise_intersections(8, 6)
