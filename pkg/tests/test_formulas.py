import math
from itertools import product

import pytest

from rank3kit.errors import NotComputed
from rank3kit.formulas import (ClassSpec, ParameterTriple, closure_order,
                               family_subdegrees, gl_order, orthogonal_order,
                               subdegrees_of, sz_order, tables_json,
                               tables_text, wreath_rank)
from rank3kit.gf import VectorSpace, field_make
from rank3kit.graphs import standard_form


def brute_isometries_gf2_dim4(eps):
    """Enumeration oracle: all 4x4 matrices over GF(2) preserving the
    standard type-eps form (65536 candidates, checked on all 16 vectors)."""
    f = field_make(2, 1)
    form = standard_form(eps, 2, f)
    space = VectorSpace(f, 4)
    vectors = [space.index_vec(i) for i in range(16)]
    values = [form.evaluate(v) for v in vectors]
    count = 0
    for mat_bits in range(1 << 16):
        rows = [[(mat_bits >> (4 * i + j)) & 1 for j in range(4)] for i in range(4)]
        ok = True
        for idx, v in enumerate(vectors):
            img = tuple(sum(v[i] * rows[i][j] for i in range(4)) % 2
                        for j in range(4))
            if form.evaluate(img) != values[idx]:
                ok = False
                break
        if not ok:
            continue
        # must be invertible: image of the 16 vectors is all of them
        imgs = {tuple(sum(v[i] * rows[i][j] for i in range(4)) % 2
                      for j in range(4)) for v in vectors}
        if len(imgs) == 16:
            count += 1
    return count


def test_subdegree_rows():
    assert subdegrees_of(ClassSpec("A3", (2, 3))) == ParameterTriple(2, 6, 21, 42)
    assert subdegrees_of(ClassSpec("A7", (8, 2, "-"))) == ParameterTriple(2, 12, 455, 3640)
    assert subdegrees_of(ClassSpec("A1_Paley", (13,))) == ParameterTriple(13, 1, 6, 6)
    assert subdegrees_of(ClassSpec("A2", (3, 1))) == ParameterTriple(3, 2, 4, 4)
    assert subdegrees_of(ClassSpec("A2", (3, 2))) == ParameterTriple(3, 4, 16, 64)
    assert subdegrees_of(ClassSpec("A11", (8,))) == ParameterTriple(2, 12, 455, 3640)
    assert subdegrees_of(ClassSpec("A8", (2,))) == ParameterTriple(2, 10, 155, 868)


def test_a4_a5_reduce_to_bilinear_row():
    # A4 with q = r^2 matches A3 with the square root and the same m
    assert subdegrees_of(ClassSpec("A4", (4, 3))) == subdegrees_of(ClassSpec("A3", (2, 3)))
    assert subdegrees_of(ClassSpec("A4", (9, 2))) == subdegrees_of(ClassSpec("A3", (3, 2)))
    # A5 with q = r^3 lives on q^2 = r^6 points, i.e. the m = 3 row
    trip = subdegrees_of(ClassSpec("A5", (8,)))
    assert trip == subdegrees_of(ClassSpec("A3", (2, 3)))
    assert trip.n == 8 ** 2


def test_a6_parity_switch():
    even = subdegrees_of(ClassSpec("A6", (2, 2)))
    assert even == subdegrees_of(ClassSpec("A7", (2, 2, "+")))
    odd = subdegrees_of(ClassSpec("A6", (2, 3)))
    assert odd == subdegrees_of(ClassSpec("A7", (2, 3, "-")))
    assert (odd.m1, odd.m2) == (27, 36)


def test_subdegree_sum_invariant():
    specs = [ClassSpec("A3", (q, m)) for q, m in product([2, 3, 4, 5], [2, 3])]
    specs += [ClassSpec("A7", (q, m, e)) for q, m, e in product([2, 3, 4], [2, 3], "+-")]
    specs += [ClassSpec("A8", (q,)) for q in [2, 3, 4]]
    specs += [ClassSpec("A9", (q,)) for q in [2, 3]]
    specs += [ClassSpec("A10", (q,)) for q in [2, 3]]
    specs += [ClassSpec("A11", (q,)) for q in [8, 32]]
    specs += [ClassSpec("A1_Paley", (q,)) for q in [5, 9, 13, 25]]
    for spec in specs:
        trip = subdegrees_of(spec)
        assert trip.m1 + trip.m2 == trip.n - 1
        assert trip.m1 >= 1


def test_parameter_validation():
    with pytest.raises(ValueError):
        subdegrees_of(ClassSpec("A1_Paley", (7,)))
    with pytest.raises(ValueError):
        subdegrees_of(ClassSpec("A11", (16,)))
    with pytest.raises(ValueError):
        subdegrees_of(ClassSpec("A1_VLS", (2, 7, 1)))
    with pytest.raises(ValueError):
        ClassSpec("A12", ())
    with pytest.raises(ValueError):
        ParameterTriple.of(12, 5, 6)
    with pytest.raises(ValueError):
        ParameterTriple(2, 4, 9, 6)


def test_family_subdegrees():
    assert family_subdegrees("hamming2", 6) == (36, 10, 25)
    assert family_subdegrees("vsz", 8) == (4096, 455, 3640)
    assert family_subdegrees("vls", 2, 5, 1) == (16, 3, 12)
    assert family_subdegrees("peisert", 7, 1) == (49, 24, 24)


def test_wreath_rank():
    assert wreath_rank(2, 2) == 3
    assert wreath_rank(1, 7) == 1
    assert wreath_rank(5, 2) == 15
    assert wreath_rank(2, 3) == 4


def test_gl_and_sz_orders():
    assert gl_order(2, 2) == 6
    assert gl_order(2, 3) == 48
    assert gl_order(3, 2) == 168
    assert gl_order(5, 2) == 9999360
    assert sz_order(8) == 29120


def test_orthogonal_orders_against_enumeration():
    # oracle: exhaustive search over all 4x4 matrices over GF(2)
    assert brute_isometries_gf2_dim4("-") == 120
    assert brute_isometries_gf2_dim4("+") == 72
    assert orthogonal_order("-", 2, 2) == 120
    assert orthogonal_order("+", 2, 2) == 72


def test_closure_orders():
    assert closure_order("i", 2, 3) == 48
    assert closure_order("i", 3, 2) == 72
    assert closure_order("ii", 3) == 72
    assert closure_order("iv_b", 2, 2) == 1152
    assert closure_order("iv_c", "-", 2, 2) == 16 * 120
    assert closure_order("iv_c", "+", 2, 2) == 16 * 72
    assert closure_order("iv_d", 2) == 1024 * 9999360
    assert closure_order("iv_f", 8) == 4096 * 7 * 29120 * 3
    with pytest.raises(NotComputed):
        closure_order("iii")
    with pytest.raises(NotComputed):
        closure_order("iv_e", 2)
    with pytest.raises(ValueError):
        closure_order("nonsense")


def test_bilinear_and_polar_plus_orders_agree():
    # H_q(2,2) and the plus-type polar graph are isomorphic, so the two
    # closed-form orders must coincide
    for q in [2, 3, 4, 5]:
        assert closure_order("iv_b", q, 2) == closure_order("iv_c", "+", 2, q)


def test_tables_emitters():
    data = tables_json()
    assert len(data["class_a"]) == 11
    assert len(data["one_dimensional"]) == 3
    text = tables_text()
    assert "A11" in text and "Peisert" in text
