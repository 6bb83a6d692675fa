import math
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rank3kit.gf import (FieldTable, VectorSpace, factorize, field_for_order,
                         field_make, is_prime, prime_power)


def brute_irreducible_quadratics(p):
    """Monic quadratics over GF(p) with no root (degree 2: root-free
    is equivalent to irreducible)."""
    out = []
    for c0, c1 in product(range(p), repeat=2):
        if all((x * x + c1 * x + c0) % p != 0 for x in range(p)):
            out.append((c0, c1, 1))
    return out


def test_prime_field_trivial():
    f = field_make(2, 1)
    assert f.q == 2
    assert f.modulus == (0, 1)
    assert f.add(1, 1) == 0


def test_gf4_modulus_unique():
    # x^2 + x + 1 is the only irreducible quadratic over GF(2)
    assert brute_irreducible_quadratics(2) == [(1, 1, 1)]
    f = field_make(2, 2)
    assert f.modulus == (1, 1, 1)


def test_gf9_modulus_is_least_irreducible():
    # oracle: enumerate monic quadratics over GF(3), root search
    irr = brute_irreducible_quadratics(3)
    assert irr[0] == (1, 0, 1)  # x^2 + 1 comes first in little-endian lex order
    f = field_make(3, 2)
    assert f.modulus == (1, 0, 1)
    assert f.q == 9


def test_gf9_primitive_order_eight():
    f = field_make(3, 2)
    # oracle: repeated multiplication
    x, seen = 1, []
    for _ in range(8):
        x = f._mul_raw(x, f.g)
        seen.append(x)
    assert seen[-1] == 1
    assert len(set(seen)) == 8
    assert f.pow(f.g, 8) == 1
    assert all(f.pow(f.g, e) != 1 for e in range(1, 8))


def test_scalar_ops_small_fields():
    f5 = field_make(5, 1)
    assert f5.mul(2, 3) == 1
    f4 = field_make(2, 2)
    assert all(f4.add(x, x) == 0 for x in f4.elements())


def test_field_axioms_exhaustive():
    for p, k in [(2, 2), (3, 1), (3, 2), (2, 3)]:
        f = field_make(p, k)
        els = list(f.elements())
        for a in els:
            assert f.add(a, 0) == a
            assert f.mul(a, 1) == a
            if a:
                assert f.mul(a, f.inv(a)) == 1
        for a in els:
            for b in els:
                assert f.add(a, b) == f.add(b, a)
                assert f.mul(a, b) == f.mul(b, a)
                assert f.sub(f.add(a, b), b) == a
        for a in els:
            for b in els:
                for c in els:
                    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))


def test_frobenius_is_automorphism():
    for p, k in [(2, 2), (2, 3), (3, 2), (2, 4)]:
        f = field_make(p, k)
        for j in range(f.k):
            img = [f.frobenius(x, j) for x in f.elements()]
            assert sorted(img) == list(f.elements())  # bijection
            for a in f.elements():
                for b in f.elements():
                    assert f.frobenius(f.add(a, b), j) == f.add(img[a], img[b])
                    assert f.frobenius(f.mul(a, b), j) == f.mul(img[a], img[b])
        # frobenius twice is the identity when k = 2
        if f.k == 2:
            assert all(f.frobenius(f.frobenius(x, 1), 1) == x for x in f.elements())
        assert all(f.frobenius(x, 0) == x for x in f.elements())


def test_gf8_frobenius_matches_square():
    f = field_make(2, 3)
    assert f.frobenius(f.g, 1) == f.pow(f.g, 2)


def test_squares_gf5():
    f = field_make(5, 1)
    squares = {f.mul(x, x) for x in f.elements()}
    assert squares == {0, 1, 4}
    assert f.is_square(4)
    assert not f.is_square(2)


def test_square_counts():
    for q in [5, 9, 13, 8, 16]:
        f = field_for_order(q)
        nonzero_squares = {f.mul(x, x) for x in range(1, q)}
        got = [x for x in range(1, q) if f.is_square(x)]
        assert set(got) == nonzero_squares
        assert len(got) == (q - 1) // math.gcd(2, q - 1)
    # GF(13): exactly 6 nonzero squares, the Paley subdegree
    assert sum(field_make(13, 1).is_square(x) for x in range(1, 13)) == 6


def test_power_classes():
    f16 = field_make(2, 4)
    cls = [f16.power_class(x, 3) for x in range(1, 16)]
    # e = 3 splits the 15 nonzero elements into 3 classes of 5
    assert sorted(cls).count(0) == 5
    assert all(sorted(cls).count(c) == 5 for c in range(3))
    # class 0 really is the set of cubes
    cubes = {f16.pow(x, 3) for x in range(1, 16)}
    assert {x for x in range(1, 16) if f16.power_class(x, 3) == 0} == cubes
    assert f16.power_class(1, 3) == 0
    f9 = field_make(3, 2)
    assert f9.power_class(f9.g, 2) == 1


def test_power_class_errors():
    f = field_make(3, 2)
    with pytest.raises(ZeroDivisionError):
        f.power_class(0, 2)
    with pytest.raises(ValueError):
        f.power_class(1, 3)  # 3 does not divide 8


def test_field_make_errors():
    with pytest.raises(ValueError):
        field_make(4, 1)
    with pytest.raises(ValueError):
        field_make(2, 0)
    with pytest.raises(ZeroDivisionError):
        field_make(7, 1).inv(0)


def test_vector_indexing():
    f2 = field_make(2, 1)
    v4 = VectorSpace(f2, 4)
    assert v4.vec_index((0, 0, 0, 0)) == 0
    assert v4.vec_index((1, 0, 0, 0)) == 1
    assert v4.index_vec(1) == (1, 0, 0, 0)
    f3 = field_make(3, 1)
    v2 = VectorSpace(f3, 2)
    assert v2.vec_index((2, 1)) == 5
    assert v2.index_vec(5) == (2, 1)
    with pytest.raises(ValueError):
        v2.index_vec(9)
    with pytest.raises(ValueError):
        v2.vec_index((3, 0))


@given(st.integers(min_value=0, max_value=728))
def test_vector_roundtrip(i):
    space = VectorSpace(field_make(3, 1), 6)
    assert space.vec_index(space.index_vec(i)) == i


def test_diff_row_matches_scalar():
    for q in [4, 5, 9]:
        f = field_for_order(q)
        space = VectorSpace(f, 2)
        for i in [0, 1, q, space.size - 1]:
            row = space.diff_row(i)
            vi = space.index_vec(i)
            for j in range(space.size):
                vj = space.index_vec(j)
                expected = space.vec_index([f.sub(a, b) for a, b in zip(vj, vi)])
                assert row[j] == expected


def test_pair_tables_consistent():
    f = field_make(3, 2)
    add, sub, mul = f.pair_tables()
    for a in f.elements():
        for b in f.elements():
            assert add[a, b] == f.add(a, b)
            assert sub[a, b] == f.sub(a, b)
            assert mul[a, b] == f.mul(a, b)


def test_number_helpers():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert factorize(360) == {2: 3, 3: 2, 5: 1}
    assert prime_power(729) == (3, 6)
    assert prime_power(12) is None
