import time

import numpy as np
import pytest

from rank3kit.errors import BudgetExceeded, CapExceeded
from rank3kit.gf import field_make
from rank3kit.graphs import (DenseGraph, affine_polar, bilinear_forms,
                             complement, hamming2, paley, peisert,
                             van_lint_schrijver)
from rank3kit.iso import (INDETERMINATE, AutResult, PairColoring,
                          automorphisms, certify_rank3, is_isomorphic,
                          wl2_closure)
from rank3kit.permgrp import (affine_1dim_group, cyclic_group, dihedral_group,
                              imprimitive_wreath, orbitals, product_wreath,
                              two_closure)


def cycle_graph(n):
    adj = np.zeros((n, n), dtype=bool)
    for i in range(n):
        adj[i, (i + 1) % n] = adj[(i + 1) % n, i] = True
    return DenseGraph.from_dense(adj)


def path_graph(n):
    adj = np.zeros((n, n), dtype=bool)
    for i in range(n - 1):
        adj[i, i + 1] = adj[i + 1, i] = True
    return DenseGraph.from_dense(adj)


# -- coherent refinement -----------------------------------------------------

def test_wl2_class_counts():
    assert wl2_closure(paley(13)).class_count == 3
    complete = DenseGraph.from_dense(~np.eye(6, dtype=bool))
    assert wl2_closure(complete).class_count == 2
    # oracle: orbit count of the full automorphism group on ordered pairs
    c4 = cycle_graph(4)
    aut_rank = orbitals(automorphisms(c4).group).rank
    assert aut_rank == 3
    assert wl2_closure(c4).class_count == aut_rank
    c6 = cycle_graph(6)
    assert orbitals(automorphisms(c6).group).rank == 4
    assert wl2_closure(c6).class_count == 4


def test_wl2_rank3_families_give_three_classes():
    for g in [paley(13), hamming2(4), bilinear_forms(2, 2),
              affine_polar("-", 2, 2), van_lint_schrijver(2, 3, 2),
              peisert(3, 1)]:
        assert wl2_closure(g).class_count == 3


def test_wl2_diagonal_separate():
    w = wl2_closure(paley(13))
    diag = set(np.diag(w.color).tolist())
    off = set(w.color[~np.eye(13, dtype=bool)].tolist())
    assert diag.isdisjoint(off)


def test_wl2_never_exceeds_group_rank():
    # the closure partition is coarser than any group's orbital partition
    for G in [dihedral_group(4), imprimitive_wreath(2, 3), product_wreath(3, 2)]:
        dec = orbitals(G)
        w = wl2_closure(PairColoring(G.degree, dec.color, dec.rank))
        assert w.class_count <= dec.rank


# -- automorphism groups ------------------------------------------------------

def test_aut_orders_small():
    assert automorphisms(hamming2(3)).order == 72
    assert automorphisms(hamming2(4)).order == 1152
    assert automorphisms(bilinear_forms(2, 2)).order == 1152
    assert automorphisms(affine_polar("-", 2, 2)).order == 1920
    assert automorphisms(paley(13)).order == 78
    assert automorphisms(paley(9)).order == 72
    assert automorphisms(cycle_graph(6)).order == 12
    assert automorphisms(path_graph(4)).order == 2


def test_aut_certificate_and_chain_agreement():
    res = automorphisms(paley(13))
    assert all(res.certificate)
    # driver order agrees with the Schreier-Sims order of the generators
    assert res.group.order() == res.order
    res2 = automorphisms(bilinear_forms(2, 2))
    assert res2.group.order() == res2.order


def test_aut_generators_preserve_adjacency():
    g = affine_polar("-", 2, 2)
    dense = g.dense()
    res = automorphisms(g)
    for perm in res.group.generators:
        assert (dense[np.ix_(perm, perm)] == dense).all()


def test_aut_order_invariant_under_relabeling():
    g = paley(13)
    base = automorphisms(g).order
    for seed in [1, 2, 3]:
        rng = np.random.default_rng(seed)
        perm = rng.permutation(13)
        assert automorphisms(g.relabel(perm)).order == base


def test_aut_of_pair_coloring_directed():
    # a regular cyclic group of prime degree is its own 2-closure; the
    # orbital coloring is directed, so this exercises the column counts
    dec = orbitals(cyclic_group(5))
    res = automorphisms(PairColoring(5, dec.color, dec.rank))
    assert res.order == 5


def test_aut_cap_and_budget():
    with pytest.raises(CapExceeded):
        automorphisms(hamming2(4), cap=10)
    with pytest.raises(BudgetExceeded):
        automorphisms(hamming2(8), deadline=time.monotonic() - 1)


# -- rank-3 certification ------------------------------------------------------

def test_certify_rank3():
    assert certify_rank3(affine_polar("-", 2, 2))
    assert certify_rank3(hamming2(3))
    assert certify_rank3(hamming2(2))  # the 4-cycle is the s=2 Hamming graph
    assert not certify_rank3(cycle_graph(6))
    assert not certify_rank3(path_graph(4))


# -- isomorphism ---------------------------------------------------------------

def test_isomorphic_pairs():
    m = is_isomorphic(bilinear_forms(2, 2), affine_polar("+", 2, 2))
    assert m is not None
    a, b = bilinear_forms(2, 2).dense(), affine_polar("+", 2, 2).dense()
    assert (b[np.ix_(m, m)] == a).all()
    assert is_isomorphic(paley(9), hamming2(3)) is not None
    assert is_isomorphic(peisert(3, 1), paley(9)) is not None
    assert is_isomorphic(complement(paley(13)), paley(13)) is not None


def test_non_isomorphic_pairs():
    assert is_isomorphic(affine_polar("-", 2, 2), affine_polar("+", 2, 2)) is None
    assert is_isomorphic(cycle_graph(6), path_graph(6)) is None
    # same degree sequence, different structure
    two_triangles = DenseGraph.from_dense(np.kron(np.eye(2, dtype=bool),
                                                  ~np.eye(3, dtype=bool)))
    assert is_isomorphic(cycle_graph(6), two_triangles) is None


def test_isomorphic_symmetry():
    pairs = [(paley(9), hamming2(3)), (cycle_graph(5), paley(5)),
             (cycle_graph(6), two := cycle_graph(6))]
    for a, b in pairs:
        assert (is_isomorphic(a, b) is None) == (is_isomorphic(b, a) is None)


def test_isomorphic_budget():
    out = is_isomorphic(hamming2(5), hamming2(5),
                        deadline=time.monotonic() - 1)
    assert out is INDETERMINATE
    assert not out


# -- 2-closures ---------------------------------------------------------------

def test_two_closure_wreaths():
    assert two_closure(imprimitive_wreath(2, 3)).order() == 48
    assert two_closure(product_wreath(3, 2)).order() == 72


def test_two_closure_paley13():
    f13 = field_make(13, 1)
    G = affine_1dim_group(f13, 2, False)
    closure = two_closure(G)
    assert closure.order() == 78
    agl1 = affine_1dim_group(f13, 1, True)
    assert agl1.order() == 156
    for gen in closure.generators:
        assert agl1.contains(gen)


def test_two_closure_idempotent():
    G = affine_1dim_group(field_make(13, 1), 2, False)
    c1 = two_closure(G)
    c2 = two_closure(c1)
    assert c1.order() == c2.order()
    assert orbitals(c1).same_partition(orbitals(c2))


def test_two_closure_cyclic5():
    assert two_closure(cyclic_group(5)).order() == 5


def test_two_closure_preserves_orbitals():
    G = imprimitive_wreath(2, 3)
    dec = orbitals(G)
    closure = two_closure(G)
    assert orbitals(closure).same_partition(dec)
    assert closure.order() >= G.order()
