"""Pair colorings, coherent refinement, automorphisms and isomorphism.

Three layers:

* wl2_closure computes the coarsest coherent refinement of a pair
  coloring (counting, for every ordered pair, the colors of two-step
  walks through every midpoint) -- the classical 2-dimensional
  refinement.  Its class count is a lower bound for the rank of any
  group acting on the input.

* automorphisms computes the full color-preserving group by
  individualization-refinement backtracking.  A reference path fixes
  vertices one target cell at a time until the partition is discrete;
  the group is then assembled bottom-up as a stabilizer chain: at each
  level every candidate image of the base vertex outside the known
  orbit is either extended to an automorphism by a depth-first search
  or proved impossible, so the returned group is exact, not a
  subgroup.  Equitable 1-dimensional refinement is the pruning step,
  and the search is deterministic (smallest non-singleton cell, lowest
  id first; candidates in vertex order).

* is_isomorphic runs the same matched-path search between two graphs,
  pruned by the automorphism group of the second one, and returns a
  verified bijection, a definite negative, or INDETERMINATE on budget
  exhaustion.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import AUT_CAP, ORBITAL_CAP, WL_CAP, BudgetExceeded, check_cap
from .graphs import DenseGraph
from .permgrp import GeneratedGroup


class _Indeterminate:
    """Singleton: a search gave up within its budget (not a negative)."""

    def __repr__(self):
        return "INDETERMINATE"

    def __bool__(self):
        return False


INDETERMINATE = _Indeterminate()


@dataclass
class PairColoring:
    """A coloring of ordered vertex pairs; ids are dense and canonical
    (numbered by first occurrence in row-major order)."""

    n: int
    color: np.ndarray
    class_count: int

    def __post_init__(self):
        self.color = np.asarray(self.color, dtype=np.int32)
        if self.color.shape != (self.n, self.n):
            raise ValueError("color matrix must be n x n")


@dataclass
class AutResult:
    """Automorphism group with its order and per-generator certificates."""

    group: GeneratedGroup
    order: int
    certificate: list


def _pair_matrix(start) -> tuple[np.ndarray, int]:
    """Canonical pair-color matrix for a graph or pair coloring."""
    if isinstance(start, DenseGraph):
        adj = start.dense()
        mat = np.where(np.eye(start.n, dtype=bool), 2, adj.astype(np.int16))
        out, count = kernels.canonical_relabel(mat)
        return out, count
    if isinstance(start, PairColoring):
        out, count = kernels.canonical_relabel(start.color)
        return out, count
    raise TypeError("expected a DenseGraph or PairColoring")


def wl2_closure(start, cap: int | None = None) -> PairColoring:
    """Coarsest coherent refinement of the input pair coloring."""
    mat, count = _pair_matrix(start)
    n = mat.shape[0]
    check_cap(n, cap, WL_CAP, "coherent refinement")
    while True:
        mat, new_count = kernels.wl2_round(mat, count)
        if new_count == count:
            return PairColoring(n, mat, count)
        count = new_count


# -- search engine ----------------------------------------------------------

class _SearchSpace:
    """Shared state for refinement search over one pair-color matrix."""

    def __init__(self, start):
        if isinstance(start, DenseGraph):
            self.E = start.dense().astype(np.int16)
            self.nE = 2
            diag = np.zeros(start.n, dtype=np.int32)
            init_count = 1
        elif isinstance(start, PairColoring):
            self.E, self.nE = kernels.canonical_relabel(start.color)
            self.E = self.E.astype(np.int16)
            diag, init_count = kernels.canonical_relabel(self.E.diagonal())
            diag = diag.ravel().astype(np.int32)
        else:
            raise TypeError("expected a DenseGraph or PairColoring")
        self.n = self.E.shape[0]
        self.directed = bool((self.E != self.E.T).any())
        self.init_colors = diag
        self.init_count = init_count

    def refine(self, colors, ncolors, active=None):
        """Returns (colors, ncolors, trace); the trace hashes the
        label-invariant split events of this refinement run."""
        return kernels.refine_partition(self.E, colors, ncolors,
                                        active=active, directed=self.directed)

    def individualize_refine(self, colors, ncolors, v):
        out = colors.copy()
        old = int(out[v])
        out[v] = ncolors
        return self.refine(out, ncolors + 1, active=[ncolors, old])

    def preserves(self, g) -> bool:
        return bool((self.E[np.ix_(g, g)] == self.E).all())


def _shape(colors, ncolors) -> bytes:
    return np.bincount(colors, minlength=ncolors).astype(np.int64).tobytes()


def _target_cell(colors, ncolors) -> int:
    sizes = np.bincount(colors, minlength=ncolors)
    big = np.flatnonzero(sizes >= 2)
    return int(big[np.argmin(sizes[big])])


def _vertex_of_color(colors) -> np.ndarray:
    out = np.empty(len(colors), dtype=np.int32)
    out[colors] = np.arange(len(colors), dtype=np.int32)
    return out


def _check_deadline(deadline):
    if deadline is not None and time.monotonic() > deadline:
        raise BudgetExceeded("search budget exhausted")


class _ReferencePath:
    """The leftmost root-to-leaf path: states, base vertices, and the
    per-depth node invariant (cell-size vector plus refinement trace)."""

    def __init__(self, space: _SearchSpace):
        colors, nc, trace = space.refine(space.init_colors.copy(),
                                         space.init_count)
        self.states = [(colors, nc)]
        self.invariants = [(_shape(colors, nc), trace)]
        self.base = []
        self.cells = []
        while nc < space.n:
            tc = _target_cell(colors, nc)
            members = np.flatnonzero(colors == tc)
            b = int(members[0])
            self.base.append(b)
            self.cells.append(tc)
            colors, nc, trace = space.individualize_refine(colors, nc, b)
            self.states.append((colors, nc))
            self.invariants.append((_shape(colors, nc), trace))
        self.leaf_vertex = _vertex_of_color(self.states[-1][0])

    @property
    def depth(self):
        return len(self.base)


def _node_invariant(child):
    colors, nc, trace = child
    return _shape(colors, nc), trace


def _search_leaf(space, ref, state, depth, on_leaf, deadline):
    """DFS below ``state`` (at ``depth`` individualizations) matching the
    reference invariants; calls on_leaf(leaf_colors), stops on truthy."""
    _check_deadline(deadline)
    colors, nc = state
    if nc == space.n:
        return on_leaf(colors)
    tc = _target_cell(colors, nc)
    for u in np.flatnonzero(colors == tc):
        child = space.individualize_refine(colors, nc, int(u))
        if _node_invariant(child) != ref.invariants[depth + 1]:
            continue
        got = _search_leaf(space, ref, child[:2], depth + 1, on_leaf, deadline)
        if got is not None:
            return got
    return None


def _point_orbit(n, gens, pt) -> set:
    seen = {pt}
    frontier = [pt]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                t = int(g[p])
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    return seen


def automorphisms(start, cap: int | None = None,
                  deadline: float | None = None) -> AutResult:
    """Full color-preserving automorphism group, exact order.

    Raises BudgetExceeded if a deadline is given and exhausted.
    """
    space = _SearchSpace(start)
    check_cap(space.n, cap, AUT_CAP, "automorphism search")
    ref = _ReferencePath(space)
    n, L = space.n, ref.depth
    gens_by_level: list[list] = [[] for _ in range(L)]

    def on_leaf(leaf_colors):
        g = np.empty(n, dtype=np.int32)
        g[ref.leaf_vertex] = _vertex_of_color(leaf_colors)
        return g if space.preserves(g) else None

    for lvl in range(L - 1, -1, -1):
        colors, nc = ref.states[lvl]
        b = ref.base[lvl]
        members = np.flatnonzero(colors == ref.cells[lvl])
        stab_gens = [g for js in gens_by_level[lvl:] for g in js]
        orbit = _point_orbit(n, stab_gens, b)
        for c in members:
            c = int(c)
            if c == b or c in orbit:
                continue
            _check_deadline(deadline)
            child = space.individualize_refine(colors, nc, c)
            g = None
            if _node_invariant(child) == ref.invariants[lvl + 1]:
                g = _search_leaf(space, ref, child[:2], lvl + 1, on_leaf, deadline)
            if g is not None:
                gens_by_level[lvl].append(g)
                stab_gens.append(g)
                orbit = _point_orbit(n, stab_gens, b)

    order = 1
    all_gens = []
    for lvl in range(L):
        stab_gens = [g for js in gens_by_level[lvl:] for g in js]
        order *= len(_point_orbit(n, stab_gens, ref.base[lvl]))
        all_gens.extend(gens_by_level[lvl])
    if not all_gens:
        all_gens = []
    certificate = [bool(space.preserves(g)) for g in all_gens]
    if not all(certificate):
        raise AssertionError("emitted generator fails color preservation")
    group = GeneratedGroup(n, all_gens)
    return AutResult(group, order, certificate)


def certify_rank3(g: DenseGraph, cap: int | None = None,
                  deadline: float | None = None) -> bool:
    """True iff the coherent closure has exactly 3 classes and the
    automorphism group has exactly 3 orbits on ordered pairs.

    The second condition makes the certificate exact: the closure class
    count never exceeds the orbit count, so together they pin the rank.
    """
    if wl2_closure(g, cap=cap).class_count != 3:
        return False
    aut = automorphisms(g, cap=cap, deadline=deadline)
    check_cap(g.n, cap, ORBITAL_CAP, "orbital computation")
    _, count = kernels.pair_orbits(aut.group.generators, g.n)
    return count == 3


def is_isomorphic(a: DenseGraph, b: DenseGraph, cap: int | None = None,
                  deadline: float | None = None):
    """A verified vertex bijection a -> b, None, or INDETERMINATE.

    The bijection g satisfies: (i, j) is an edge of a iff (g[i], g[j])
    is an edge of b (checked exhaustively both ways).  None is a
    definite negative.
    """
    if a.n != b.n:
        return None
    if sorted(a.degrees().tolist()) != sorted(b.degrees().tolist()):
        return None
    try:
        if a.n <= 1500:  # the coherent pre-filter is cubic; skip when large
            wa = wl2_closure(a, cap=cap)
            wb = wl2_closure(b, cap=cap)
            if wa.class_count != wb.class_count:
                return None
            if (sorted(np.bincount(wa.color.ravel()).tolist())
                    != sorted(np.bincount(wb.color.ravel()).tolist())):
                return None
        aut_b = automorphisms(b, cap=cap, deadline=deadline)
        aut_a = automorphisms(a, cap=cap, deadline=deadline)
        if aut_a.order != aut_b.order:
            return None
        return _match_graphs(a, b, aut_b, cap, deadline)
    except BudgetExceeded:
        return INDETERMINATE


def _match_graphs(a, b, aut_b, cap, deadline):
    space_a = _SearchSpace(a)
    space_b = _SearchSpace(b)
    ref = _ReferencePath(space_a)
    n = a.n
    root_b = space_b.refine(space_b.init_colors.copy(), space_b.init_count)
    if _node_invariant(root_b) != ref.invariants[0]:
        return None

    def on_leaf(leaf_colors):
        g = np.empty(n, dtype=np.int32)
        g[ref.leaf_vertex] = _vertex_of_color(leaf_colors)
        ok = (space_b.E[np.ix_(g, g)] == space_a.E).all()
        return g.tolist() if ok else None

    if ref.depth == 0:
        return on_leaf(root_b[0])
    colors, nc = root_b[:2]
    tc = _target_cell(colors, nc)
    # candidates for the image of a's first base vertex, modulo Aut(b)
    seen: set[int] = set()
    for u in np.flatnonzero(colors == tc):
        u = int(u)
        if u in seen:
            continue
        seen |= _point_orbit(n, aut_b.group.generators, u)
        child = space_b.individualize_refine(colors, nc, u)
        if _node_invariant(child) != ref.invariants[1]:
            continue
        got = _search_leaf(space_b, ref, child[:2], 1, on_leaf, deadline)
        if got is not None:
            return got
    return None
