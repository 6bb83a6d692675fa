"""Permutation groups given by generators.

Permutations are int32 NumPy arrays of images, acting on the right:
``x ^ g = g[x]`` and ``compose(g, h)`` means "g then h".  Groups are
held as generator lists; exact orders and membership come from a
deterministic Schreier-Sims stabilizer chain whose base points are
taken in increasing point order, so repeated runs give identical
chains.

Orbitals (orbits on ordered pairs) are computed by a breadth-first
closure over pairs; for a transitive group the subdegrees are the
sizes of the point-stabilizer orbits, read off row 0 of the pair
coloring.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import ORBITAL_CAP, check_cap
from .gf import FieldTable


# -- permutation helpers -------------------------------------------------

def identity_perm(n: int) -> np.ndarray:
    return np.arange(n, dtype=np.int32)


def is_identity(p: np.ndarray) -> bool:
    return bool((p == np.arange(len(p))).all())


def compose(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """a then b: (x^a)^b."""
    return b[a]


def inverse(a: np.ndarray) -> np.ndarray:
    inv = np.empty_like(a)
    inv[a] = np.arange(len(a), dtype=a.dtype)
    return inv


def perm_from_images(images) -> np.ndarray:
    p = np.asarray(images, dtype=np.int32)
    if sorted(p.tolist()) != list(range(len(p))):
        raise ValueError("not a permutation of 0..n-1")
    return p


def perm_from_cycles(n: int, cycles) -> np.ndarray:
    p = identity_perm(n)
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:]):
            p[a] = b
        if cyc:
            p[cyc[-1]] = cyc[0]
    return p


# -- stabilizer chain ----------------------------------------------------

class StabChain:
    """Deterministic Schreier-Sims stabilizer chain.

    Base points are chosen as the smallest point moved by the first
    generator that needs them (or taken from ``base_hint`` first), so
    the chain and hence the reported order are reproducible.
    """

    def __init__(self, degree: int, base_hint=()):
        self.degree = degree
        self.base: list[int] = []
        self.level_gens: list[list[np.ndarray]] = []
        self._sv: list[dict] = []          # per level: pt -> (prev, gen) or None at root
        self._orbit: list[list[int]] = []
        self._umemo: list[dict] = []
        self._hint = list(base_hint)

    def gens_at(self, i: int) -> list[np.ndarray]:
        out = []
        for j in range(i, len(self.base)):
            out.extend(self.level_gens[j])
        return out

    def _new_level(self, h: np.ndarray) -> None:
        b = None
        for cand in self._hint:
            if cand not in self.base and h[cand] != cand:
                b = cand
                break
        if b is None:
            moved = np.flatnonzero(h != np.arange(self.degree))
            b = int(moved[0])
        self.base.append(b)
        self.level_gens.append([])
        self._sv.append({b: None})
        self._orbit.append([b])
        self._umemo.append({b: identity_perm(self.degree)})

    def _rebuild_orbit(self, i: int) -> None:
        b = self.base[i]
        gens = self.gens_at(i)
        sv = {b: None}
        orbit = [b]
        head = 0
        while head < len(orbit):
            pt = orbit[head]
            head += 1
            for g in gens:
                t = int(g[pt])
                if t not in sv:
                    sv[t] = (pt, g)
                    orbit.append(t)
        self._sv[i] = sv
        self._orbit[i] = orbit
        self._umemo[i] = {b: identity_perm(self.degree)}

    def transversal(self, i: int, pt: int) -> np.ndarray:
        """Element u with base[i]^u = pt, composed along the Schreier tree."""
        memo = self._umemo[i]
        got = memo.get(pt)
        if got is not None:
            return got
        path = []
        cur = pt
        while cur not in memo:
            prev, g = self._sv[i][cur]
            path.append((cur, g))
            cur = prev
        u = memo[cur]
        for node, g in reversed(path):
            u = compose(u, g)
            memo[node] = u
        return memo[pt]

    def sift(self, h: np.ndarray, start: int = 0):
        """Reduce h through the chain; returns (residue, stuck_level)."""
        for i in range(start, len(self.base)):
            t = int(h[self.base[i]])
            if t == self.base[i]:
                continue
            if t not in self._sv[i]:
                return h, i
            h = compose(h, inverse(self.transversal(i, t)))
        return h, len(self.base)

    def contains(self, h: np.ndarray) -> bool:
        residue, _ = self.sift(np.asarray(h, dtype=np.int32))
        return is_identity(residue)

    def add_generator(self, g: np.ndarray) -> bool:
        h, lvl = self.sift(np.asarray(g, dtype=np.int32))
        if is_identity(h):
            return False
        if lvl == len(self.base):
            self._new_level(h)
        self.level_gens[lvl].append(h)
        # every level <= lvl now sees the new generator; reprocess them
        # bottom-up, restarting deeper whenever a pass installs a residue
        i = lvl
        while i >= 0:
            installed_at = self._process_level(i)
            i = installed_at if installed_at is not None else i - 1
        return True

    def _process_level(self, i: int):
        """One full Schreier pass at level i with the current generators.

        Returns the level where a non-trivial residue was installed (the
        pass aborts there), or None if the level is verified clean.
        """
        self._rebuild_orbit(i)
        gens = self.gens_at(i)
        for pt in self._orbit[i]:
            u = self.transversal(i, pt)
            for s in gens:
                target = int(s[pt])
                v = self.transversal(i, target)
                schreier = compose(compose(u, s), inverse(v))
                if is_identity(schreier):
                    continue
                h, lvl = self.sift(schreier, i + 1)
                if not is_identity(h):
                    if lvl == len(self.base):
                        self._new_level(h)
                    self.level_gens[lvl].append(h)
                    return lvl
        return None

    def order(self) -> int:
        n = 1
        for orb in self._orbit:
            n *= len(orb)
        return n


# -- generated groups -----------------------------------------------------

@dataclass
class GeneratedGroup:
    """A permutation group given by generators, with a lazy chain."""

    degree: int
    generators: list = field(default_factory=list)
    _chain: StabChain | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        gens = []
        for g in self.generators:
            p = np.asarray(g, dtype=np.int32)
            if len(p) != self.degree:
                raise ValueError("generator degree mismatch")
            if sorted(p.tolist()) != list(range(self.degree)):
                raise ValueError("generator is not a permutation")
            gens.append(p)
        self.generators = gens

    def chain(self) -> StabChain:
        if self._chain is None:
            c = StabChain(self.degree)
            for g in self.generators:
                c.add_generator(g)
            self._chain = c
        return self._chain

    def order(self) -> int:
        return self.chain().order()

    def contains(self, perm) -> bool:
        return self.chain().contains(np.asarray(perm, dtype=np.int32))

    def orbit_of(self, point: int) -> set:
        return orbit(self, point)

    def to_json(self) -> str:
        return json.dumps({"degree": self.degree,
                           "generators": [g.tolist() for g in self.generators]})

    @classmethod
    def from_json(cls, text: str) -> "GeneratedGroup":
        data = json.loads(text)
        return cls(data["degree"], [perm_from_images(g) for g in data["generators"]])


def orbit(G: GeneratedGroup, point: int) -> set:
    """The G-orbit of a point, by breadth-first closure."""
    if not 0 <= point < G.degree:
        raise ValueError("point out of range")
    seen = {point}
    frontier = [point]
    while frontier:
        nxt = []
        for pt in frontier:
            for g in G.generators:
                t = int(g[pt])
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    return seen


def group_order(G: GeneratedGroup) -> int:
    return G.order()


def is_transitive(G: GeneratedGroup) -> bool:
    return len(orbit(G, 0)) == G.degree if G.degree else True


@dataclass
class OrbitalDecomposition:
    """Orbits of a transitive group on ordered pairs.

    ``color[i, j]`` is the orbital id of the pair (i, j); ids number
    the orbitals by their first occurrence in row-major order.  The
    subdegrees are the row-0 class sizes without the diagonal class.
    """

    degree: int
    color: np.ndarray
    rank: int
    subdegrees: tuple

    def same_partition(self, other: "OrbitalDecomposition") -> bool:
        return self.rank == other.rank and bool((self.color == other.color).all())


def orbitals(G: GeneratedGroup, cap: int | None = None) -> OrbitalDecomposition:
    n = G.degree
    check_cap(n, cap, ORBITAL_CAP, "orbital computation")
    if not is_transitive(G):
        raise ValueError("orbitals requires a transitive group")
    flat, count = kernels.pair_orbits(G.generators, n)
    color = flat.reshape(n, n)
    diag = int(color[0, 0])
    row = color[0]
    sizes = np.bincount(row, minlength=count)
    subdeg = tuple(sorted(int(sizes[c]) for c in range(count)
                          if c != diag and sizes[c]))
    return OrbitalDecomposition(n, color, count, subdeg)


def rank_of(G: GeneratedGroup, cap: int | None = None) -> int:
    return orbitals(G, cap).rank


# -- standard constructions ----------------------------------------------

def symmetric_group(n: int) -> GeneratedGroup:
    if n < 1:
        raise ValueError("degree must be positive")
    gens = []
    if n >= 2:
        gens.append(perm_from_cycles(n, [[0, 1]]))
    if n >= 3:
        gens.append(perm_from_cycles(n, [list(range(n))]))
    return GeneratedGroup(n, gens)


def cyclic_group(n: int) -> GeneratedGroup:
    return GeneratedGroup(n, [perm_from_cycles(n, [list(range(n))])])


def dihedral_group(n: int) -> GeneratedGroup:
    """Dihedral group of order 2n acting on the n corners of a cycle."""
    rot = perm_from_cycles(n, [list(range(n))])
    refl = perm_from_images([(-i) % n for i in range(n)])
    return GeneratedGroup(n, [rot, refl])


def imprimitive_wreath(delta: int, x: int) -> GeneratedGroup:
    """Sym(delta) wr Sym(x) on delta*x points, blocks {block i} = {d + delta*i}."""
    if delta < 2 or x < 2:
        raise ValueError("both block size and block count must be >= 2")
    n = delta * x
    gens = []
    # Sym(delta) acting on block 0
    gens.append(perm_from_cycles(n, [[0, 1]]))
    if delta > 2:
        gens.append(perm_from_cycles(n, [list(range(delta))]))
    # Sym(x) permuting blocks
    swap = identity_perm(n)
    for d in range(delta):
        swap[d], swap[d + delta] = d + delta, d
    gens.append(swap)
    if x > 2:
        cyc = identity_perm(n)
        for i in range(x):
            j = (i + 1) % x
            for d in range(delta):
                cyc[d + delta * i] = d + delta * j
        gens.append(cyc)
    return GeneratedGroup(n, gens)


def product_wreath(delta: int, m: int, cap: int | None = None) -> GeneratedGroup:
    """Sym(delta) in product action with Sym(m) on delta^m points."""
    if delta < 2 or m < 2:
        raise ValueError("both alphabet size and coordinate count must be >= 2")
    n = delta ** m
    check_cap(n, cap, ORBITAL_CAP, "product action degree")
    digits = np.empty((n, m), dtype=np.int64)
    ar = np.arange(n, dtype=np.int64)
    for t in range(m):
        digits[:, t] = ar % delta
        ar //= delta
    weights = delta ** np.arange(m, dtype=np.int64)

    def from_digits(d):
        return (d * weights).sum(axis=1).astype(np.int32)

    gens = []
    for base_perm in _sym_gens(delta):
        d = digits.copy()
        d[:, 0] = base_perm[digits[:, 0]]
        gens.append(from_digits(d))
    swap = digits.copy()
    swap[:, [0, 1]] = digits[:, [1, 0]]
    gens.append(from_digits(swap))
    if m > 2:
        cyc = digits[:, list(range(1, m)) + [0]]
        gens.append(from_digits(cyc))
    return GeneratedGroup(n, gens)


def _sym_gens(n):
    out = [perm_from_cycles(n, [[0, 1]])]
    if n > 2:
        out.append(perm_from_cycles(n, [list(range(n))]))
    return out


def affine_1dim_group(fieldtab: FieldTable, mult_index: int,
                      with_frobenius: bool) -> GeneratedGroup:
    """The subgroup {x -> a x^(p^j) + b} of AGammaL_1(q) on q points.

    a runs over the index-``mult_index`` subgroup of the multiplicative
    group, b over the field, and j over [0, k) when ``with_frobenius``.
    """
    q = fieldtab.q
    if mult_index < 1 or (q - 1) % mult_index != 0:
        raise ValueError("mult_index must divide q - 1")
    translate = np.array([fieldtab.add(x, 1) for x in range(q)], dtype=np.int32)
    gens = [translate]
    if (q - 1) // mult_index > 1:
        a = fieldtab.pow(fieldtab.g, mult_index)
        gens.append(np.array([fieldtab.mul(a, x) for x in range(q)], dtype=np.int32))
    if with_frobenius and fieldtab.k > 1:
        gens.append(fieldtab.frobenius_table(1).astype(np.int32))
    return GeneratedGroup(q, gens)


def wreath_rank_check(G0: GeneratedGroup, m: int, cap: int | None = None):
    """Rank of G0 in product action with Sym(m): computed vs closed form.

    Returns (computed_rank, binomial(r + m - 1, m)) where r is the rank
    of G0; the two must agree.
    """
    import math

    if not is_transitive(G0):
        raise ValueError("base group must be transitive")
    r = orbitals(G0).rank
    big = _wreath_on_top(G0, m, cap)
    computed = orbitals(big, cap).rank
    return computed, math.comb(r + m - 1, m)


def _wreath_on_top(G0: GeneratedGroup, m: int, cap: int | None = None) -> GeneratedGroup:
    """G0 in product action with Sym(m) on degree^m points."""
    delta = G0.degree
    n = delta ** m
    check_cap(n, cap, ORBITAL_CAP, "product action degree")
    digits = np.empty((n, m), dtype=np.int64)
    ar = np.arange(n, dtype=np.int64)
    for t in range(m):
        digits[:, t] = ar % delta
        ar //= delta
    weights = delta ** np.arange(m, dtype=np.int64)

    def from_digits(d):
        return (d * weights).sum(axis=1).astype(np.int32)

    gens = []
    for g in G0.generators:
        d = digits.copy()
        d[:, 0] = g[digits[:, 0]]
        gens.append(from_digits(d))
    swap = digits.copy()
    swap[:, [0, 1]] = digits[:, [1, 0]]
    gens.append(from_digits(swap))
    if m > 2:
        gens.append(from_digits(digits[:, list(range(1, m)) + [0]]))
    return GeneratedGroup(n, gens)


def two_closure(G: GeneratedGroup, cap: int | None = None,
                deadline: float | None = None) -> GeneratedGroup:
    """The largest group with the same orbits on ordered pairs as G.

    Computed as the full color-preserving automorphism group of the
    orbital coloring; the result is checked to contain G and to have
    exactly the same orbital partition.
    """
    from . import iso
    from .errors import AUT_CAP

    check_cap(G.degree, cap, AUT_CAP, "2-closure")
    dec = orbitals(G)
    coloring = iso.PairColoring(G.degree, dec.color, dec.rank)
    aut = iso.automorphisms(coloring, cap=cap, deadline=deadline)
    closure = aut.group
    for g in G.generators:
        if not closure.contains(g):
            raise AssertionError("2-closure does not contain the input group")
    if not orbitals(closure).same_partition(dec):
        raise AssertionError("2-closure changed the orbital partition")
    return closure
