"""Dense constructions of the rank-3 graph families.

Every family here is a Cayley graph on the additive group of a vector
space GF(q)^d: two vertices are adjacent exactly when their difference
lies in a fixed symmetric connection set.  The connection sets are:

* hamming2(s)            -- differ in exactly one of two coordinates
* bilinear_forms(q, m)   -- 2 x m matrices whose difference has rank 1
* affine_polar(eps,m,q)  -- zeros of a non-degenerate quadratic form
* alternating_forms5(q)  -- 5 x 5 alternating matrices, difference rank 2
* suzuki_tits(q)         -- difference direction on the Suzuki-Tits ovoid
* paley / peisert / van_lint_schrijver -- multiplicative power classes

Adjacency is stored bit-packed, one row per vertex; vertices follow the
little-endian vector indexing of gf.VectorSpace, which keeps graph6
output stable across runs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import CONSTRUCT_CAP, check_cap
from .gf import FieldTable, VectorSpace, field_for_order, is_prime


@dataclass
class DenseGraph:
    """Simple graph on n vertices with bit-packed adjacency rows."""

    n: int
    bits: np.ndarray                      # (n, ceil(n/8)) uint8, row-major
    label: dict = field(default_factory=dict)
    _dense: np.ndarray | None = field(default=None, repr=False, compare=False)

    @classmethod
    def from_dense(cls, adj: np.ndarray, label: dict | None = None) -> "DenseGraph":
        adj = np.asarray(adj, dtype=bool)
        n = adj.shape[0]
        if adj.shape != (n, n):
            raise ValueError("adjacency must be square")
        if adj.diagonal().any():
            raise ValueError("loops are not allowed")
        if not (adj == adj.T).all():
            raise ValueError("adjacency must be symmetric")
        g = cls(n, np.packbits(adj, axis=1), dict(label or {}))
        g._dense = adj
        return g

    def dense(self) -> np.ndarray:
        if self._dense is None:
            self._dense = np.unpackbits(self.bits, axis=1, count=self.n).astype(bool)
        return self._dense

    def has_edge(self, i: int, j: int) -> bool:
        return bool((self.bits[i, j >> 3] >> (7 - (j & 7))) & 1)

    def degrees(self) -> np.ndarray:
        return np.bitwise_count(self.bits).sum(axis=1).astype(np.int64)

    def degree(self) -> int:
        degs = self.degrees()
        if degs.min() != degs.max():
            raise ValueError("graph is not regular")
        return int(degs[0])

    def edge_count(self) -> int:
        return int(self.degrees().sum()) // 2

    def edges(self):
        dense = self.dense()
        for i in range(self.n):
            for j in np.flatnonzero(dense[i, i + 1:]) + i + 1:
                yield i, int(j)

    def complement(self) -> "DenseGraph":
        adj = ~self.dense()
        np.fill_diagonal(adj, False)
        label = dict(self.label)
        label["family"] = "complement(%s)" % label.get("family", "?")
        return DenseGraph.from_dense(adj, label)

    def relabel(self, perm) -> "DenseGraph":
        """Rename vertex i to perm[i]."""
        g = np.asarray(perm)
        inv = np.empty_like(g)
        inv[g] = np.arange(self.n)
        adj = self.dense()[np.ix_(inv, inv)]
        return DenseGraph.from_dense(adj, dict(self.label))

    def __eq__(self, other):
        return (isinstance(other, DenseGraph) and self.n == other.n
                and bool((self.bits == other.bits).all()))

    def subdegree_pair(self) -> tuple[int, int]:
        """(degree, n - 1 - degree) sorted ascending, for a regular graph."""
        k = self.degree()
        return tuple(sorted((k, self.n - 1 - k)))

    def srg_params(self):
        """(n, k, lambda, mu) if strongly regular, else None."""
        k = self.degree()
        adj = self.dense()
        common = np.bitwise_count(self.bits[:, None, :] & self.bits[None, :, :]).sum(axis=2)
        lam_vals = np.unique(common[adj])
        off = ~adj
        np.fill_diagonal(off, False)
        mu_vals = np.unique(common[off])
        if len(lam_vals) != 1 or len(mu_vals) != 1:
            return None
        return self.n, k, int(lam_vals[0]), int(mu_vals[0])


def _check_symmetric_connection(space: VectorSpace, conn: np.ndarray) -> None:
    f = space.field
    if conn[0]:
        raise AssertionError("connection set contains 0")
    if f.p == 2:
        return
    neg_digit = _neg_digit_table(f)
    digs = space.digit_table()
    neg = np.zeros(space.size, dtype=np.int64)
    w = 1
    for t in range(space.dim):
        neg += neg_digit[digs[:, t]].astype(np.int64) * w
        w *= f.q
    if not (conn[neg] == conn).all():
        raise AssertionError("connection set is not symmetric under negation")


def _neg_digit_table(f: FieldTable) -> np.ndarray:
    return np.array([f.neg(x) for x in range(f.q)], dtype=np.int64)


def cayley_graph(space: VectorSpace, conn: np.ndarray, label: dict,
                 cap: int | None = None) -> DenseGraph:
    """Cayley graph of (GF(q)^d, +) with the given connection set."""
    n = space.size
    check_cap(n, cap, CONSTRUCT_CAP, "graph construction")
    conn = np.asarray(conn, dtype=bool)
    _check_symmetric_connection(space, conn)
    width = (n + 7) // 8
    bits = np.empty((n, width), dtype=np.uint8)
    if space.field.p == 2:
        ar = np.arange(n, dtype=np.int64)
        for i in range(n):
            bits[i] = np.packbits(conn[np.bitwise_xor(ar, i)])
    else:
        for i in range(n):
            bits[i] = np.packbits(conn[space.diff_row(i)])
    return DenseGraph(n, bits, label)


# -- Hamming ---------------------------------------------------------------

def hamming2(s: int, cap: int | None = None) -> DenseGraph:
    """Hamming graph on pairs over an s-letter alphabet: edge iff the
    two pairs agree in exactly one coordinate."""
    if s < 2:
        raise ValueError("alphabet must have at least 2 letters")
    n = s * s
    check_cap(n, cap, CONSTRUCT_CAP, "graph construction")
    ar = np.arange(n, dtype=np.int64)
    a, b = ar % s, ar // s
    width = (n + 7) // 8
    bits = np.empty((n, width), dtype=np.uint8)
    for i in range(n):
        row = (a == a[i]) ^ (b == b[i])
        bits[i] = np.packbits(row)
    return DenseGraph(n, bits, {"family": "hamming2", "s": s, "n": n})


# -- quadratic forms and affine polar graphs -------------------------------

@dataclass
class QuadraticForm:
    """kappa(x) = sum_{i <= j} coeffs[i][j] x_i x_j over GF(q)."""

    field: FieldTable
    dim: int
    coeffs: np.ndarray                    # (dim, dim) upper triangular
    type_sign: str                        # "+" or "-"

    def evaluate(self, v) -> int:
        f = self.field
        acc = 0
        for i in range(self.dim):
            if not v[i]:
                continue
            for j in range(i, self.dim):
                c = int(self.coeffs[i, j])
                if c and v[j]:
                    acc = f.add(acc, f.mul(c, f.mul(v[i], v[j])))
        return acc

    def values_on(self, space: VectorSpace) -> np.ndarray:
        """kappa over every vector index of the space, vectorized."""
        f = self.field
        _, _, mul = f.pair_tables()
        add, _, _ = f.pair_tables()
        digs = space.digit_table()
        vals = np.zeros(space.size, dtype=np.int64)
        for i in range(self.dim):
            for j in range(i, self.dim):
                c = int(self.coeffs[i, j])
                if not c:
                    continue
                term = mul[c, mul[digs[:, i], digs[:, j]]]
                vals = add[vals, term]
        return vals

    def bilinear_matrix(self) -> np.ndarray:
        """Gram matrix of f(x, y) = kappa(x+y) - kappa(x) - kappa(y)."""
        f = self.field
        d = self.dim
        B = np.zeros((d, d), dtype=np.int64)
        for i in range(d):
            for j in range(d):
                if i == j:
                    B[i, j] = f.mul(2 % f.p if f.k == 1 else f.add(1, 1),
                                    int(self.coeffs[i, i]))
                else:
                    B[i, j] = int(self.coeffs[min(i, j), max(i, j)])
        return B

    def is_nondegenerate(self) -> bool:
        return _matrix_rank(self.bilinear_matrix(), self.field) == self.dim

    def isotropic_nonzero_count(self, space: VectorSpace | None = None) -> int:
        space = space or VectorSpace(self.field, self.dim)
        vals = self.values_on(space)
        return int((vals == 0).sum()) - 1


def _matrix_rank(mat: np.ndarray, f: FieldTable) -> int:
    m = [[int(x) for x in row] for row in mat]
    rows, cols = len(m), len(m[0]) if len(m) else 0
    rank, r = 0, 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = f.inv(m[r][c])
        m[r] = [f.mul(inv, x) for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                factor = m[i][c]
                m[i] = [f.sub(x, f.mul(factor, y)) for x, y in zip(m[i], m[r])]
        r += 1
        rank += 1
        if r == rows:
            break
    return rank


def _least_anisotropic_b(f: FieldTable) -> int:
    """Least b with x^2 + xy + b y^2 anisotropic (no root of t^2+t+b)."""
    for b in range(f.q):
        if all(f.add(f.add(f.mul(t, t), t), b) != 0 for t in range(f.q)):
            return b
    raise AssertionError("no anisotropic binary form found")


def standard_form(eps: str, m: int, fieldtab: FieldTable) -> QuadraticForm:
    """Hyperbolic form for "+"; hyperbolic part plus an anisotropic
    binary tail x^2 + xy + b y^2 for "-", with the least valid b."""
    if eps not in ("+", "-"):
        raise ValueError("type must be '+' or '-'")
    if m < 2:
        raise ValueError("m must be at least 2")
    d = 2 * m
    coeffs = np.zeros((d, d), dtype=np.int64)
    pairs = m if eps == "+" else m - 1
    for t in range(pairs):
        coeffs[2 * t, 2 * t + 1] = 1
    if eps == "-":
        b = _least_anisotropic_b(fieldtab)
        coeffs[d - 2, d - 2] = 1
        coeffs[d - 2, d - 1] = 1
        coeffs[d - 1, d - 1] = b
    return QuadraticForm(fieldtab, d, coeffs, eps)


def affine_polar(eps: str, m: int, q: int, cap: int | None = None) -> DenseGraph:
    """Vertices GF(q)^2m; u ~ v iff the quadratic form vanishes on u - v."""
    f = field_for_order(q)
    check_cap(q ** (2 * m), cap, CONSTRUCT_CAP, "graph construction")
    form = standard_form(eps, m, f)
    space = VectorSpace(f, 2 * m)
    vals = form.values_on(space)
    conn = vals == 0
    conn[0] = False
    label = {"family": "polar", "eps": eps, "m": m, "q": q,
             "n": space.size, "field": f.label()}
    return cayley_graph(space, conn, label, cap)


# -- bilinear and alternating forms ---------------------------------------

def bilinear_forms(q: int, m: int, cap: int | None = None) -> DenseGraph:
    """Vertices are 2 x m matrices over GF(q); edges join matrices whose
    difference has rank 1."""
    if m < 2:
        raise ValueError("m must be at least 2")
    f = field_for_order(q)
    check_cap(q ** (2 * m), cap, CONSTRUCT_CAP, "graph construction")
    space = VectorSpace(f, 2 * m)
    digs = space.digit_table()
    top, bot = digs[:, :m], digs[:, m:]
    _, _, mul = f.pair_tables()
    rank_le1 = np.ones(space.size, dtype=bool)
    for c1 in range(m):
        for c2 in range(c1 + 1, m):
            minor_l = mul[top[:, c1], bot[:, c2]]
            minor_r = mul[top[:, c2], bot[:, c1]]
            rank_le1 &= minor_l == minor_r
    conn = rank_le1.copy()
    conn[0] = False
    label = {"family": "bilinear", "q": q, "m": m, "n": space.size,
             "field": f.label()}
    return cayley_graph(space, conn, label, cap)


_ALT5_SLOTS = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2),
               (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]


def alternating_forms5(q: int, cap: int | None = None) -> DenseGraph:
    """Vertices are 5 x 5 alternating matrices over GF(q); edges join
    matrices whose difference has rank 2."""
    f = field_for_order(q)
    n = q ** 10
    check_cap(n, cap, CONSTRUCT_CAP, "graph construction")
    space = VectorSpace(f, 10)
    conn = np.zeros(n, dtype=bool)
    for idx in range(1, n):
        v = space.index_vec(idx)
        mat = np.zeros((5, 5), dtype=np.int64)
        for t, (i, j) in enumerate(_ALT5_SLOTS):
            mat[i, j] = v[t]
            mat[j, i] = f.neg(v[t])
        conn[idx] = _matrix_rank(mat, f) == 2
    label = {"family": "altforms5", "q": q, "n": n, "field": f.label()}
    return cayley_graph(space, conn, label, cap)


# -- Suzuki-Tits ovoid graph ------------------------------------------------

def suzuki_tits(q: int, cap: int | None = None) -> DenseGraph:
    """Vertices GF(q)^4, q = 2^(2e+1); u ~ v iff the projective direction
    of u - v lies on the Suzuki-Tits ovoid.

    The ovoid is the point (0,0,1,0) together with all (x,y,z,1) with
    z = xy + x^2 x^sigma + y^sigma, where sigma(x) = x^(2^(e+1)); it has
    q^2 + 1 points, so the graph is (q^2+1)(q-1)-regular.
    """
    from .gf import prime_power

    pp = prime_power(q)
    if pp is None or pp[0] != 2 or pp[1] % 2 == 0 or pp[1] < 3:
        raise ValueError("q must be 2^(2e+1) with e >= 1")
    e = (pp[1] - 1) // 2
    n = q ** 4
    check_cap(n, cap, CONSTRUCT_CAP, "graph construction")
    f = field_for_order(q)
    sigma = f.frobenius_table(e + 1)
    space = VectorSpace(f, 4)
    conn = np.zeros(n, dtype=bool)
    ovoid_directions = 0
    for idx in range(1, n):
        x, y, z, w = space.index_vec(idx)
        if w == 0:
            on = x == 0 and y == 0 and z != 0
            # only count the normalized representative once per direction
            if on and z == 1:
                ovoid_directions += 1
        else:
            t = f.inv(w)
            X, Y, Z = f.mul(x, t), f.mul(y, t), f.mul(z, t)
            rhs = f.add(f.mul(X, Y),
                        f.add(f.mul(f.mul(X, X), int(sigma[X])), int(sigma[Y])))
            on = Z == rhs
            if on and w == 1:
                ovoid_directions += 1
        conn[idx] = on
    if ovoid_directions != q * q + 1:
        raise AssertionError("ovoid has %d points, expected q^2+1" % ovoid_directions)
    label = {"family": "vsz", "q": q, "n": n, "field": f.label()}
    return cayley_graph(space, conn, label, cap)


# -- one-dimensional families ----------------------------------------------

def paley(q: int, cap: int | None = None) -> DenseGraph:
    """Vertices GF(q); u ~ v iff u - v is a nonzero square (q = 1 mod 4)."""
    if q % 4 != 1:
        raise ValueError("Paley graphs need q = 1 (mod 4)")
    f = field_for_order(q)
    check_cap(q, cap, CONSTRUCT_CAP, "graph construction")
    space = VectorSpace(f, 1)
    conn = np.array([x != 0 and f.is_square(x) for x in range(q)])
    return cayley_graph(space, conn, {"family": "paley", "q": q, "n": q,
                                      "field": f.label()}, cap)


def peisert(p: int, t: int, cap: int | None = None) -> DenseGraph:
    """Vertices GF(p^2t), p = 3 mod 4; u ~ v iff log(u - v) is 0 or 1 mod 4."""
    if not is_prime(p) or p % 4 != 3:
        raise ValueError("Peisert graphs need a prime p = 3 (mod 4)")
    if t < 1:
        raise ValueError("t must be positive")
    f = field_for_order(p ** (2 * t))
    q = f.q
    check_cap(q, cap, CONSTRUCT_CAP, "graph construction")
    space = VectorSpace(f, 1)
    conn = np.array([x != 0 and f.log(x) % 4 in (0, 1) for x in range(q)])
    return cayley_graph(space, conn, {"family": "peisert", "p": p, "t": t,
                                      "n": q, "field": f.label()}, cap)


def _mult_order(a: int, mod: int) -> int:
    v, k = a % mod, 1
    while v != 1:
        v = (v * a) % mod
        k += 1
    return k


def van_lint_schrijver(p: int, e: int, t: int, cap: int | None = None) -> DenseGraph:
    """Vertices GF(p^(e-1)t); u ~ v iff u - v is a nonzero e-th power,
    for an odd prime e with p primitive mod e."""
    if not is_prime(p):
        raise ValueError("p must be prime")
    if not is_prime(e) or e <= 2:
        raise ValueError("e must be a prime greater than 2")
    if t < 1:
        raise ValueError("t must be positive")
    if _mult_order(p, e) != e - 1:
        raise ValueError("p must be primitive modulo e")
    f = field_for_order(p ** ((e - 1) * t))
    q = f.q
    check_cap(q, cap, CONSTRUCT_CAP, "graph construction")
    space = VectorSpace(f, 1)
    conn = np.array([x != 0 and f.power_class(x, e) == 0 for x in range(q)])
    return cayley_graph(space, conn, {"family": "vls", "p": p, "e": e, "t": t,
                                      "n": q, "field": f.label()}, cap)


def complement(g: DenseGraph) -> DenseGraph:
    return g.complement()


# -- graph6 / DIMACS -------------------------------------------------------

def to_graph6(g: DenseGraph) -> str:
    n = g.n
    if n <= 62:
        head = chr(n + 63)
    elif n <= 258047:
        head = "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    else:
        raise ValueError("graph too large for this graph6 writer")
    dense = g.dense()
    cols = [dense[:j, j] for j in range(1, n)]
    bits = np.concatenate(cols) if cols else np.zeros(0, dtype=bool)
    pad = (-len(bits)) % 6
    bits = np.concatenate([bits, np.zeros(pad, dtype=bool)])
    groups = bits.reshape(-1, 6)
    weights = np.array([32, 16, 8, 4, 2, 1])
    vals = (groups * weights).sum(axis=1)
    return head + "".join(chr(v + 63) for v in vals)


def from_graph6(text: str) -> DenseGraph:
    text = text.strip()
    if text.startswith(">>graph6<<"):
        text = text[len(">>graph6<<"):]
    if text.startswith("~~"):
        raise ValueError("graph6 sizes above 258047 are not supported")
    if text.startswith("~"):
        n = 0
        for ch in text[1:4]:
            n = (n << 6) | (ord(ch) - 63)
        body = text[4:]
    else:
        n = ord(text[0]) - 63
        body = text[1:]
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise ValueError("graph6 body has wrong length")
    vals = np.array([ord(c) - 63 for c in body], dtype=np.uint8)
    if vals.size and (vals > 63).any():
        raise ValueError("invalid graph6 character")
    bits = ((vals[:, None] >> np.array([5, 4, 3, 2, 1, 0])) & 1).ravel().astype(bool)
    adj = np.zeros((n, n), dtype=bool)
    pos = 0
    for j in range(1, n):
        adj[:j, j] = bits[pos:pos + j]
        pos += j
    adj |= adj.T
    return DenseGraph.from_dense(adj)


def to_dimacs(g: DenseGraph) -> str:
    lines = ["p edge %d %d" % (g.n, g.edge_count())]
    lines += ["e %d %d" % (i + 1, j + 1) for i, j in g.edges()]
    return "\n".join(lines) + "\n"
