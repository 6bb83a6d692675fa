"""Arithmetic separation of subdegree parameter sets.

A one-dimensional affine rank-3 group with unequal subdegrees m1 < m2
on p^d points satisfies two divisibility constraints: m1 divides m2
and m2/m1 divides d.  Scanning the finitely many parameter sets of the
extraspecial class (B) and the exceptional class (C), and bounding the
infinite classes (A2)-(A11) by the same constraints, leaves a short
list of degrees on which a one-dimensional group can share subdegrees
with a higher-dimensional one; those rows form the exception table.

The (B) and (C) parameter tables are embedded verbatim (including the
duplicated rows of the printed source) and are guarded by a checksum
plus a recomputation of their quotient column at import time.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from .formulas import ParameterTriple, subdegrees_of, ClassSpec
from .gf import factorize, is_prime, prime_power

# (n, m1, m2, m2/m1 if integral else None), in printed order
CLASS_B_TABLE = (
    (2 ** 6, 27, 36, None),
    (3 ** 4, 32, 48, None),
    (7 ** 2, 24, 24, 1),
    (13 ** 2, 72, 96, None),
    (17 ** 2, 96, 192, 2),
    (19 ** 2, 144, 216, None),
    (23 ** 2, 264, 264, 1),
    (3 ** 6, 104, 624, 6),
    (29 ** 2, 168, 672, 4),
    (31 ** 2, 240, 720, 3),
    (47 ** 2, 1104, 1104, 1),
    (3 ** 4, 32, 48, None),
    (3 ** 4, 16, 64, 4),
    (5 ** 4, 240, 384, None),
    (7 ** 4, 480, 1920, 4),
    (3 ** 8, 1440, 5120, None),
)

CLASS_C_TABLE = (
    (3 ** 4, 40, 40, 1),
    (2 ** 8, 15 * 5, 15 * 12, None),
    (5 ** 4, 24 * 6, 24 * 20, None),
    (31 ** 2, 30 * 12, 30 * 20, None),
    (41 ** 2, 40 * 12, 40 * 30, None),
    (7 ** 4, 48 * 20, 48 * 30, None),
    (2 ** 12, 63 * 5, 63 * 60, 12),
    (71 ** 2, 70 * 12, 70 * 60, 5),
    (79 ** 2, 78 * 20, 78 * 60, 3),
    (89 ** 2, 88 * 30, 88 * 60, 2),
    (5 ** 6, 124 * 6, 124 * 120, 20),
    (2 ** 6, 18, 45, None),
    (5 ** 4, 144, 480, None),
    (2 ** 8, 45, 210, None),
    (7 ** 4, 720, 1680, None),
    (2 ** 8, 120, 135, None),
    (2 ** 8, 102, 153, None),
    (3 ** 6, 224, 504, None),
    (7 ** 4, 240, 2160, 9),
    (3 ** 5, 22, 220, 10),
    (3 ** 5, 110, 132, None),
    (2 ** 11, 276, 1771, None),
    (2 ** 11, 759, 1288, None),
    (3 ** 12, 65520, 465920, None),
    (2 ** 12, 1575, 2520, None),
    (5 ** 6, 7560, 8064, None),
)

_TABLE_SHA256 = "abc734662671e4c7071b944b69082c92e2571fc136a2f6f8190555bbfb97cc9a"


def _verify_tables() -> None:
    blob = repr((CLASS_B_TABLE, CLASS_C_TABLE)).encode()
    digest = hashlib.sha256(blob).hexdigest()
    if digest != _TABLE_SHA256:
        raise AssertionError("embedded tables were modified (checksum mismatch)")
    for n, m1, m2, quot in CLASS_B_TABLE + CLASS_C_TABLE:
        if prime_power(n) is None:
            raise AssertionError("table degree %d is not a prime power" % n)
        expected = m2 // m1 if m2 % m1 == 0 else None
        if quot != expected:
            raise AssertionError("quotient column mismatch at degree %d" % n)
    if len(CLASS_B_TABLE) != 16 or len(CLASS_C_TABLE) != 26:
        raise AssertionError("table row count changed")


_verify_tables()


def a1_divisibility(t: ParameterTriple) -> bool:
    """The one-dimensional subdegree test: m1 | m2 and (m2/m1) | d."""
    if t.m2 % t.m1 != 0:
        return False
    return t.d % (t.m2 // t.m1) == 0


def _scan_table(rows) -> list[ParameterTriple]:
    seen = []
    for n, m1, m2, _ in rows:
        trip = ParameterTriple.of(n, m1, m2)
        if a1_divisibility(trip) and trip not in seen:
            seen.append(trip)
    return sorted(seen, key=lambda t: (t.p, t.d, t.m1))


def scan_class_b() -> list[ParameterTriple]:
    """Class (B) rows whose subdegrees pass the one-dimensional test."""
    return _scan_table(CLASS_B_TABLE)


def scan_class_c() -> list[ParameterTriple]:
    """Class (C) rows whose subdegrees pass the one-dimensional test."""
    return _scan_table(CLASS_C_TABLE)


def _prime_powers_upto(limit: int) -> list[int]:
    return [x for x in range(2, limit + 1) if prime_power(x) is not None]


def scan_class_a() -> list[ParameterTriple]:
    """Bounded searches over the infinite classes (A2)-(A11).

    Each class is reduced to a finite parameter range by the
    divisibility constraints: the subdegree quotient u must be an
    integer dividing d, which bounds the free parameter.  Classes with
    an impossible coprimality condition contribute nothing:

    * imprimitive-linear (A2): u = (s-1)/2 with s = p^m must divide
      d = 2m, so s - 1 <= 4m;
    * bilinear (A3)-(A5): u = r(r^(m-1)-1)/(r+1) and r^(2m) = p^d give
      r^(m-1) <= 44;
    * unitary/orthogonal (A6), (A7): q^(m-1) +- 1 must divide q - 1,
      forcing m = 2; plus type would need (q+1) | (q-1), impossible,
      and for minus type u = q <= 16;
    * (A8)-(A10): q^k + 1 would have to divide a smaller polynomial in
      q, impossible for every q;
    * Suzuki-Tits (A11): the same parameters as minus-type (A6)/(A7).
    """
    found: set[ParameterTriple] = set()
    # (A2)
    for m in range(1, 17):
        for p in [x for x in range(2, 4 * m + 2) if is_prime(x)]:
            s = p ** m
            if s < 3 or s - 1 > 4 * m:
                continue
            trip = ParameterTriple.of(s * s, 2 * (s - 1), (s - 1) ** 2)
            if a1_divisibility(trip):
                found.add(trip)
    # (A3)-(A5)
    for r in _prime_powers_upto(44):
        m = 2
        while r ** (m - 1) <= 44:
            trip = ParameterTriple.of(r ** (2 * m), (r + 1) * (r ** m - 1),
                                      r * (r ** m - 1) * (r ** (m - 1) - 1))
            if a1_divisibility(trip):
                found.add(trip)
            m += 1
    # (A6), (A7) minus type with m = 2, and (A11) which repeats them
    for q in _prime_powers_upto(16):
        trip = subdegrees_of(ClassSpec("A7", (q, 2, "-")))
        if a1_divisibility(trip):
            found.add(trip)
    # (A8)-(A10) contribute nothing; see the docstring
    return sorted(found, key=lambda t: (t.p, t.d, t.m1))


# -- pairwise subdegree intersections ---------------------------------------

@dataclass(frozen=True)
class Coincidence:
    """Several families sharing one (degree, subdegree) parameter set."""

    n: int
    m1: int
    m2: int
    members: tuple


def _family_grid(q_max: int, m_max: int):
    out = []
    for r in _prime_powers_upto(q_max):
        for m in range(2, m_max + 1):
            out.append(("H", (r, m), subdegrees_of(ClassSpec("A3", (r, m)))))
    for q in _prime_powers_upto(q_max):
        for m in range(2, m_max + 1):
            for eps in "+-":
                out.append(("VO", (eps, 2 * m, q),
                            subdegrees_of(ClassSpec("A7", (q, m, eps)))))
    for q in _prime_powers_upto(q_max):
        out.append(("A5", (q,), subdegrees_of(ClassSpec("A8", (q,)))))
        out.append(("VD55", (q,), subdegrees_of(ClassSpec("A10", (q,)))))
        pp = prime_power(q)
        if pp[0] == 2 and pp[1] % 2 == 1 and pp[1] >= 3:
            out.append(("VSz", (q,), subdegrees_of(ClassSpec("A11", (q,)))))
    return out


def pairwise_intersections(q_max: int = 16, m_max: int = 6) -> list[Coincidence]:
    """All cross-family collisions of (n, m1, m2) over the grid."""
    if q_max < 16 or m_max < 6:
        raise ValueError("grid bounds must cover at least (16, 6)")
    groups: dict[tuple, list] = {}
    for family, params, trip in _family_grid(q_max, m_max):
        groups.setdefault((trip.n, trip.m1, trip.m2), []).append((family, params))
    out = []
    for (n, m1, m2), members in sorted(groups.items()):
        families = {fam for fam, _ in members}
        if len(families) > 1:
            out.append(Coincidence(n, m1, m2, tuple(sorted(members))))
    return out


def coincidence_family_pairs(coincidences) -> set:
    """The set of unordered family-name pairs that ever collide."""
    pairs = set()
    for c in coincidences:
        fams = sorted({fam for fam, _ in c.members})
        for i in range(len(fams)):
            for j in range(i + 1, len(fams)):
                pairs.add((fams[i], fams[j]))
    return pairs


# -- the exception table ------------------------------------------------------

@dataclass(frozen=True)
class ExceptionTable:
    """Degrees and least subdegrees of the possible exceptions, split by
    classification class."""

    class_a: tuple
    class_b: tuple
    class_c: tuple

    def as_json(self) -> dict:
        return {"A": [list(r) for r in self.class_a],
                "B": [list(r) for r in self.class_b],
                "C": [list(r) for r in self.class_c]}


def emit_exception_table() -> ExceptionTable:
    def rows(scan):
        return tuple((t.n, t.m1) for t in scan)

    return ExceptionTable(rows(scan_class_a()), rows(scan_class_b()),
                          rows(scan_class_c()))


def exception_table_text() -> str:
    table = emit_exception_table()
    out = []
    for name, rows in [("(A)", table.class_a), ("(B)", table.class_b),
                       ("(C)", table.class_c)]:
        out.append(name)
        degs = "  ".join("%d" % n for n, _ in rows)
        subs = "  ".join("%d" % m for _, m in rows)
        out.append("  degree:    " + degs)
        out.append("  subdegree: " + subs)
    return "\n".join(out) + "\n"


def embedded_tables_json() -> dict:
    def rows(table):
        return [{"n": n, "m1": m1, "m2": m2,
                 "quotient": quot} for n, m1, m2, quot in table]

    return {"class_b": rows(CLASS_B_TABLE), "class_c": rows(CLASS_C_TABLE)}
