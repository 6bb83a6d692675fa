"""Closed-form subdegrees, wreath ranks, and 2-closure group orders.

The subdegree formulas follow the classification tables for affine
rank-3 groups: one row per infinite class (A1)-(A11), parameterized by
a prime power q and a dimension parameter m where applicable.  Classes
(A4) and (A5) reduce to the bilinear-forms row (A3) with r = sqrt(q)
and r = cbrt(q) respectively, which keeps a single set of formulas.

Group orders for 2-closures combine the classical order formulas for
GL, O^eps and Sz with the translation part q^d and the field
automorphism factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NotComputed
from .gf import factorize, is_prime, prime_power


@dataclass(frozen=True)
class ParameterTriple:
    """(degree p^d, subdegrees m1 <= m2) of a rank-3 group."""

    p: int
    d: int
    m1: int
    m2: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError("degree base must be prime")
        if self.m1 > self.m2:
            raise ValueError("subdegrees must be sorted")
        if self.m1 < 1:
            raise ValueError("subdegrees must be positive")
        if self.m1 + self.m2 != self.n - 1:
            raise ValueError("subdegrees must sum to degree - 1")

    @property
    def n(self) -> int:
        return self.p ** self.d

    @staticmethod
    def of(n: int, a: int, b: int) -> "ParameterTriple":
        pp = prime_power(n)
        if pp is None:
            raise ValueError("%d is not a prime power" % n)
        return ParameterTriple(pp[0], pp[1], min(a, b), max(a, b))


@dataclass(frozen=True)
class ClassSpec:
    """One row of the affine rank-3 classification, with parameters."""

    tag: str
    params: tuple

    TAGS = ("A1_VLS", "A1_Paley", "A1_Peisert", "A2", "A3", "A4", "A5",
            "A6", "A7", "A8", "A9", "A10", "A11")

    def __post_init__(self):
        if self.tag not in self.TAGS:
            raise ValueError("unknown class tag %r" % (self.tag,))


def _require_prime_power(q: int) -> tuple[int, int]:
    pp = prime_power(q)
    if pp is None:
        raise ValueError("%d is not a prime power" % q)
    return pp


def _integer_root(q: int, k: int) -> int:
    r = round(q ** (1.0 / k))
    for cand in (r - 1, r, r + 1):
        if cand > 1 and cand ** k == q:
            return cand
    raise ValueError("%d is not a perfect %d-th power" % (q, k))


def _mult_order(a: int, mod: int) -> int:
    v, k = a % mod, 1
    while v != 1:
        v = (v * a) % mod
        k += 1
    return k


def subdegrees_of(spec: ClassSpec) -> ParameterTriple:
    """Exact subdegrees for a classification row."""
    tag, par = spec.tag, spec.params
    if tag == "A1_VLS":
        p, e, t = par
        if not (is_prime(p) and is_prime(e) and e > 2):
            raise ValueError("need primes p and e > 2")
        if _mult_order(p, e) != e - 1:
            raise ValueError("p must be primitive modulo e")
        q = p ** ((e - 1) * t)
        return ParameterTriple.of(q, (q - 1) // e, (e - 1) * (q - 1) // e)
    if tag == "A1_Paley":
        q, = par
        _require_prime_power(q)
        if q % 4 != 1:
            raise ValueError("Paley parameters need q = 1 (mod 4)")
        return ParameterTriple.of(q, (q - 1) // 2, (q - 1) // 2)
    if tag == "A1_Peisert":
        p, t = par
        if not is_prime(p) or p % 4 != 3:
            raise ValueError("Peisert parameters need a prime p = 3 (mod 4)")
        q = p ** (2 * t)
        return ParameterTriple.of(q, (q - 1) // 2, (q - 1) // 2)
    if tag == "A2":
        p, m = par
        if not is_prime(p):
            raise ValueError("p must be prime")
        s = p ** m
        return ParameterTriple.of(s * s, 2 * (s - 1), (s - 1) ** 2)
    if tag in ("A3", "A4", "A5"):
        if tag == "A3":
            r, m = par
        elif tag == "A4":
            q, m = par
            r = _integer_root(q, 2)
        else:
            q, = par
            r, m = _integer_root(q, 3), 3
        _require_prime_power(r)
        if m < 2:
            raise ValueError("m must be at least 2")
        return ParameterTriple.of(r ** (2 * m), (r + 1) * (r ** m - 1),
                                  r * (r ** m - 1) * (r ** (m - 1) - 1))
    if tag in ("A6", "A7"):
        if tag == "A6":
            q, m = par
            eps = "+" if m % 2 == 0 else "-"
        else:
            q, m, eps = par
        _require_prime_power(q)
        if m < 2:
            raise ValueError("m must be at least 2")
        if eps == "+":
            a = (q ** m - 1) * (q ** (m - 1) + 1)
            b = q ** (m - 1) * (q - 1) * (q ** m - 1)
        elif eps == "-":
            a = (q ** m + 1) * (q ** (m - 1) - 1)
            b = q ** (m - 1) * (q - 1) * (q ** m + 1)
        else:
            raise ValueError("type must be '+' or '-'")
        return ParameterTriple.of(q ** (2 * m), a, b)
    if tag == "A8":
        q, = par
        _require_prime_power(q)
        return ParameterTriple.of(q ** 10, (q ** 5 - 1) * (q * q + 1),
                                  q * q * (q ** 5 - 1) * (q ** 3 - 1))
    if tag == "A9":
        q, = par
        _require_prime_power(q)
        return ParameterTriple.of(q ** 8, (q ** 4 - 1) * (q ** 3 + 1),
                                  q ** 3 * (q ** 4 - 1) * (q - 1))
    if tag == "A10":
        q, = par
        _require_prime_power(q)
        return ParameterTriple.of(q ** 16, (q ** 8 - 1) * (q ** 3 + 1),
                                  q ** 3 * (q ** 8 - 1) * (q ** 5 - 1))
    if tag == "A11":
        q, = par
        pp = prime_power(q)
        if pp is None or pp[0] != 2 or pp[1] % 2 == 0 or pp[1] < 3:
            raise ValueError("q must be 2^(2e+1) with e >= 1")
        return ParameterTriple.of(q ** 4, (q * q + 1) * (q - 1),
                                  q * (q * q + 1) * (q - 1))
    raise AssertionError("unhandled tag %r" % tag)


def family_subdegrees(family: str, *params) -> tuple[int, int, int]:
    """(n, m1, m2) for a constructible graph family, from the tables."""
    if family == "hamming2":
        s, = params
        n = s * s
        return n, *sorted((2 * (s - 1), (s - 1) ** 2))
    mapping = {
        "bilinear": lambda q, m: subdegrees_of(ClassSpec("A3", (q, m))),
        "polar": lambda eps, m, q: subdegrees_of(ClassSpec("A7", (q, m, eps))),
        "altforms5": lambda q: subdegrees_of(ClassSpec("A8", (q,))),
        "vsz": lambda q: subdegrees_of(ClassSpec("A11", (q,))),
        "paley": lambda q: subdegrees_of(ClassSpec("A1_Paley", (q,))),
        "peisert": lambda p, t: subdegrees_of(ClassSpec("A1_Peisert", (p, t))),
        "vls": lambda p, e, t: subdegrees_of(ClassSpec("A1_VLS", (p, e, t))),
    }
    if family not in mapping:
        raise ValueError("unknown family %r" % family)
    trip = mapping[family](*params)
    return trip.n, trip.m1, trip.m2


def wreath_rank(r: int, m: int) -> int:
    """Rank of a rank-r transitive group in product action with Sym(m)."""
    if r < 1 or m < 1:
        raise ValueError("rank and arity must be positive")
    return math.comb(r + m - 1, m)


# -- classical group orders -------------------------------------------------

def gl_order(k: int, q: int) -> int:
    n = q ** (k * (k - 1) // 2)
    for i in range(1, k + 1):
        n *= q ** i - 1
    return n


def orthogonal_order(eps: str, m: int, q: int) -> int:
    """Order of the full isometry group of a non-degenerate type-eps
    quadratic form in dimension 2m over GF(q)."""
    sign = 1 if eps == "+" else -1
    n = 2 * q ** (m * (m - 1)) * (q ** m - sign)
    for i in range(1, m):
        n *= q ** (2 * i) - 1
    return n


def sz_order(q: int) -> int:
    return q * q * (q * q + 1) * (q - 1)


def closure_order(case: str, *params) -> int:
    """Order of the 2-closure for the structurally known cases.

    Cases: "i" (imprimitive, |Delta|, |X|), "ii" (product action,
    |Delta|), "iv_b" (bilinear forms, q, m), "iv_c" (affine polar, eps,
    m, q), "iv_d" (alternating forms, q), "iv_f" (Suzuki-Tits, q).
    Cases "iii" and "iv_e" are deliberately not computed.
    """
    if case == "i":
        delta, x = params
        return math.factorial(delta) ** x * math.factorial(x)
    if case == "ii":
        delta, = params
        return math.factorial(delta) ** 2 * 2
    if case == "iv_b":
        q, m = params
        _, e = _require_prime_power(q)
        order0 = gl_order(2, q) * gl_order(m, q) // (q - 1) * e
        if m == 2:
            order0 *= 2
        return q ** (2 * m) * order0
    if case == "iv_c":
        eps, m, q = params
        _, e = _require_prime_power(q)
        return q ** (2 * m) * e * (q - 1) * orthogonal_order(eps, m, q)
    if case == "iv_d":
        q, = params
        _, e = _require_prime_power(q)
        # (GammaL_5(q)/{+-1}) x (F*/(F*)^2): the gcd(2, q-1) factors cancel
        return q ** 10 * e * gl_order(5, q)
    if case == "iv_f":
        q, = params
        p, e = _require_prime_power(q)
        if p != 2 or e % 2 == 0 or e < 3:
            raise ValueError("q must be 2^(2e+1) with e >= 1")
        return q ** 4 * (q - 1) * sz_order(q) * e
    if case in ("iii", "iv_e"):
        raise NotComputed("closure order for case %s is not computed here" % case)
    raise ValueError("unknown case %r" % case)


# -- table reproduction ------------------------------------------------------

CLASS_A_ROWS = [
    ("A1", "G0 < GammaL(1, p^d)", "p^d", "1", "see one-dimensional table"),
    ("A2", "G0 imprimitive", "p^(2m)", "2m", "2(p^m - 1), (p^m - 1)^2"),
    ("A3", "tensor product", "q^(2m)", "2m",
     "(q+1)(q^m - 1), q(q^m - 1)(q^(m-1) - 1)"),
    ("A4", "G0 >= SL_m(sqrt q)", "q^m", "m",
     "(r+1)(r^m - 1), r(r^m - 1)(r^(m-1) - 1) with r = sqrt q"),
    ("A5", "G0 >= SL_2(cbrt q)", "q^2", "2",
     "(r+1)(r^3 - 1), r(r^3 - 1)(r^2 - 1) with r = cbrt q"),
    ("A6", "G0 >= SU_m(q)", "q^(2m)", "m",
     "(q^m - 1)(q^(m-1) + 1), q^(m-1)(q-1)(q^m - 1) for even m; "
     "(q^m + 1)(q^(m-1) - 1), q^(m-1)(q-1)(q^m + 1) for odd m"),
    ("A7", "G0 >= Omega^eps_2m(q)", "q^(2m)", "2m",
     "(q^m - 1)(q^(m-1) + 1), q^(m-1)(q-1)(q^m - 1) for eps = +; "
     "(q^m + 1)(q^(m-1) - 1), q^(m-1)(q-1)(q^m + 1) for eps = -"),
    ("A8", "G0 >= SL_5(q)", "q^10", "10", "(q^5 - 1)(q^2 + 1), q^2(q^5 - 1)(q^3 - 1)"),
    ("A9", "G0 >= B_3(q)", "q^8", "8", "(q^4 - 1)(q^3 + 1), q^3(q^4 - 1)(q - 1)"),
    ("A10", "G0 >= D_5(q)", "q^16", "16", "(q^8 - 1)(q^3 + 1), q^3(q^8 - 1)(q^5 - 1)"),
    ("A11", "G0 >= Sz(q)", "q^4", "4", "(q^2 + 1)(q - 1), q(q^2 + 1)(q - 1)"),
]

ONE_DIM_ROWS = [
    ("Van Lint-Schrijver", "q = p^((e-1)t)", "(q-1)/e, (e-1)(q-1)/e",
     "e > 2 prime, p primitive mod e"),
    ("Paley", "q", "(q-1)/2, (q-1)/2", "q = 1 (mod 4)"),
    ("Peisert", "q = p^(2t)", "(q-1)/2, (q-1)/2", "p = 3 (mod 4)"),
]


def tables_json() -> dict:
    return {
        "class_a": [dict(zip(("class", "type", "degree", "a", "subdegrees"), row))
                    for row in CLASS_A_ROWS],
        "one_dimensional": [dict(zip(("graph", "degree", "subdegrees", "conditions"), row))
                            for row in ONE_DIM_ROWS],
    }


def tables_text() -> str:
    out = ["Class (A) subdegrees"]
    widths = [max(len(str(r[i])) for r in CLASS_A_ROWS) for i in range(4)]
    for row in CLASS_A_ROWS:
        head = "  ".join(str(v).ljust(w) for v, w in zip(row[:4], widths))
        out.append("%s  %s" % (head, row[4]))
    out.append("")
    out.append("One-dimensional subdegrees")
    w2 = [max(len(str(r[i])) for r in ONE_DIM_ROWS) for i in range(3)]
    for row in ONE_DIM_ROWS:
        head = "  ".join(str(v).ljust(w) for v, w in zip(row[:3], w2))
        out.append("%s  %s" % (head, row[3]))
    return "\n".join(out) + "\n"
