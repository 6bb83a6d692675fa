"""Exact arithmetic in small finite fields GF(p^k).

A field element is an integer index in [0, q), q = p^k, whose
little-endian base-p digits are the coefficients of a polynomial over
GF(p) (the constant term is the lowest digit).  Each ``FieldTable``
fixes a deterministic modulus -- the lexicographically least monic
irreducible polynomial of degree k, compared by little-endian
coefficient tuple -- and a primitive element g (the least index of
multiplicative order q - 1).  Log/exp tables are built eagerly, so
everything downstream is reproducible table lookups.

Vectors over GF(q) are indexed the same way: an element of GF(q)^n is
the integer whose little-endian base-q digits are its components.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

import numpy as np

MAX_FIELD_SIZE = 1 << 16

# moduli of every field built in this process, for run reports
FIELD_REGISTRY: dict[tuple[int, int], tuple[int, ...]] = {}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1 if d == 2 else 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (desk-scale inputs)."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_power(n: int) -> tuple[int, int] | None:
    """Return (p, d) with n = p^d, or None if n is not a prime power."""
    f = factorize(n)
    if len(f) != 1:
        return None
    (p, d), = f.items()
    return p, d


# -- polynomial helpers over GF(p), coefficients little-endian ----------

def _poly_trim(a):
    while a and a[-1] == 0:
        a = a[:-1]
    return a


def _poly_mulmod(a, b, mod, p):
    """(a * b) mod `mod` over GF(p); `mod` monic."""
    k = len(mod) - 1
    res = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    # reduce: subtract x^t * mod while degree >= k
    for t in range(len(res) - 1, k - 1, -1):
        c = res[t]
        if c:
            res[t] = 0
            for j in range(k):
                res[t - k + j] = (res[t - k + j] - c * mod[j]) % p
    res = res[:k]
    return res + [0] * (k - len(res))


def _poly_divisible(a, b, p):
    """Whether monic b divides a over GF(p)."""
    a = list(a)
    db, da = len(b) - 1, len(_poly_trim(a)) - 1
    while da >= db:
        c = a[da]
        if c:
            for j in range(db + 1):
                a[da - db + j] = (a[da - db + j] - c * b[j]) % p
        da -= 1
        while da >= 0 and a[da] == 0:
            da -= 1
    return all(x == 0 for x in a)


def _is_irreducible(coeffs, p):
    """Irreducibility of a monic polynomial by exhaustive divisor search."""
    k = len(coeffs) - 1
    if k == 1:
        return True
    if coeffs[0] == 0:  # x divides
        return False
    for deg in range(1, k // 2 + 1):
        for tail in product(range(p), repeat=deg):
            cand = list(tail) + [1]
            if _poly_divisible(coeffs, cand, p):
                return False
    return True


def _least_irreducible(p, k):
    """Lexicographically least (little-endian tuple) monic irreducible."""
    for tail in product(range(p), repeat=k):
        cand = list(tail) + [1]
        if _is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")  # cannot happen


@dataclass
class FieldTable:
    """GF(p^k) with eager log/exp tables.

    Immutable after construction; all operations are pure lookups, so a
    table can be shared freely between threads.
    """

    p: int
    k: int
    modulus: tuple[int, ...]
    q: int = field(init=False)
    g: int = field(init=False)

    def __post_init__(self):
        self.q = self.p ** self.k
        self._build_tables()
        FIELD_REGISTRY[(self.p, self.k)] = tuple(self.modulus)

    # -- raw digit arithmetic (used to bootstrap the tables) -----------

    def _digits(self, x: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(x % self.p)
            x //= self.p
        return out

    def _index(self, digits) -> int:
        x = 0
        for d in reversed(digits):
            x = x * self.p + d
        return x

    def _mul_raw(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        prod = _poly_mulmod(self._digits(a), self._digits(b), self.modulus, self.p)
        return self._index(prod)

    def _pow_raw(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._mul_raw(r, a)
            a = self._mul_raw(a, a)
            e >>= 1
        return r

    def _build_tables(self):
        q, p = self.q, self.p
        # addition of indices is digitwise mod p; vectorized helper below
        order_primes = list(factorize(q - 1)) if q > 2 else []
        g = None
        for cand in range(1, q):
            if all(self._pow_raw(cand, (q - 1) // r) != 1 for r in order_primes):
                g = cand
                break
        assert g is not None
        self.g = g
        exp = np.zeros(q - 1, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        v = 1
        for i in range(q - 1):
            exp[i] = v
            log[v] = i
            v = self._mul_raw(v, g)
        assert v == 1, "primitive element has wrong order"
        self._exp = exp
        self._log = log
        self._pair_tables = None

    # -- scalar operations ---------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        da, db = self._digits(a), self._digits(b)
        return self._index([(x + y) % self.p for x, y in zip(da, db)])

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        return self._index([(-x) % self.p for x in self._digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self._exp[(self._log[a] + self._log[b]) % (self.q - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(%d)" % self.q)
        return int(self._exp[(-self._log[a]) % (self.q - 1)])

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("0 to a negative power")
            return 0 if e else 1
        return int(self._exp[(self._log[a] * e) % (self.q - 1)])

    def frobenius(self, a: int, j: int) -> int:
        """a^(p^j), the j-th power of the Frobenius automorphism."""
        if not 0 <= j < self.k:
            raise ValueError("frobenius exponent out of range")
        return self.pow(a, self.p ** j)

    def log(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("log of 0")
        return int(self._log[a])

    def is_square(self, a: int) -> bool:
        """Whether a is a square; 0 counts as a square."""
        if a == 0:
            return True
        from math import gcd
        return self._log[a] % gcd(2, self.q - 1) == 0

    def power_class(self, a: int, e: int) -> int:
        """Coset of a in F^x / (F^x)^e, as log(a) mod e."""
        if a == 0:
            raise ZeroDivisionError("0 has no power class")
        if (self.q - 1) % e != 0:
            raise ValueError("e must divide q - 1")
        return int(self._log[a]) % e

    def elements(self) -> range:
        return range(self.q)

    # -- vectorized helpers ---------------------------------------------

    def pair_tables(self):
        """(add, sub, mul) as dense (q, q) int32 arrays, built lazily."""
        if self._pair_tables is None:
            if self.q > 2048:
                raise ValueError("pairwise tables capped at q <= 2048")
            q = self.q
            if self.k == 1:
                ar = np.arange(q, dtype=np.int64)
                add = (ar[:, None] + ar[None, :]) % q
                sub = (ar[:, None] - ar[None, :]) % q
            else:
                digs = self.digit_matrix()
                add = np.zeros((q, q), dtype=np.int64)
                sub = np.zeros((q, q), dtype=np.int64)
                w = 1
                for t in range(self.k):
                    da = digs[:, t][:, None]
                    db = digs[:, t][None, :]
                    add += ((da + db) % self.p) * w
                    sub += ((da - db) % self.p) * w
                    w *= self.p
            mul = np.zeros((q, q), dtype=np.int64)
            nz = np.arange(1, q)
            lg = self._log[nz]
            mul[1:, 1:] = self._exp[(lg[:, None] + lg[None, :]) % (q - 1)]
            tables = (add.astype(np.int32), sub.astype(np.int32),
                      mul.astype(np.int32))
            self._pair_tables = tables
        return self._pair_tables

    def digit_matrix(self) -> np.ndarray:
        """(q, k) matrix whose row x holds the base-p digits of x."""
        ar = np.arange(self.q, dtype=np.int64)
        out = np.empty((self.q, self.k), dtype=np.int64)
        for t in range(self.k):
            out[:, t] = ar % self.p
            ar //= self.p
        return out

    def frobenius_table(self, j: int) -> np.ndarray:
        return np.array([self.frobenius(x, j) for x in range(self.q)],
                        dtype=np.int64)

    def label(self) -> dict:
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}


@lru_cache(maxsize=None)
def field_make(p: int, k: int) -> FieldTable:
    """Build GF(p^k) with the deterministic modulus and primitive element."""
    if not is_prime(p):
        raise ValueError("p = %d is not prime" % p)
    if k <= 0:
        raise ValueError("extension degree must be positive")
    if p ** k > MAX_FIELD_SIZE:
        raise ValueError("field size %d exceeds cap %d" % (p ** k, MAX_FIELD_SIZE))
    return FieldTable(p, k, _least_irreducible(p, k))


def field_for_order(q: int) -> FieldTable:
    """GF(q) for a prime power q."""
    pp = prime_power(q)
    if pp is None:
        raise ValueError("%d is not a prime power" % q)
    return field_make(*pp)


class VectorSpace:
    """GF(q)^n with the little-endian base-q integer indexing.

    ``vec_index`` and ``index_vec`` are mutually inverse bijections
    between component tuples and [0, q^n).
    """

    def __init__(self, fieldtab: FieldTable, dim: int):
        self.field = fieldtab
        self.dim = dim
        self.size = fieldtab.q ** dim
        self._digits = None

    def vec_index(self, v) -> int:
        q = self.field.q
        if len(v) != self.dim:
            raise ValueError("wrong vector length")
        x = 0
        for c in reversed(v):
            if not 0 <= c < q:
                raise ValueError("component out of range")
            x = x * q + c
        return x

    def index_vec(self, i: int) -> tuple[int, ...]:
        if not 0 <= i < self.size:
            raise ValueError("index out of range")
        q = self.field.q
        out = []
        for _ in range(self.dim):
            out.append(i % q)
            i //= q
        return tuple(out)

    def digit_table(self) -> np.ndarray:
        """(size, dim) int32 matrix of all vectors, row i = index_vec(i)."""
        if self._digits is None:
            ar = np.arange(self.size, dtype=np.int64)
            out = np.empty((self.size, self.dim), dtype=np.int32)
            for t in range(self.dim):
                out[:, t] = ar % self.field.q
                ar //= self.field.q
            self._digits = out
        return self._digits

    def diff_row(self, i: int) -> np.ndarray:
        """Indices of v_j - v_i for every j, as one vectorized row."""
        f = self.field
        if f.p == 2:
            # subtraction is addition; digit indices XOR componentwise,
            # and base-q digits of q = 2^k concatenate bitwise
            return np.bitwise_xor(np.arange(self.size, dtype=np.int64), i)
        _, subtab, _ = f.pair_tables()
        digs = self.digit_table()
        mine = digs[i]
        out = np.zeros(self.size, dtype=np.int64)
        w = 1
        for t in range(self.dim):
            out += subtab[digs[:, t], mine[t]].astype(np.int64) * w
            w *= f.q
        return out

    def neg_index(self, i: int) -> int:
        return self.vec_index([self.field.neg(c) for c in self.index_vec(i)])
