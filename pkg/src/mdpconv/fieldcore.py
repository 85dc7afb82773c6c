"""Exact arithmetic in a two-level finite-field tower F_p < F_q < F_{q^k}.

Elements are plain integers.  The integer of an element is the little-endian
base-p reading of its flattened coefficient vector: an element of F_{q^k} is
``c_0 + c_1 v + ... + c_{k-1} v^{k-1}`` over F_q (``v`` a root of the
extension modulus), and each ``c_i`` is itself a length-e vector over F_p in
the polynomial basis of the base modulus.  Hence ``index = sum c_i q^i`` and
the elements of the subfield F_q are exactly the integers below ``q``.

Moduli are chosen deterministically as the smallest-index monic irreducible
polynomial of the required degree, so the same ``(p, e, k_ext)`` always gives
the same field and the same integer encoding.
"""

from __future__ import annotations

import functools
import random
from typing import Iterator, Sequence

import numpy as np

from . import _poly
from .errors import (
    DegreeZero,
    DivisionByZero,
    EnumerationBudgetExceeded,
    FactorizationBudgetExceeded,
    FieldMismatch,
    NotIrreducible,
    NotPrime,
    SizeBudgetExceeded,
    ZeroConjugator,
)

MAX_FIELD_SIZE = 1 << 48
TABLE_LIMIT = 1 << 16
ENUMERATION_LIMIT = 10**6
FACTOR_BUDGET = 2 * 10**7


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, e)`` with ``q == p**e`` or ``None`` if q is not a prime power."""
    if q < 2:
        return None
    p = 2
    while p * p <= q and q % p:
        p += 1 if p == 2 else 2
    if q % p:
        p = q
    e = 0
    r = q
    while r % p == 0:
        r //= p
        e += 1
    return (p, e) if r == 1 else None


def factorize(n: int, budget: int = FACTOR_BUDGET) -> list[int]:
    """Distinct prime factors of ``n`` by trial division."""
    primes = []
    steps = 0
    d = 2
    while d * d <= n:
        steps += 1
        if steps > budget:
            raise FactorizationBudgetExceeded("trial division", steps, budget)
        if n % d == 0:
            primes.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        primes.append(n)
    return primes


class _PrimeLayer:
    """F_p on the integers 0..p-1."""

    def __init__(self, p: int):
        self.p = p
        self.size = p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, -1, self.p)


class _ExtLayer:
    """Simple extension ``base[x]/(modulus)`` on integer indices."""

    def __init__(self, base, modulus: Sequence[int]):
        self.base = base
        self.modulus = list(modulus)
        self.degree = len(modulus) - 1
        self.size = base.size**self.degree

    def digits(self, a: int) -> list[int]:
        s = self.base.size
        out = []
        for _ in range(self.degree):
            a, r = divmod(a, s)
            out.append(r)
        return out

    def undigits(self, ds: Sequence[int]) -> int:
        s = self.base.size
        a = 0
        for c in reversed(ds):
            a = a * s + c
        return a

    def add(self, a, b):
        B = self.base
        return self.undigits([B.add(x, y) for x, y in zip(self.digits(a), self.digits(b))])

    def sub(self, a, b):
        B = self.base
        return self.undigits([B.sub(x, y) for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a):
        B = self.base
        return self.undigits([B.neg(x) for x in self.digits(a)])

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        prod = _poly.mul(self.base, self.digits(a), self.digits(b))
        r = _poly.mod(self.base, prod, self.modulus)
        return self.undigits(r + [0] * (self.degree - len(r)))

    def pow(self, a, n):
        result, base = 1, a
        while n:
            if n & 1:
                result = self.mul(result, base)
            n >>= 1
            if n:
                base = self.mul(base, base)
        return result

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return self.pow(a, self.size - 2)


def _smallest_irreducible(layer, degree: int) -> list[int]:
    s = layer.size
    for index in range(s**degree):
        coeffs = []
        r = index
        for _ in range(degree):
            r, c = divmod(r, s)
            coeffs.append(c)
        f = coeffs + [1]
        if _poly.is_irreducible(layer, f, s):
            return f
    raise NotIrreducible(f"no monic irreducible of degree {degree} found")  # unreachable


def _check_modulus(layer, f: Sequence[int], degree: int, name: str) -> list[int]:
    f = [int(c) for c in f]
    if len(f) != degree + 1 or f[-1] != 1:
        raise NotIrreducible(f"{name} must be monic of degree {degree}")
    if any(not 0 <= c < layer.size for c in f):
        raise NotIrreducible(f"{name} has coefficients outside the base field")
    if not _poly.is_irreducible(layer, f, layer.size):
        raise NotIrreducible(f"{name} {f} is reducible")
    return f


class FieldTower:
    """The field F_{q^k} with q = p^e, built as a tower over F_p.

    Parameters
    ----------
    p : int
        Characteristic (prime).
    e : int
        Degree of F_q over F_p.
    k_ext : int
        Degree of the top field over F_q.
    base_modulus, ext_modulus : optional
        Explicit moduli (monic, lowest coefficient first).  ``ext_modulus``
        holds F_q elements as integers.  When omitted the smallest-index monic
        irreducible polynomial is used.

    Fields with at most ``TABLE_LIMIT`` elements get log/antilog and Zech
    tables; larger ones fall back to polynomial arithmetic per operation.
    """

    def __init__(self, p: int, e: int = 1, k_ext: int = 1,
                 base_modulus: Sequence[int] | None = None,
                 ext_modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if e < 1 or k_ext < 1:
            raise DegreeZero("extension degrees must be >= 1")
        if p ** (e * k_ext) > MAX_FIELD_SIZE:
            raise SizeBudgetExceeded("field size", p ** (e * k_ext), MAX_FIELD_SIZE)
        self.p, self.e, self.k_ext = p, e, k_ext
        self.q = p**e
        self.size = self.q**k_ext

        prime = _PrimeLayer(p)
        if base_modulus is None:
            base_modulus = _smallest_irreducible(prime, e)
        self.base_modulus = _check_modulus(prime, base_modulus, e, "base_modulus")
        base = prime if e == 1 else _ExtLayer(prime, self.base_modulus)
        if ext_modulus is None:
            ext_modulus = _smallest_irreducible(base, k_ext)
        self.ext_modulus = _check_modulus(base, ext_modulus, k_ext, "ext_modulus")
        self._ops = base if k_ext == 1 else _ExtLayer(base, self.ext_modulus)
        self._base_ops = base

        self._prime = e * k_ext == 1
        self._char2 = p == 2
        self._log: list[int] | None = None
        self._exp: list[int] | None = None
        self._zech: list[int] | None = None
        self._gamma: int | None = None
        if self.size <= TABLE_LIMIT and not self._prime:
            self._build_tables()

    # ------------------------------------------------------------------
    # identity and serialization

    def _key(self):
        return (self.p, self.e, self.k_ext, tuple(self.base_modulus), tuple(self.ext_modulus))

    def __eq__(self, other):
        return isinstance(other, FieldTower) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"FieldTower(p={self.p}, e={self.e}, k_ext={self.k_ext})"

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "e": self.e,
            "k_ext": self.k_ext,
            "base_modulus": list(self.base_modulus),
            "ext_modulus": [self.base_digits(c) for c in self.ext_modulus],
        }

    def base_digits(self, c: int) -> list[int]:
        """Length-e F_p coefficient vector of an F_q element."""
        out = []
        for _ in range(self.e):
            c, r = divmod(c, self.p)
            out.append(r)
        return out

    def to_coeffs(self, a: int) -> list[list[int]]:
        """Nested canonical encoding: k_ext lists of e integers in [0, p)."""
        out = []
        for _ in range(self.k_ext):
            a, c = divmod(a, self.q)
            out.append(self.base_digits(c))
        return out

    def from_coeffs(self, coeffs: Sequence[Sequence[int]]) -> int:
        a = 0
        for c in reversed(coeffs):
            digit = 0
            for d in reversed(c):
                digit = digit * self.p + d
            a = a * self.q + digit
        return a

    def ext_coeffs(self, a: int) -> list[int]:
        """Coordinates of ``a`` over F_q in the basis 1, v, ..., v^{k-1}."""
        out = []
        for _ in range(self.k_ext):
            a, c = divmod(a, self.q)
            out.append(c)
        return out

    def from_ext_coeffs(self, coeffs: Sequence[int]) -> int:
        a = 0
        for c in reversed(coeffs):
            a = a * self.q + c
        return a

    def subfield(self) -> "FieldTower":
        """F_q as a field of its own; its integers coincide with the embedding."""
        return build_field(self.p, self.e, 1, tuple(self.base_modulus), None)

    def in_subfield(self, a: int) -> bool:
        return 0 <= a < self.q

    def elements(self) -> Iterator[int]:
        return iter(range(self.size))

    def random_element(self, rng: random.Random, nonzero: bool = False) -> int:
        return rng.randrange(1 if nonzero else 0, self.size)

    # ------------------------------------------------------------------
    # arithmetic

    def _build_tables(self) -> None:
        ops = self._ops
        gamma = self._find_primitive(ops.mul, ops_pow=getattr(ops, "pow", None))
        order = self.size - 1
        exp = [0] * (2 * order)
        log = [0] * self.size
        x = 1
        for i in range(order):
            exp[i] = x
            log[x] = i
            x = ops.mul(x, gamma)
        for i in range(order, 2 * order):
            exp[i] = exp[i - order]
        zech = [-1] * order
        for i in range(order):
            s = ops.add(1, exp[i])
            zech[i] = -1 if s == 0 else log[s]
        self._exp, self._log, self._zech = exp, log, zech
        self._gamma = gamma

    def _find_primitive(self, mul, ops_pow=None) -> int:
        order = self.size - 1
        if order == 1:
            return 1
        primes = factorize(order)

        def power(a, n):
            if ops_pow is not None:
                return ops_pow(a, n)
            return pow(a, n, self.p)

        for a in range(1, self.size):
            if all(power(a, order // r) != 1 for r in primes):
                return a
        raise AssertionError("multiplicative group has no generator")

    def add(self, a: int, b: int) -> int:
        if self._char2:
            return a ^ b
        if self._prime:
            return (a + b) % self.p
        if self._zech is not None:
            if a == 0:
                return b
            if b == 0:
                return a
            la = self._log[a]
            z = self._zech[self._log[b] - la]
            return 0 if z < 0 else self._exp[la + z]
        return self._ops.add(a, b)

    def neg(self, a: int) -> int:
        if self._char2 or a == 0:
            return a
        if self._prime:
            return self.p - a
        if self._log is not None:
            return self._exp[self._log[a] + (self.size - 1) // 2]
        return self._ops.neg(a)

    def sub(self, a: int, b: int) -> int:
        if self._char2:
            return a ^ b
        if self._prime:
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._prime:
            return a * b % self.p
        if self._log is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._ops.mul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self._prime:
            return pow(a, -1, self.p)
        if self._log is not None:
            return self._exp[(self.size - 1 - self._log[a]) % (self.size - 1)]
        return self._ops.inv(a)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        """``a**n`` for ``n >= 0``; exponents are reduced only for nonzero ``a``."""
        if n < 0:
            raise ValueError("negative exponent")
        if a == 0:
            return 1 if n == 0 else 0
        n %= self.size - 1
        if self._prime:
            return pow(a, n, self.p)
        if self._log is not None:
            return self._exp[self._log[a] * n % (self.size - 1)]
        return self._ops.pow(a, n)

    def frobenius(self, a: int) -> int:
        """sigma(a) = a^q."""
        return self.pow(a, self.q)

    def frobenius_power(self, a: int, i: int) -> int:
        """sigma^i(a) = a^(q^i)."""
        if a == 0:
            return 0
        return self.pow(a, pow(self.q, i % self.k_ext, self.size - 1))

    def norm(self, i: int, a: int) -> int:
        """N_i(a) = a^((q^i - 1)/(q - 1)), with N_0 = 1 everywhere and N_i(0) = 0 for i >= 1."""
        if i < 0:
            raise ValueError("norm index must be non-negative")
        if i == 0:
            return 1
        if a == 0:
            return 0
        # (q^i - 1)/(q - 1) = 1 + q + ... + q^{i-1}, reduced mod |F*|
        m = self.size - 1
        exponent = 0
        t = 1
        for _ in range(i):
            exponent = (exponent + t) % m
            t = t * self.q % m
        return self.pow(a, exponent)

    def conjugate(self, a: int, beta: int) -> int:
        """The beta-conjugate sigma(beta) * a * beta^{-1}."""
        if beta == 0:
            raise ZeroConjugator("conjugator must be nonzero")
        return self.mul(self.mul(self.frobenius(beta), a), self.inv(beta))

    def primitive_element(self) -> int:
        """Smallest-index element of multiplicative order q^k - 1."""
        if self._gamma is None:
            if self._prime:
                self._gamma = self._find_primitive(None)
            else:
                self._gamma = self._find_primitive(self._ops.mul, self._ops.pow)
        return self._gamma

    def order(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("zero has no multiplicative order")
        m = self.size - 1
        n = m
        for r in factorize(m):
            while n % r == 0 and self.pow(a, n // r) == 1:
                n //= r
        return n

    def conjugacy_partition(self, limit: int = ENUMERATION_LIMIT) -> list[list[int]]:
        """Classes ``[C_0, C_{gamma^0}, ..., C_{gamma^{q-2}}]`` as sorted lists.

        The multipliers ``sigma(beta)/beta`` are enumerated over every nonzero
        beta; the class of ``a`` is ``a`` times that set.
        """
        if self.size > limit:
            raise EnumerationBudgetExceeded("conjugacy enumeration", self.size, limit)
        multipliers = {self.conjugate(1, beta) for beta in range(1, self.size)}
        gamma = self.primitive_element()
        classes = [[0]]
        seen = {0}
        rep = 1
        for _ in range(self.q - 1):
            cls = sorted({self.mul(h, rep) for h in multipliers})
            if seen.intersection(cls):
                raise AssertionError("conjugacy classes overlap")
            seen.update(cls)
            classes.append(cls)
            rep = self.mul(rep, gamma)
        if len(seen) != self.size:
            raise AssertionError("conjugacy classes do not cover the field")
        return classes

    # ------------------------------------------------------------------
    # vectorised helpers (numpy int64 arrays of element indices)

    def vadd(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self._char2:
            return np.bitwise_xor(a, b)
        if self._prime:
            return (a + b) % self.p
        out = np.zeros(np.broadcast_shapes(np.shape(a), np.shape(b)), dtype=np.int64)
        place = 1
        p = self.p
        for _ in range(self.e * self.k_ext):
            out += ((a // place % p + b // place % p) % p) * place
            place *= p
        return out

    def mul_table(self, row: Sequence[int]) -> np.ndarray:
        """Array ``T`` with ``T[c] = c * row`` for every field element ``c``."""
        out = np.zeros((self.size, len(row)), dtype=np.int64)
        for c in range(1, self.size):
            out[c] = [self.mul(c, x) for x in row]
        return out


@functools.lru_cache(maxsize=64)
def build_field(p: int, e: int = 1, k_ext: int = 1,
                base_modulus: tuple[int, ...] | None = None,
                ext_modulus: tuple[int, ...] | None = None) -> FieldTower:
    """Cached :class:`FieldTower` constructor (fields are immutable)."""
    return FieldTower(p, e, k_ext, base_modulus, ext_modulus)


def field_build(p: int, e: int = 1, k_ext: int = 1) -> FieldTower:
    """Deterministic field with smallest-index moduli."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if e < 1 or k_ext < 1:
        raise DegreeZero("extension degrees must be >= 1")
    if p ** (e * k_ext) > MAX_FIELD_SIZE:
        raise SizeBudgetExceeded("field size", p ** (e * k_ext), MAX_FIELD_SIZE)
    return build_field(p, e, k_ext)


def field_from_dict(d: dict) -> FieldTower:
    p, e, k = int(d["p"]), int(d["e"]), int(d["k_ext"])
    tmp = build_field(p, e, 1, tuple(d["base_modulus"]), None)
    ext = tuple(tmp.from_coeffs([c]) for c in d["ext_modulus"])
    return build_field(p, e, k, tuple(d["base_modulus"]), ext)


def same_field(*fields: FieldTower) -> FieldTower:
    first = fields[0]
    for f in fields[1:]:
        if f is not first and f != first:
            raise FieldMismatch(f"{first!r} vs {f!r}")
    return first
