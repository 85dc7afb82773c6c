"""Dense univariate polynomial helpers over any field object.

A polynomial is a list of field elements, lowest degree first, with no
trailing zeros; ``[]`` is the zero polynomial.  The field object only has to
provide ``add``, ``sub``, ``neg``, ``mul`` and ``inv`` on integer elements
with ``0`` and ``1`` as the neutral elements.
"""

from __future__ import annotations

from typing import Sequence

Poly = list


def trim(f: Sequence[int]) -> Poly:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def degree(f: Sequence[int]) -> int:
    """Degree of ``f``; ``-1`` stands in for minus infinity."""
    return len(trim(f)) - 1


def add(F, f: Sequence[int], g: Sequence[int]) -> Poly:
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = F.add(out[i], c)
    return trim(out)


def sub(F, f: Sequence[int], g: Sequence[int]) -> Poly:
    out = list(f) + [0] * max(0, len(g) - len(f))
    for i, c in enumerate(g):
        out[i] = F.sub(out[i], c)
    return trim(out)


def scale(F, c: int, f: Sequence[int]) -> Poly:
    if c == 0:
        return []
    return trim([F.mul(c, a) for a in f])


def mul(F, f: Sequence[int], g: Sequence[int]) -> Poly:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            if b:
                out[i + j] = F.add(out[i + j], F.mul(a, b))
    return trim(out)


def divmod_(F, f: Sequence[int], g: Sequence[int]) -> tuple[Poly, Poly]:
    g = trim(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = trim(f)
    dg = len(g) - 1
    if len(r) - 1 < dg:
        return [], r
    lead_inv = F.inv(g[-1])
    quot = [0] * (len(r) - dg)
    while len(r) - 1 >= dg:
        shift = len(r) - 1 - dg
        c = F.mul(r[-1], lead_inv)
        quot[shift] = c
        for i, b in enumerate(g):
            r[i + shift] = F.sub(r[i + shift], F.mul(c, b))
        r = trim(r)
    return trim(quot), r


def mod(F, f: Sequence[int], g: Sequence[int]) -> Poly:
    return divmod_(F, f, g)[1]


def monic(F, f: Sequence[int]) -> Poly:
    f = trim(f)
    if not f:
        return []
    return scale(F, F.inv(f[-1]), f)


def gcd(F, f: Sequence[int], g: Sequence[int]) -> Poly:
    """Monic gcd by Euclid; ``gcd(0, 0)`` is the zero polynomial."""
    a, b = trim(f), trim(g)
    while b:
        a, b = b, mod(F, a, b)
    return monic(F, a)


def powmod(F, f: Sequence[int], exponent: int, m: Sequence[int]) -> Poly:
    result: Poly = [1]
    base = mod(F, f, m)
    while exponent:
        if exponent & 1:
            result = mod(F, mul(F, result, base), m)
        exponent >>= 1
        if exponent:
            base = mod(F, mul(F, base, base), m)
    return result


def evaluate(F, f: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def is_irreducible(F, f: Sequence[int], field_size: int) -> bool:
    """Ben-Or test: ``f`` is irreducible over F_s iff gcd(f, x^(s^i) - x) = 1
    for every i <= deg(f)/2."""
    f = monic(F, f)
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    x = [0, 1]
    h = x
    for _ in range(d // 2):
        h = powmod(F, h, field_size, f)
        if len(gcd(F, f, sub(F, h, x))) > 1:
            return False
    return True
