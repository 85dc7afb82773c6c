from __future__ import annotations

import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mdpconv.errors import (
    DegreeZero,
    DivisionByZero,
    EnumerationBudgetExceeded,
    FieldMismatch,
    NotIrreducible,
    NotPrime,
    SizeBudgetExceeded,
    ZeroConjugator,
)
from mdpconv.fieldcore import (
    FieldTower,
    build_field,
    field_build,
    field_from_dict,
    prime_power,
    same_field,
)


# -- an independent model of F_49 = F_7[v]/(v^2 - 3): pairs (a, b) = a + b v


def _pmul(x, y):
    a, b = x
    c, d = y
    return ((a * c + 3 * b * d) % 7, (a * d + b * c) % 7)


def _ppow(x, n):
    out = (1, 0)
    for _ in range(n):
        out = _pmul(out, x)
    return out


def _idx(x):
    return x[0] + 7 * x[1]


def _pair(i):
    return (i % 7, i // 7)


V = 7  # index of v


def test_prime_field_arithmetic(f5):
    assert f5.add(3, 4) == 2
    assert f5.mul(3, 4) == 2
    assert f5.inv(3) == 2
    assert f5.sub(1, 3) == 3
    assert f5.pow(2, 0) == 1 and f5.pow(0, 0) == 1 and f5.pow(0, 5) == 0


def test_f49_worked_values(f49_v2_3):
    F = f49_v2_3
    assert F.mul(V, V) == 3
    inv_v = F.inv(V)
    assert inv_v == _idx((0, 5))  # 5v
    assert F.mul(V, inv_v) == 1
    assert F.frobenius(V) == _idx(_ppow((0, 1), 7)) == _idx((0, 6))
    assert F.frobenius(F.frobenius(V)) == V
    assert F.conjugate(1, V) == 6


def test_f49_norm_matches_pair_model(f49_v2_3):
    F = f49_v2_3
    # N_2(v) = v^(1 + 7) = (v^2)^4 = 3^4 = 4
    assert F.norm(2, V) == _idx(_ppow((0, 1), 8)) == 4
    for a in range(1, 49):
        for i in range(4):
            e = sum(7**t for t in range(i)) % 48
            assert F.norm(i, a) == _idx(_ppow(_pair(a), e))


def test_f49_multiplication_matches_pair_model(f49_v2_3):
    F = f49_v2_3
    for a, b in itertools.product(range(49), repeat=2):
        assert F.mul(a, b) == _idx(_pmul(_pair(a), _pair(b)))


def test_canonical_moduli():
    assert field_build(7, 1, 2).ext_modulus == [1, 0, 1]  # x^2 + 1 is the first irreducible
    assert field_build(2, 2, 1).base_modulus == [1, 1, 1]
    assert field_build(5).base_modulus == [0, 1]


def _brute_irreducible_quadratics(p):
    for c0, c1 in itertools.product(range(p), repeat=2):
        if all((x * x + c1 * x + c0) % p for x in range(p)):
            yield [c0, c1, 1]


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_smallest_quadratic_by_root_exhaustion(p):
    # canonical order is little-endian base p, i.e. c0 varies fastest
    cands = sorted(_brute_irreducible_quadratics(p), key=lambda f: f[0] + p * f[1])
    assert field_build(p, 1, 2).ext_modulus == cands[0]


def test_build_errors():
    with pytest.raises(NotPrime):
        field_build(4)
    with pytest.raises(DegreeZero):
        field_build(3, 0)
    with pytest.raises(SizeBudgetExceeded):
        field_build(2, 49)
    with pytest.raises(NotIrreducible):
        FieldTower(7, 1, 2, None, [1, 0, 6])  # x^2 - 1
    with pytest.raises(DivisionByZero):
        field_build(5).inv(0)
    with pytest.raises(ZeroConjugator):
        field_build(5).conjugate(1, 0)
    with pytest.raises(FieldMismatch):
        same_field(field_build(5), field_build(7))


def test_prime_power():
    assert prime_power(9) == (3, 2)
    assert prime_power(8) == (2, 3)
    assert prime_power(6) is None
    assert prime_power(1) is None


@pytest.mark.parametrize("q,gamma", [(5, 2), (7, 3)])
def test_primitive_prime(q, gamma):
    F = field_build(q)
    assert F.primitive_element() == gamma
    assert sorted(F.pow(gamma, i) for i in range(q - 1)) == list(range(1, q))


def test_primitive_f4():
    F = field_build(2, 2)
    g = F.primitive_element()
    assert g == 2
    assert F.order(g) == 3


@pytest.mark.parametrize("p,e,k,sizes", [
    (3, 1, 2, [1, 4, 4]),
    (5, 1, 2, [1, 6, 6, 6, 6]),
    (2, 1, 2, [1, 3]),
    (2, 2, 2, [1, 5, 5, 5]),
])
def test_conjugacy_partition(p, e, k, sizes):
    F = field_build(p, e, k)
    classes = F.conjugacy_partition()
    assert [len(c) for c in classes] == sizes
    assert sorted(x for c in classes for x in c) == list(range(F.size))
    gamma = F.primitive_element()
    for i, c in enumerate(classes[1:]):
        assert F.pow(gamma, i) in c
        # closure under conjugation
        for beta in range(1, F.size):
            assert F.conjugate(c[0], beta) in c


def test_conjugacy_budget():
    with pytest.raises(EnumerationBudgetExceeded):
        field_build(2, 1, 12).conjugacy_partition(limit=1000)


@pytest.mark.parametrize("p,e,k", [(3, 1, 2), (5, 1, 2), (7, 1, 2), (2, 2, 3), (2, 3, 2)])
def test_field_axioms_random(p, e, k):
    F = field_build(p, e, k)
    rng = random.Random(p * 100 + e * 10 + k)
    for _ in range(1000):
        a, b, c = (rng.randrange(F.size) for _ in range(3))
        assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1


@pytest.mark.parametrize("p,e,k", [(3, 1, 2), (5, 1, 2), (2, 2, 2), (2, 1, 4), (3, 1, 3)])
def test_frobenius_automorphism(p, e, k):
    F = field_build(p, e, k)
    for a in range(F.size):
        x = a
        for _ in range(k):
            x = F.frobenius(x)
        assert x == a
        assert F.frobenius_power(a, k) == a
    rng = random.Random(7)
    for _ in range(300):
        a, b = rng.randrange(F.size), rng.randrange(F.size)
        assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))
        assert F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b))
    for a in range(F.q):
        assert F.frobenius(a) == a


@pytest.mark.parametrize("p,e,k", [(3, 1, 2), (2, 2, 2), (7, 1, 2), (2, 1, 3)])
def test_norm_recursion(p, e, k):
    F = field_build(p, e, k)
    for a in range(F.size):
        assert F.norm(0, a) == 1
        assert F.norm(1, a) == a
        for i in range(2 * k + 1):
            assert F.norm(i + 1, a) == F.mul(F.frobenius(F.norm(i, a)), a)


def test_encoding_roundtrip():
    F = field_build(3, 2, 2)
    for a in range(F.size):
        coeffs = F.to_coeffs(a)
        assert len(coeffs) == 2 and all(len(c) == 2 for c in coeffs)
        assert all(0 <= x < 3 for c in coeffs for x in c)
        assert F.from_coeffs(coeffs) == a
        assert F.from_ext_coeffs(F.ext_coeffs(a)) == a


def test_field_dict_roundtrip(f49_v2_3):
    assert field_from_dict(f49_v2_3.to_dict()) == f49_v2_3
    F = field_build(2, 2, 3)
    assert field_from_dict(F.to_dict()) == F


def test_large_field_without_tables():
    F = field_build(2, 1, 20)
    rng = random.Random(3)
    for _ in range(50):
        a = rng.randrange(1, F.size)
        assert F.mul(a, F.inv(a)) == 1
        assert F.frobenius_power(a, 20) == a


def test_vectorised_add_matches_scalar():
    for F in (field_build(5), field_build(2, 3), field_build(3, 1, 2)):
        a = np.arange(F.size)[:, None]
        b = np.arange(F.size)[None, :]
        table = F.vadd(a, b)
        for x in range(F.size):
            for y in range(F.size):
                assert table[x, y] == F.add(x, y)
        row = [1, F.size - 1, 0]
        mt = F.mul_table(row)
        for c in range(F.size):
            assert list(mt[c]) == [F.mul(c, r) for r in row]


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 80), st.integers(0, 80), st.integers(0, 10**6))
def test_pow_laws_f81(a, b, n):
    F = build_field(3, 2, 2)
    assert F.pow(F.mul(a, b), n) == F.mul(F.pow(a, n), F.pow(b, n))
    if a:
        assert F.pow(a, n) == F.pow(a, n % 80)
