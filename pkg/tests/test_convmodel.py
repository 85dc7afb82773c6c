from __future__ import annotations

import itertools
import random

import pytest

from mdpconv import linalg
from mdpconv.convmodel import (
    CodeDescriptor,
    bounds,
    column_distance_bruteforce,
    is_basic,
    is_minimal,
    message_count,
    profile,
    profile_params,
    sliding,
)
from mdpconv.errors import BudgetExceeded, MinorBudgetExceeded, RankDeficientG0, SizeBudgetExceeded
from mdpconv.fieldcore import field_build
from mdpconv.linalg import PolyMat


def naive_column_distance(code: CodeDescriptor, j: int) -> int:
    """Every (u_0, ..., u_j) with u_0 != 0, no normalisation, scalar arithmetic."""
    F = code.field
    k, n = code.k, code.n
    gc = sliding(code.generator, j)
    best = None
    for u in itertools.product(range(F.size), repeat=k * (j + 1)):
        if not any(u[:k]):
            continue
        w = 0
        for c in range(n * (j + 1)):
            acc = 0
            for r, ur in enumerate(u):
                if ur and gc[r][c]:
                    acc = F.add(acc, F.mul(ur, gc[r][c]))
            w += acc != 0
        best = w if best is None else min(best, w)
    return best


def random_code(F, rng, n, k, m, full_rank_g0=True):
    while True:
        coeffs = [[[rng.randrange(F.size) for _ in range(n)] for _ in range(k)]
                  for _ in range(m + 1)]
        if not full_rank_g0 or linalg.rank(F, coeffs[0]) == k:
            return CodeDescriptor.from_coeffs(F, coeffs)


def test_profile_examples(example_code, f5):
    p = profile(example_code)
    assert (p.row_degrees, p.memory, p.delta, p.L, p.M, p.minimal) == ((1,), 1, 1, 1, 2, True)
    const = CodeDescriptor.from_coeffs(f5, [[[1, 2, 3]]])
    p = profile(const)
    assert (p.delta, p.L, p.M) == (0, 0, 0)
    assert profile_params(2, 1, 1) == (2, 2)


@pytest.mark.parametrize("n,k,delta", [(n, k, d) for n in range(2, 8) for k in range(1, n)
                                       for d in range(0, 7)])
def test_profile_params_formula(n, k, delta):
    L, M = profile_params(n, k, delta)
    assert L == delta // k + delta // (n - k)
    assert M == delta // k + (delta + n - k - 1) // (n - k)
    assert M - L in (0, 1)


def test_is_minimal(example_code, f5):
    ok, gbar = is_minimal(example_code)
    assert ok and gbar == [[1, 1, 1]]
    dd = CodeDescriptor.from_coeffs(f5, [[[0, 0]], [[1, 1]]])
    assert is_minimal(dd)[0]
    # equal top rows: not minimal
    bad = CodeDescriptor.from_coeffs(f5, [[[1, 0, 1], [0, 1, 1]], [[1, 2, 3], [1, 2, 3]]])
    assert not is_minimal(bad)[0]


def test_is_basic(example_code, f5):
    assert is_basic(example_code)
    not_basic = CodeDescriptor(2, 1, f5, PolyMat.from_entries(f5, [[[0, 1], [0, 0, 1]]]))
    assert not is_basic(not_basic)
    padded = CodeDescriptor.from_coeffs(f5, [[[1, 0, 2], [0, 1, 3]], [[0, 0, 0], [0, 0, 0]]])
    assert is_basic(padded)
    with pytest.raises(MinorBudgetExceeded):
        is_basic(example_code, limit=2)


def test_sliding_examples(example_code, f5):
    assert sliding(example_code.generator, 0) == [[1, 2, 3]]
    assert sliding(example_code.generator, 1) == [[1, 2, 3, 1, 1, 1], [0, 0, 0, 1, 2, 3]]
    h = PolyMat.from_coeffs(f5, [[[1, 2, 0]], [[3, 4, 1]]])
    assert sliding(h, 1, "H") == [[1, 2, 0, 0, 0, 0], [3, 4, 1, 1, 2, 0]]
    with pytest.raises(SizeBudgetExceeded):
        sliding(example_code.generator, 50, limit=100)
    with pytest.raises(ValueError):
        sliding(example_code.generator, -1)


def test_bounds_examples():
    assert bounds(3, 1, 1, 1) == (6, 5)
    assert bounds(2, 1, 1, 2) == (4, 4)
    # (n - k)(floor(delta/k) + 1) + delta + 1 = 3 * 2 + 2 + 1
    assert bounds(5, 2, 2, 1) == (9, 7)


def test_distance_examples(example_code):
    assert [column_distance_bruteforce(example_code, j) for j in range(4)] == [3, 5, 6, 6]
    F3 = field_build(3)
    assert column_distance_bruteforce(CodeDescriptor.from_coeffs(F3, [[[1, 0, 1]]]), 0) == 2


def test_distance_errors(f5):
    with pytest.raises(RankDeficientG0):
        column_distance_bruteforce(CodeDescriptor.from_coeffs(f5, [[[0, 0]], [[1, 1]]]), 1)
    code = CodeDescriptor.from_coeffs(f5, [[[1, 2, 3]], [[1, 1, 1]]])
    with pytest.raises(BudgetExceeded):
        column_distance_bruteforce(code, 3, budget=10)


def test_message_count():
    assert message_count(5, 1, 1) == 5
    assert message_count(4, 2, 0) == 5
    assert message_count(11, 2, 1) == 12 * 121


@pytest.mark.parametrize("fld", [(2, 1, 1), (3, 1, 1), (5, 1, 1), (2, 2, 1)])
def test_bruteforce_matches_naive(fld):
    F = field_build(*fld)
    rng = random.Random(fld[0] * 10 + fld[1])
    for _ in range(25):
        n = rng.randint(2, 4)
        k = rng.randint(1, min(2, n - 1))
        code = random_code(F, rng, n, k, rng.randint(0, 2))
        for j in range(3):
            if F.size ** (k * (j + 1)) > 5000:
                break
            assert column_distance_bruteforce(code, j) == naive_column_distance(code, j)


def test_bruteforce_large_inner_table():
    # exercises the split into an outer Python loop and an inner numpy table
    F = field_build(11, 1, 2)
    rng = random.Random(0)
    code = random_code(F, rng, 5, 2, 1)
    d1 = column_distance_bruteforce(code, 1)
    d1_par = column_distance_bruteforce(code, 1, workers=2)
    assert d1 == d1_par
    assert d1 <= bounds(5, 2, 2, 1)[1]


@pytest.mark.parametrize("fld,count", [((5, 1, 1), 60), ((7, 1, 2), 40)])
def test_cascade_monotone_and_bounded(fld, count):
    F = field_build(*fld)
    rng = random.Random(99)
    for _ in range(count):
        n = rng.randint(2, 5)
        k = rng.randint(1, min(2, n - 1))
        code = random_code(F, rng, n, k, rng.randint(0, 2))
        ds = []
        for j in range(3):
            if message_count(F.size, k, j) > 2 * 10**5:
                break
            ds.append(column_distance_bruteforce(code, j))
        for j, d in enumerate(ds):
            bound = (n - k) * (j + 1) + 1
            assert d <= bound
            if d == bound:
                assert all(ds[i] == (n - k) * (i + 1) + 1 for i in range(j))
        assert all(a <= b for a, b in zip(ds, ds[1:]))


def test_descriptor_validation(f5):
    with pytest.raises(ValueError):
        CodeDescriptor.from_coeffs(f5, [[[1], [1]]])  # k = n
    g = PolyMat.from_coeffs(f5, [[[1, 2, 3]]])
    with pytest.raises(ValueError):
        CodeDescriptor(3, 2, f5, g)
    with pytest.raises(ValueError):
        CodeDescriptor(3, 1, field_build(7), g)
