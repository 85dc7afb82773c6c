from __future__ import annotations

import itertools
import random

import pytest

from mdpconv import linalg
from mdpconv.errors import EnumerationBudgetExceeded, FieldMismatch, ZeroConjugator
from mdpconv.fieldcore import field_build
from mdpconv.skewpoly import (
    SkewPoly,
    fq_rank,
    linearize,
    root_space_audit,
    scaled_vandermonde,
    skew_eval,
    skew_mul,
    vandermonde,
)

V = 7  # v in F_7[v]/(v^2 - 3)


def _right_remainder(f: SkewPoly, a: int) -> tuple[SkewPoly, int]:
    """Right division f = Q (x - a) + r; returns (Q, r)."""
    F = f.field
    c = list(f.coeffs)
    d = len(c) - 1
    if d < 1:
        return SkewPoly(F, ()), (c[0] if c else 0)
    quo = [0] * d
    for i in range(d, 0, -1):
        # leading term c_i x^i = c_i x^{i-1} (x - a) + c_i sigma^{i-1}(a) x^{i-1}
        quo[i - 1] = c[i]
        c[i - 1] = F.add(c[i - 1], F.mul(c[i], F.frobenius_power(a, i - 1)))
        c[i] = 0
    return SkewPoly(F, tuple(quo)), c[0]


def _rand_poly(F, rng, deg):
    return SkewPoly(F, tuple(rng.randrange(F.size) for _ in range(deg + 1)))


def test_defining_relation(f49_v2_3):
    F = f49_v2_3
    x = SkewPoly(F, (0, 1))
    prod = x * SkewPoly(F, (V,))
    assert prod.coeffs == (0, 6 * 7)  # 6v x
    f = SkewPoly(F, (3, 5, 1))
    assert f * SkewPoly(F, (1,)) == f


def test_eval_examples(f49_v2_3):
    F = f49_v2_3
    assert skew_eval(SkewPoly(F, (9,)), 30) == 9
    assert skew_eval(SkewPoly(F, (0, 0, 1)), V) == F.norm(2, V) == 4
    f = SkewPoly(F, (11, 5, 23))
    assert f(0) == 11


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        SkewPoly(field_build(5), (1,)) * SkewPoly(field_build(7), (1,))


@pytest.mark.parametrize("fld", [(3, 1, 2), (2, 1, 3), (5, 1, 2)])
def test_ring_axioms(fld):
    F = field_build(*fld)
    rng = random.Random(1)
    for _ in range(100):
        f, g, h = (_rand_poly(F, rng, rng.randint(0, 3)) for _ in range(3))
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h
        assert (f + g) * h == f * h + g * h
        if f.degree >= 0 and g.degree >= 0:
            assert (f * g).degree == f.degree + g.degree


@pytest.mark.parametrize("fld", [(3, 1, 2), (5, 1, 2), (2, 2, 2), (7, 1, 2)])
def test_eval_equals_right_division_remainder(fld):
    F = field_build(*fld)
    rng = random.Random(5)
    for _ in range(200):
        f = _rand_poly(F, rng, rng.randint(0, 4))
        a = rng.randrange(F.size)
        quo, r = _right_remainder(f, a)
        assert quo * SkewPoly(F, (F.neg(a), 1)) + SkewPoly(F, (r,)) == f
        assert skew_eval(f, a) == r
        assert skew_eval(f - SkewPoly(F, (r,)), a) == 0


@pytest.mark.parametrize("fld", [(3, 1, 2), (5, 1, 2), (7, 1, 2)])
def test_linearize_is_fq_linear(fld):
    F = field_build(*fld)
    rng = random.Random(8)
    for _ in range(1000):
        f = _rand_poly(F, rng, rng.randint(0, 3))
        a = rng.randrange(F.size)
        b1, b2 = rng.randrange(F.size), rng.randrange(F.size)
        l1, l2 = rng.randrange(F.q), rng.randrange(F.q)
        lhs = linearize(f, a, F.add(F.mul(l1, b1), F.mul(l2, b2)))
        rhs = F.add(F.mul(l1, linearize(f, a, b1)), F.mul(l2, linearize(f, a, b2)))
        assert lhs == rhs


def test_linearize_examples(f49_v2_3):
    F = f49_v2_3
    f = SkewPoly(F, (3, 1, 5))
    assert linearize(f, 12, 1) == f(12)
    assert linearize(SkewPoly(F, (1,)), 12, 33) == 33
    assert linearize(f, 12, 0) == 0


def test_vandermonde_examples(f5):
    assert vandermonde(f5, 1, [1, 2, 3]) == [[1, 1, 1]]
    assert vandermonde(f5, 2, [3]) == [[1], [3]]
    F = field_build(3, 1, 2)
    m = vandermonde(F, 2, [4, 4])
    assert linalg.rank(F, m) == 1


def test_scaled_vandermonde_examples(f49_v2_3):
    F = f49_v2_3
    pts = [(5, 1), (20, 1)]
    assert scaled_vandermonde(F, 2, pts) == vandermonde(F, 2, [5, 20])
    a = 5
    assert linalg.rank(F, scaled_vandermonde(F, 2, [(a, 1), (a, V)])) == 2
    assert linalg.rank(F, scaled_vandermonde(F, 2, [(a, V), (a, F.mul(3, V))])) == 1
    with pytest.raises(ZeroConjugator):
        scaled_vandermonde(F, 2, [(a, 0)])


def test_scaled_vandermonde_rank_criterion_exhaustive_f9():
    # one class, two scaling elements: full rank iff they are F_3-independent
    F = field_build(3, 1, 2)
    a = F.primitive_element()
    for b1, b2 in itertools.product(range(1, 9), repeat=2):
        full = linalg.rank(F, scaled_vandermonde(F, 2, [(a, b1), (a, b2)])) == 2
        assert full == (fq_rank(F, [b1, b2]) == 2)


def test_scaled_vandermonde_rank_criterion_random_f25():
    # up to q - 2 = 3 classes; full column rank iff every class's betas are F_5-independent
    F = field_build(5, 1, 2)
    gamma = F.primitive_element()
    rng = random.Random(4)
    for _ in range(300):
        classes = rng.sample(range(4), rng.randint(1, 3))
        pts = []
        independent = True
        for c in classes:
            betas = [rng.randrange(1, 25) for _ in range(rng.randint(1, 2))]
            independent = independent and fq_rank(F, betas) == len(betas)
            pts += [(F.pow(gamma, c), b) for b in betas]
        m = scaled_vandermonde(F, len(pts), pts)
        assert (linalg.rank(F, m) == len(pts)) == independent


def test_root_space_examples(f49_v2_3):
    F = f49_v2_3
    a = 17
    audit = root_space_audit(SkewPoly(F, (F.neg(a), 1)))
    assert audit.roots == [a]
    assert len(audit.classes) == 1 and audit.classes[0]["dimension"] == 1
    const = root_space_audit(SkewPoly(F, (4,)))
    assert const.roots == [] and const.total_dimension == 0 and const.holds


@pytest.mark.parametrize("fld", [(3, 1, 2), (5, 1, 2)])
def test_root_space_inequality_random(fld):
    F = field_build(*fld)
    rng = random.Random(12)
    for _ in range(250):
        f = _rand_poly(F, rng, rng.randint(1, 4))
        if f.degree < 1:
            continue
        audit = root_space_audit(f)
        assert audit.holds
        assert audit.total_dimension <= f.degree


def test_root_space_budget():
    F = field_build(2, 1, 17)
    with pytest.raises(EnumerationBudgetExceeded):
        root_space_audit(SkewPoly(F, (1, 1)))


def test_skew_mul_function_matches_operator(f5):
    f, g = SkewPoly(f5, (1, 2)), SkewPoly(f5, (3, 0, 4))
    assert skew_mul(f, g) == f * g
    # over a prime field sigma is the identity, so the ring is commutative
    assert f * g == g * f
