"""Skew polynomials F_{q^t}[x; sigma] with sigma the q-Frobenius.

Multiplication obeys ``x a = sigma(a) x``.  Evaluation at ``a`` is the
remainder of right division by ``x - a`` and equals ``sum f_i N_i(a)``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .errors import EnumerationBudgetExceeded, ZeroConjugator
from .fieldcore import FieldTower, same_field

AUDIT_LIMIT = 1 << 16


@dataclass(frozen=True)
class SkewPoly:
    field: FieldTower
    coeffs: tuple = ()

    def __post_init__(self):
        cs = list(self.coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        """Degree, or -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __add__(self, other: "SkewPoly") -> "SkewPoly":
        F = same_field(self.field, other.field)
        a, b = list(self.coeffs), list(other.coeffs)
        n = max(len(a), len(b))
        a += [0] * (n - len(a))
        b += [0] * (n - len(b))
        return SkewPoly(F, tuple(F.add(x, y) for x, y in zip(a, b)))

    def __sub__(self, other: "SkewPoly") -> "SkewPoly":
        F = other.field
        return self + SkewPoly(F, tuple(F.neg(c) for c in other.coeffs))

    def __mul__(self, other: "SkewPoly") -> "SkewPoly":
        return skew_mul(self, other)

    def __call__(self, a: int) -> int:
        return skew_eval(self, a)


def skew_mul(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    """(sum f_i x^i)(sum g_j x^j) = sum f_i sigma^i(g_j) x^(i+j)."""
    F = same_field(f.field, g.field)
    if not f.coeffs or not g.coeffs:
        return SkewPoly(F, ())
    out = [0] * (len(f.coeffs) + len(g.coeffs) - 1)
    for i, fi in enumerate(f.coeffs):
        if fi == 0:
            continue
        for j, gj in enumerate(g.coeffs):
            if gj:
                out[i + j] = F.add(out[i + j], F.mul(fi, F.frobenius_power(gj, i)))
    return SkewPoly(F, tuple(out))


def skew_eval(f: SkewPoly, a: int) -> int:
    F = f.field
    acc = 0
    for i, fi in enumerate(f.coeffs):
        if fi:
            acc = F.add(acc, F.mul(fi, F.norm(i, a)))
    return acc


def linearize(f: SkewPoly, a: int, beta: int) -> int:
    """D_{f,a}(beta) = f(^beta a) * beta, extended by D(0) = 0."""
    if beta == 0:
        return 0
    F = f.field
    return F.mul(skew_eval(f, F.conjugate(a, beta)), beta)


def vandermonde(F: FieldTower, k: int, omega: Sequence[int]) -> list[list[int]]:
    """k x |omega| matrix with entry (r, i) = N_r(a_i)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return [[F.norm(r, a) for a in omega] for r in range(k)]


def scaled_vandermonde(F: FieldTower, n: int, points: Sequence[tuple[int, int]]) -> list[list[int]]:
    """n x m matrix with entry (r, j) = N_r(^beta_j a_j) * beta_j for points (a_j, beta_j)."""
    cols = []
    for a, beta in points:
        if beta == 0:
            raise ZeroConjugator("scaling element must be nonzero")
        b = F.conjugate(a, beta)
        cols.append([F.mul(F.norm(r, b), beta) for r in range(n)])
    return linalg.transpose(cols) if cols else [[] for _ in range(n)]


def fq_rank(F: FieldTower, elements: Sequence[int]) -> int:
    """Rank over F_q of elements of F_{q^k} read as coordinate vectors."""
    if not elements:
        return 0
    Fq = F.subfield()
    return linalg.rank(Fq, [F.ext_coeffs(b) for b in elements])


@dataclass
class RootSpaceAudit:
    roots: list[int]
    classes: list[dict]  # one entry per conjugacy class met by the roots
    total_dimension: int
    degree: int

    @property
    def holds(self) -> bool:
        return self.total_dimension <= self.degree


def root_space_audit(f: SkewPoly, limit: int = AUDIT_LIMIT) -> RootSpaceAudit:
    """Enumerate the roots of f, group them by conjugacy class and measure
    each class's space of conjugators.

    For a nonzero class with representative ``a`` (smallest root in it) the
    space is ``{beta : f(^beta a) = 0} | {0}`` and its F_q-dimension is the
    coordinate rank of its elements; the set is also checked to have exactly
    ``q**dim`` elements, i.e. to really be a subspace.  The zero class
    contributes dimension 1 over F_{q^t} when 0 is a root.
    """
    F = f.field
    if F.size > limit:
        raise EnumerationBudgetExceeded("root enumeration", F.size, limit)
    if f.degree < 0:
        raise ValueError("the zero polynomial has every element as a root")
    roots = [a for a in range(F.size) if skew_eval(f, a) == 0]
    # a and b are conjugate iff a/b is a (q-1)th power, i.e. log a = log b mod (q-1)
    gamma = F.primitive_element()
    log = {}
    x = 1
    for i in range(F.size - 1):
        log[x] = i
        x = F.mul(x, gamma)
    groups: dict[int, list[int]] = defaultdict(list)
    for a in roots:
        groups[-1 if a == 0 else log[a] % (F.q - 1)].append(a)
    classes = []
    total = 0
    for key in sorted(groups):
        members = groups[key]
        if key == -1:
            classes.append({"class": "zero", "representative": 0, "dimension": 1, "size": 1})
            total += 1
            continue
        rep = members[0]
        member_set = set(members)
        space = [beta for beta in range(1, F.size) if F.conjugate(rep, beta) in member_set]
        dim = fq_rank(F, space)
        if len(space) + 1 != F.q**dim:
            raise AssertionError("conjugator set is not an F_q-subspace")
        classes.append({"class": key, "representative": rep, "dimension": dim,
                        "size": len(members)})
        total += dim
    return RootSpaceAudit(roots, classes, total, f.degree)
