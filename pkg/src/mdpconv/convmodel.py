"""Convolutional codes given by a polynomial generator matrix.

Covers degree bookkeeping, the minimality and basicness tests, truncated
sliding matrices, exact column distances by exhaustive message enumeration,
and the two Singleton-type bounds.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from . import linalg
from .errors import BudgetExceeded, MinorBudgetExceeded, RankDeficientG0, SizeBudgetExceeded
from .fieldcore import FieldTower
from .linalg import PolyMat

SLIDING_LIMIT = 10**6
MINOR_GCD_LIMIT = 10**5
BRUTE_FORCE_LIMIT = 10**8
# messages handled per vectorised block in the brute-force search
_INNER_BLOCK = 1 << 15


@dataclass(frozen=True)
class CodeDescriptor:
    """An (n, k) convolutional code over ``field`` with generator G(D)."""

    n: int
    k: int
    field: FieldTower
    generator: PolyMat
    label: str | None = None
    provenance: dict = dc_field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not 0 < self.k < self.n:
            raise ValueError(f"need 0 < k < n, got k={self.k}, n={self.n}")
        if (self.generator.rows, self.generator.cols) != (self.k, self.n):
            raise ValueError("generator shape does not match (k, n)")
        if self.generator.field != self.field:
            raise ValueError("generator is over a different field")

    @classmethod
    def from_coeffs(cls, F: FieldTower, coeffs, label=None, provenance=None) -> "CodeDescriptor":
        g = PolyMat.from_coeffs(F, coeffs)
        return cls(g.cols, g.rows, F, g, label, dict(provenance or {}))

    @property
    def G(self) -> PolyMat:
        return self.generator


@dataclass(frozen=True)
class DegreeProfile:
    row_degrees: tuple
    memory: int
    constraint_length: int
    delta: int
    minimal: bool
    L: int
    M: int


def profile_params(n: int, k: int, delta: int) -> tuple[int, int]:
    """(L, M) = (floor(d/k) + floor(d/(n-k)), floor(d/k) + ceil(d/(n-k)))."""
    L = delta // k + delta // (n - k)
    M = delta // k + -(-delta // (n - k))
    return L, M


def profile(code: CodeDescriptor) -> DegreeProfile:
    """Row degrees, memory and constraint length; delta is reported as the
    constraint length, and ``minimal`` says whether that equals the degree."""
    nus = code.generator.row_degrees()
    nu = sum(max(d, 0) for d in nus)
    minimal, _ = is_minimal(code)
    L, M = profile_params(code.n, code.k, nu)
    return DegreeProfile(tuple(nus), max(nus), nu, nu, minimal, L, M)


def highest_order_matrix(g: PolyMat) -> list[list[int]]:
    nus = g.row_degrees()
    return [list(g.coeffs[max(nu, 0)][r]) for r, nu in enumerate(nus)]


def is_minimal(code: CodeDescriptor) -> tuple[bool, list[list[int]]]:
    """G(D) is minimal iff its highest-order coefficient matrix has rank k."""
    gbar = highest_order_matrix(code.generator)
    if any(d < 0 for d in code.generator.row_degrees()):
        return False, gbar
    return linalg.rank(code.field, gbar) == code.k, gbar


def full_size_minors(g: PolyMat, limit: int = MINOR_GCD_LIMIT):
    """Yield ``(columns, det)`` for every full-size minor of g(D) as a polynomial."""
    count = math.comb(g.cols, g.rows)
    if count > limit:
        raise MinorBudgetExceeded("full-size polynomial minors", count, limit)
    entries = g.entries()
    for cols in itertools.combinations(range(g.cols), g.rows):
        yield cols, linalg.poly_det(g.field, [[row[c] for c in cols] for row in entries])


def is_basic(code: CodeDescriptor, limit: int = MINOR_GCD_LIMIT) -> bool:
    """True iff the gcd of all k x k minors of G(D) is a nonzero constant."""
    F = code.field
    g: list[int] = []
    for _, m in full_size_minors(code.generator, limit):
        if not m:
            continue
        g = linalg.poly_gcd(F, g, m) if g else linalg.poly_gcd(F, m, [])
        if len(g) == 1:
            return True
    return False


def sliding(pm: PolyMat, j: int, kind: str = "G", limit: int = SLIDING_LIMIT) -> list[list[int]]:
    """The j-th truncated sliding matrix.

    ``kind="G"`` gives the upper block-triangular G_j^c with block (r, c) =
    G_{c-r}; ``kind="H"`` the lower block-triangular H_j^c with block (r, c) =
    H_{r-c}.
    """
    if j < 0:
        raise ValueError("window index must be >= 0")
    rows, cols = pm.rows * (j + 1), pm.cols * (j + 1)
    if rows * cols > limit:
        raise SizeBudgetExceeded("sliding matrix entries", rows * cols, limit)
    out = linalg.zeros(rows, cols)
    for br in range(j + 1):
        for bc in range(j + 1):
            d = bc - br if kind == "G" else br - bc
            if d < 0 or d > pm.degree:
                continue
            block = pm.coeffs[d]
            for r in range(pm.rows):
                out[br * pm.rows + r][bc * pm.cols:(bc + 1) * pm.cols] = block[r]
    return out


def bounds(n: int, k: int, delta: int, j: int) -> tuple[int, int]:
    """(generalized Singleton bound on the free distance, column-distance bound at j)."""
    if not 0 < k < n:
        raise ValueError("need 0 < k < n")
    return (n - k) * (delta // k + 1) + delta + 1, (n - k) * (j + 1) + 1


def column_bound(n: int, k: int, j: int) -> int:
    return (n - k) * (j + 1) + 1


def message_count(field_size: int, k: int, j: int) -> int:
    """Number of normalized messages (u_0 with leading 1, u_1..u_j free)."""
    return (field_size**k - 1) // (field_size - 1) * field_size ** (k * j)


def _scan_prefixes(args):
    """Worker: minimum codeword weight over a range of outer prefixes."""
    F, base, outer_rows, inner_table, lo, hi = args
    Q = F.size
    best = None
    outer_tables = [F.mul_table(r) for r in outer_rows]
    for idx in range(lo, hi):
        y = base.copy()
        r = idx
        for t in range(len(outer_rows) - 1, -1, -1):
            r, c = divmod(r, Q)
            if c:
                y = F.vadd(y, outer_tables[t][c])
        w = int(np.count_nonzero(F.vadd(inner_table, y[None, :]), axis=1).min())
        if best is None or w < best:
            best = w
    return best


def _combination_table(F: FieldTower, rows: Sequence[Sequence[int]], ncols: int) -> np.ndarray:
    """All F-linear combinations of ``rows`` (last row varies fastest)."""
    table = np.zeros((1, ncols), dtype=np.int64)
    for row in rows:
        mt = F.mul_table(row)
        table = F.vadd(table[:, None, :], mt[None, :, :]).reshape(-1, ncols)
    return table


def column_distance_bruteforce(code: CodeDescriptor, j: int, budget: int = BRUTE_FORCE_LIMIT,
                               workers: int = 1) -> int:
    """Exact d_j^c: minimum weight of (u_0, ..., u_j) G_j^c over u_0 != 0.

    Weight is invariant under scaling, so u_0 is normalized to have its first
    nonzero coordinate equal to 1.  The trailing message coordinates are
    enumerated as one numpy table; the leading ones in a Python loop that is
    split across ``workers`` processes.  The result does not depend on
    ``workers``.
    """
    F = code.field
    k, n = code.k, code.n
    g0 = code.generator.coeff(0)
    if linalg.rank(F, g0) < k:
        raise RankDeficientG0("d_j^c needs a full-rank G_0")
    total = message_count(F.size, k, j)
    if total > budget:
        raise BudgetExceeded("column distance messages", total, budget)
    gc = sliding(code.generator, j, "G")
    ncols = n * (j + 1)
    Q = F.size
    best = None
    for lead in range(k):
        base = np.array(gc[lead], dtype=np.int64)
        free_rows = gc[lead + 1:]
        # choose the inner block so that the numpy table stays bounded
        t = 0
        while t < len(free_rows) and Q ** (t + 1) <= _INNER_BLOCK:
            t += 1
        if t == 0 and free_rows:
            t = 1
        inner_rows = free_rows[len(free_rows) - t:]
        outer_rows = free_rows[:len(free_rows) - t]
        inner = _combination_table(F, inner_rows, ncols)
        n_outer = Q ** len(outer_rows)
        if workers > 1 and n_outer > 1:
            step = -(-n_outer // workers)
            chunks = [(F, base, outer_rows, inner, lo, min(lo + step, n_outer))
                      for lo in range(0, n_outer, step)]
            with ProcessPoolExecutor(max_workers=workers) as ex:
                results = list(ex.map(_scan_prefixes, chunks))
        else:
            results = [_scan_prefixes((F, base, outer_rows, inner, 0, n_outer))]
        for w in results:
            if w is not None and (best is None or w < best):
                best = w
    return best
