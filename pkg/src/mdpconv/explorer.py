"""Small-scale searches for MDP codes and the subspace probe on found codes.

Searches walk generator coefficient tuples in canonical order, i.e. the
order of ``itertools.product`` over the flattened (power, row, column)
coordinates with the first coordinate most significant.  Cheap filters run
first (row-degree pattern, MDS-ness of G_0, minimality) and only survivors
get the minor checks.

The probe builds, for column sets A_1..A_L and k-subsets B_j of A_j, the
square matrix P on columns U (A_j + jn) of G_L^c and eliminates each
column of A_j minus B_j against the B-columns of blocks 1..j.  What is left
in the first block row are the k x (|A_j| - k) matrices S_j.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Iterator, Sequence

from . import linalg
from .convmodel import CodeDescriptor, profile, profile_params, sliding as _sliding
from .errors import EnumerationBudgetExceeded, InvalidConfig, NotMDP
from .fieldcore import FieldTower
from .linalg import PolyMat
from .mdpcheck import MINOR_LIMIT, minor_check_G

SEARCH_LIMIT = 10**8
PROBE_CONFIG_LIMIT = 10**4
_CHUNK = 4096


class LCG64:
    """64-bit linear congruential generator with pinned constants.

    state <- a * state + c mod 2^64 with a = 6364136223846793005 and
    c = 1442695040888963407; a draw below ``m`` is (state >> 33) % m.
    """

    A = 6364136223846793005
    C = 1442695040888963407
    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self.MASK

    def next(self) -> int:
        self.state = (self.A * self.state + self.C) & self.MASK
        return self.state

    def below(self, m: int) -> int:
        return (self.next() >> 33) % m


@dataclass(frozen=True)
class SearchSpace:
    """Generators k x n over ``field`` with memory ``m``.

    ``row_degrees`` fixes the exact degree of every row; by default rows get
    degrees floor(delta/k) or ceil(delta/k) with the larger ones first, where
    delta defaults to k*m.
    """

    n: int
    k: int
    m: int
    field: FieldTower
    row_degrees: tuple | None = None

    def __post_init__(self):
        if not 0 < self.k < self.n or self.m < 0:
            raise ValueError("need 0 < k < n and m >= 0")
        if self.row_degrees is not None:
            if len(self.row_degrees) != self.k or max(self.row_degrees) != self.m \
                    or min(self.row_degrees) < 0:
                raise ValueError("row degrees must have length k and maximum m")

    @classmethod
    def for_degree(cls, n: int, k: int, delta: int, field: FieldTower) -> "SearchSpace":
        base, extra = divmod(delta, k)
        degs = tuple(base + (1 if r < extra else 0) for r in range(k))
        return cls(n, k, max(degs), field, degs)

    @property
    def degrees(self) -> tuple:
        return self.row_degrees if self.row_degrees is not None else (self.m,) * self.k

    @property
    def delta(self) -> int:
        return sum(self.degrees)

    @property
    def L(self) -> int:
        return profile_params(self.n, self.k, self.delta)[0]

    @property
    def width(self) -> int:
        return self.k * self.n * (self.m + 1)

    @property
    def total(self) -> int:
        return self.field.size**self.width

    def to_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "m": self.m, "row_degrees": list(self.degrees),
                "field": self.field.to_dict()}

    def fingerprint(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def decode(self, flat: Sequence[int]) -> list:
        """Flattened (power, row, col) tuple -> coefficient blocks."""
        k, n = self.k, self.n
        return [[list(flat[(t * k + r) * n:(t * k + r + 1) * n]) for r in range(k)]
                for t in range(self.m + 1)]

    def index_of(self, flat: Sequence[int]) -> int:
        idx = 0
        for x in flat:
            idx = idx * self.field.size + x
        return idx

    def candidate(self, index: int) -> list[int]:
        Q = self.field.size
        out = [0] * self.width
        for pos in range(self.width - 1, -1, -1):
            index, out[pos] = divmod(index, Q)
        return out


@dataclass
class SearchResult:
    found: bool
    mode: str
    fingerprint: str
    scanned: int
    total: int
    descriptor: CodeDescriptor | None = None
    index: int | None = None
    filtered: dict = dc_field(default_factory=dict)
    seed: int | None = None

    def to_dict(self) -> dict:
        from .descriptor import descriptor_to_dict

        d = {"found": self.found, "mode": self.mode, "fingerprint": self.fingerprint,
             "scanned": self.scanned, "total": self.total, "index": self.index,
             "filtered": dict(sorted(self.filtered.items()))}
        if self.seed is not None:
            d["seed"] = self.seed
        if self.descriptor is not None:
            d["descriptor"] = descriptor_to_dict(self.descriptor)
        return d


def _passes(space: SearchSpace, flat: Sequence[int], stats: dict | None,
            minor_budget: int = MINOR_LIMIT) -> bool:
    F = space.field
    k, n = space.k, space.n
    blocks = space.decode(flat)

    def reject(reason: str) -> bool:
        if stats is not None:
            stats[reason] = stats.get(reason, 0) + 1
        return False

    for r, d in enumerate(space.degrees):
        if not any(blocks[d][r]) or any(any(blocks[t][r]) for t in range(d + 1, space.m + 1)):
            return reject("row_degrees")
    g0 = blocks[0]
    for cols in itertools.combinations(range(n), k):
        if linalg.det(F, [[row[c] for c in cols] for row in g0]) == 0:
            return reject("g0_not_mds")
    gbar = [blocks[d][r] for r, d in enumerate(space.degrees)]
    if linalg.rank(F, gbar) < k:
        return reject("not_minimal")
    g = PolyMat.from_coeffs(F, blocks)
    # j = 0 is the G_0 MDS test already done
    for j in range(1, space.L + 1):
        if not minor_check_G(g, j, minor_budget).ok:
            return reject(f"minor_j{j}")
    return True


def _scan_range(args):
    space, lo, hi, minor_budget = args
    stats: dict = {}
    Q = space.field.size
    flat = space.candidate(lo)
    for idx in range(lo, hi):
        if _passes(space, flat, stats, minor_budget):
            return idx, stats
        # increment the base-Q counter, last coordinate fastest
        pos = len(flat) - 1
        while pos >= 0:
            flat[pos] += 1
            if flat[pos] < Q:
                break
            flat[pos] = 0
            pos -= 1
    return None, stats


def _merge(a: dict, b: dict) -> None:
    for key, v in b.items():
        a[key] = a.get(key, 0) + v


def search_mdp(space: SearchSpace, mode: str = "exhaustive", seed: int = 0, trials: int = 1000,
               budget: int = SEARCH_LIMIT, minor_budget: int = MINOR_LIMIT,
               workers: int = 1) -> SearchResult:
    """First MDP generator in ``space``, or a certificate that none was found.

    Exhaustive mode returns the canonically first passing candidate (so the
    result is independent of ``workers``) or proves there is none.  The
    scan count is the canonical index of the hit plus one, or the whole
    space.  Randomized mode draws ``trials`` candidates from :class:`LCG64`,
    sampling only coefficients allowed by the row-degree pattern.
    """
    if mode == "exhaustive":
        return _search_exhaustive(space, budget, minor_budget, workers)
    if mode == "randomized":
        return _search_randomized(space, seed, trials, minor_budget)
    raise ValueError(f"unknown search mode {mode!r}")


def _search_exhaustive(space, budget, minor_budget, workers) -> SearchResult:
    total = space.total
    if total > budget:
        raise EnumerationBudgetExceeded("search candidates", total, budget)
    stats: dict = {}
    chunks = [(space, lo, min(lo + _CHUNK, total), minor_budget) for lo in range(0, total, _CHUNK)]
    hit = None
    if workers > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            for start in range(0, len(chunks), workers):
                for idx, st in ex.map(_scan_range, chunks[start:start + workers]):
                    if hit is None:
                        _merge(stats, st)
                        hit = idx
                if hit is not None:
                    break
    else:
        for ch in chunks:
            hit, st = _scan_range(ch)
            _merge(stats, st)
            if hit is not None:
                break
    res = SearchResult(hit is not None, "exhaustive", space.fingerprint(),
                       total if hit is None else hit + 1, total, filtered=stats)
    if hit is not None:
        res.index = hit
        res.descriptor = _descriptor(space, space.candidate(hit), {"search": "exhaustive",
                                                                   "index": hit})
    return res


def _search_randomized(space, seed, trials, minor_budget) -> SearchResult:
    rng = LCG64(seed)
    Q = space.field.size
    k, n = space.k, space.n
    stats: dict = {}
    for trial in range(trials):
        flat = [0] * space.width
        for t in range(space.m + 1):
            for r in range(k):
                if t > space.degrees[r]:
                    continue
                for c in range(n):
                    flat[(t * k + r) * n + c] = rng.below(Q)
        if _passes(space, flat, stats, minor_budget):
            idx = space.index_of(flat)
            res = SearchResult(True, "randomized", space.fingerprint(), trial + 1, space.total,
                               index=idx, filtered=stats, seed=seed)
            res.descriptor = _descriptor(space, flat, {"search": "randomized", "seed": seed,
                                                       "trial": trial})
            return res
    return SearchResult(False, "randomized", space.fingerprint(), trials, space.total,
                        filtered=stats, seed=seed)


def _descriptor(space: SearchSpace, flat, prov) -> CodeDescriptor:
    return CodeDescriptor.from_coeffs(space.field, space.decode(flat),
                                      label=f"search ({space.n},{space.k},{space.delta})",
                                      provenance=prov)


def min_field_frontier(n: int, k: int, delta: int, fields: Sequence[FieldTower],
                       budget: int = SEARCH_LIMIT, workers: int = 1) -> dict:
    """Search each field in ascending size; q_min is the first with a hit.

    Rows carry ``n ** (L - 1)`` as the growth reference of the lower bound
    (shown for context, it is an asymptotic order and not a threshold).
    """
    L = profile_params(n, k, delta)[0]
    rows = []
    q_min = None
    for F in sorted(fields, key=lambda f: f.size):
        space = SearchSpace.for_degree(n, k, delta, F)
        res = search_mdp(space, "exhaustive", budget=budget, workers=workers)
        rows.append({"q": F.size, "found": res.found, "scanned": res.scanned,
                     "total": res.total, "fingerprint": res.fingerprint,
                     "growth_reference": n ** (L - 1) if L >= 1 else 1})
        if res.found and q_min is None:
            q_min = F.size
    return {"n": n, "k": k, "delta": delta, "L": L, "q_min": q_min, "rows": rows}


# ----------------------------------------------------------------------
# subspace probe


@dataclass(frozen=True)
class ProbeConfig:
    """1-based column sets A_1..A_L and k-subsets B_j of A_j."""

    A: tuple
    B: tuple

    def validate(self, n: int, k: int, L: int) -> None:
        if L < 1:
            raise InvalidConfig("the probe needs L >= 1")
        if len(self.A) != L or len(self.B) != L:
            raise InvalidConfig(f"need {L} sets A_j and B_j")
        lo, hi = k // L, -(-k // L)
        if sum(len(a) for a in self.A) != k * (L + 1):
            raise InvalidConfig("sizes of A_j must add up to k(L+1)")
        for a, b in zip(self.A, self.B):
            if len(set(a)) != len(a) or not all(1 <= x <= n for x in a):
                raise InvalidConfig(f"A_j={a} is not a subset of 1..{n}")
            if len(a) - k not in (lo, hi):
                raise InvalidConfig(f"|A_j| - k must be {lo} or {hi}")
            if len(b) != k or not set(b) <= set(a) or len(set(b)) != k:
                raise InvalidConfig(f"B_j={b} is not a k-subset of A_j={a}")


def valid_probe_configs(n: int, k: int, L: int) -> Iterator[ProbeConfig]:
    """All valid configurations, in lexicographic order of (A, B)."""
    lo, hi = k // L, -(-k // L)
    sizes = [s for s in itertools.product(sorted({k + lo, k + hi}), repeat=L)
             if sum(s) == k * (L + 1) and all(x <= n for x in s)]
    for sz in sizes:
        for A in itertools.product(*[itertools.combinations(range(1, n + 1), s) for s in sz]):
            for B in itertools.product(*[itertools.combinations(a, k) for a in A]):
                yield ProbeConfig(tuple(A), tuple(B))


@dataclass
class ProbeResult:
    S: list  # S_j as k x k_j matrices over the code field
    spans: list  # reduced row echelon bases of the column spans
    rank_P: int
    rank_S: int
    size: int  # (L + 1) k

    @property
    def rank_ok(self) -> bool:
        return self.rank_P == self.size

    @property
    def direct_sum(self) -> bool:
        k = self.size // (len(self.S) + 1)
        return self.rank_S == k and sum(len(s[0]) if s and s[0] else 0 for s in self.S) == k


def _span_basis(F: FieldTower, mat) -> list:
    """Canonical basis (RREF rows) of the column space of ``mat``."""
    if not mat or not mat[0]:
        return []
    R, piv = linalg.rref(F, linalg.transpose(mat))
    return [list(r) for r in R[:len(piv)]]


def _s_matrices(g: PolyMat, A, B) -> list:
    """S_1..S_L for 1-based sets A_j, B_j (no validation)."""
    F = g.field
    k = g.rows
    L = len(A)
    gc = _sliding(g, L)

    def col(block: int, c1: int) -> list[int]:
        return [row[block * g.cols + c1 - 1] for row in gc]

    S = []
    for j in range(1, L + 1):
        # unknowns: coefficients on the B-columns of blocks 1..j
        basis = [col(i, b) for i in range(1, j + 1) for b in B[i - 1]]
        lower = [list(r) for r in zip(*[v[k:(j + 1) * k] for v in basis])] if basis else []
        cols = []
        for c in [x for x in A[j - 1] if x not in B[j - 1]]:
            v = col(j, c)
            x = linalg.solve(F, lower, v[k:(j + 1) * k])
            if x is None:
                raise NotMDP("B-columns do not eliminate the lower blocks")
            top = list(v[:k])
            for coef, bv in zip(x, basis):
                if coef:
                    top = [F.sub(t, F.mul(coef, b)) for t, b in zip(top, bv[:k])]
            cols.append(top)
        S.append(linalg.transpose(cols) if cols else [[] for _ in range(k)])
    return S


def _require_mdp(code: CodeDescriptor, L: int) -> None:
    for j in range(L + 1):
        mc = minor_check_G(code, j)
        if not mc.ok:
            raise NotMDP(f"minor check fails at j={j}, columns {mc.witness}")


def subspace_probe(code: CodeDescriptor, config: ProbeConfig, L: int | None = None,
                   check_mdp: bool = True) -> ProbeResult:
    if L is None:
        L = profile(code).L
    config.validate(code.n, code.k, L)
    if check_mdp:
        _require_mdp(code, L)
    F = code.field
    k, n = code.k, code.n
    gc = _sliding(code.generator, L)
    idx = sorted(j * n + a - 1 for j, A in enumerate(config.A, start=1) for a in A)
    P = linalg.columns(gc, idx)
    S = _s_matrices(code.generator, config.A, config.B)
    widths = [len(s[0]) for s in S]
    stacked = [sum((s[r] for s in S), []) for r in range(k)]
    rank_S = linalg.rank(F, stacked) if sum(widths) else 0
    return ProbeResult(S, [_span_basis(F, s) for s in S], linalg.rank(F, P), rank_S, (L + 1) * k)


def span_invariance(code: CodeDescriptor, A, L: int | None = None,
                    cumulative: bool = False) -> bool:
    """True iff every span(S_i) is the same for all choices of B_1..B_L.

    With ``cumulative`` the compared spans are span(S_1 ... S_i) for each i.
    Those are always invariant.  The individual spans are invariant under
    changes of B_i alone, but for k >= 2 a change of B_1..B_{i-1} can move
    span(S_i) to a different complement of the earlier spans.
    """
    if L is None:
        L = profile(code).L
    F = code.field
    ref = None
    for B in itertools.product(*[itertools.combinations(a, code.k) for a in A]):
        res = subspace_probe(code, ProbeConfig(tuple(A), tuple(B)), L, check_mdp=False)
        if cumulative:
            spans = [_span_basis(F, [sum((s[r] for s in res.S[:i]), []) for r in range(code.k)])
                     for i in range(1, L + 1)]
        else:
            spans = res.spans
        if ref is None:
            ref = spans
        elif spans != ref:
            return False
    return True


def intersection_dimension_audit(code: CodeDescriptor, prefix_A, prefix_B, A_j, A_j_prime) -> int:
    """dim(S_j cap S'_j) where both use A_1..A_{j-1}, B_1..B_{j-1} and differ in A_j.

    B_j is chosen inside A_j cap A'_j as far as possible (shared when the
    intersection has at least k elements); the spans do not depend on it.
    """
    F = code.field
    k = code.k
    if len(A_j) != len(A_j_prime):
        raise InvalidConfig("A_j and A'_j must have the same size")
    common = [x for x in A_j if x in A_j_prime]
    B_j = tuple(common[:k]) + tuple(x for x in A_j if x not in common)[:max(0, k - len(common))]
    B_jp = tuple(common[:k]) + tuple(x for x in A_j_prime if x not in common)[:max(0, k - len(common))]
    S = _s_matrices(code.generator, tuple(prefix_A) + (tuple(A_j),),
                    tuple(prefix_B) + (tuple(sorted(B_j)),))[-1]
    Sp = _s_matrices(code.generator, tuple(prefix_A) + (tuple(A_j_prime),),
                     tuple(prefix_B) + (tuple(sorted(B_jp)),))[-1]
    if not S[0] or not Sp[0]:
        return 0
    return linalg.column_space_intersection_dim(F, S, Sp)
