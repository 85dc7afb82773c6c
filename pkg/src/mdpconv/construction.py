"""Explicit (n, k, k) MDP codes with memory 1 from conjugated skew Vandermonde columns.

Given n distinct nonzero lambda_i in F_q and a primitive gamma of F_{q^k},
the generator is G(D) = G_0 + G_1 D over F_{q^k} with

    (G_j)_{r,i} = N_r(^{alpha_{j,i}} gamma^j) * alpha_{j,i},

where alpha_{j,i} has F_q-coordinates (lambda_i^{(1-j)k}, ..., lambda_i^{(2-j)k-1})
in the polynomial basis 1, v, ..., v^{k-1} of the extension modulus.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .convmodel import CodeDescriptor
from .errors import InvalidParams, ZeroLambda
from .fieldcore import FieldTower, field_build, is_prime, prime_power
from .linalg import PolyMat
from .mdpcheck import DualCheck, dual_mdp_check


def parse_q(q: int | str | tuple) -> tuple[int, int]:
    """Accept 9, "9", "3^2" or (3, 2) and return (p, e)."""
    if isinstance(q, tuple):
        p, e = q
    elif isinstance(q, str) and "^" in q:
        a, b = q.split("^", 1)
        p, e = int(a), int(b)
    else:
        pe = prime_power(int(q))
        if pe is None:
            raise InvalidParams(f"q={q} is not a prime power")
        p, e = pe
    if not is_prime(p) or e < 1:
        raise InvalidParams(f"q={p}^{e} is not a prime power")
    return p, e


@dataclass(frozen=True)
class ConstructionParams:
    n: int
    k: int
    p: int
    e: int = 1
    lambdas: tuple | None = None  # F_q indices; default 1..n
    gamma: int | None = None  # F_{q^k} index; default the canonical primitive element

    @property
    def q(self) -> int:
        return self.p**self.e

    @classmethod
    def make(cls, n: int, k: int, q, lambdas: Sequence[int] | None = None,
             gamma: int | None = None) -> "ConstructionParams":
        p, e = parse_q(q)
        params = cls(n, k, p, e, None if lambdas is None else tuple(lambdas), gamma)
        params.validate()
        return params

    def validate(self) -> None:
        n, k, q = self.n, self.k, self.q
        if k < 1 or n <= 2 * k:
            raise InvalidParams(f"need n > 2k >= 2, got n={n}, k={k}")
        if q < max(3, n):
            raise InvalidParams(f"need q >= max(3, n), got q={q}, n={n}")
        if n > q - 1:
            raise InvalidParams(f"need n <= q - 1 distinct nonzero lambdas, got n={n}, q={q}")
        lams = self.resolved_lambdas()
        if len(lams) != n:
            raise InvalidParams(f"expected {n} lambdas, got {len(lams)}")
        if any(lam == 0 for lam in lams):
            raise ZeroLambda("lambdas must be nonzero")
        if any(not 0 < lam < q for lam in lams):
            raise InvalidParams("lambdas must be F_q elements")
        if len(set(lams)) != n:
            raise InvalidParams("lambdas must be distinct")
        if self.gamma is not None:
            F = self.field()
            if not 0 < self.gamma < F.size or F.order(self.gamma) != F.size - 1:
                raise InvalidParams("gamma must be a primitive element")

    def resolved_lambdas(self) -> tuple:
        return tuple(range(1, self.n + 1)) if self.lambdas is None else self.lambdas

    def field(self) -> FieldTower:
        return field_build(self.p, self.e, self.k)

    def resolved_gamma(self) -> int:
        return self.field().primitive_element() if self.gamma is None else self.gamma


def build_alpha(params: ConstructionParams, j: int, i: int) -> int:
    """alpha_{j,i} for j in {0, 1} and 0-based column i."""
    if j not in (0, 1):
        raise ValueError("j must be 0 or 1")
    F = params.field()
    lam = params.resolved_lambdas()[i]
    if lam == 0:
        raise ZeroLambda("lambda must be nonzero")
    Fq = F.subfield()
    start = (1 - j) * params.k
    return F.from_ext_coeffs([Fq.pow(lam, start + t) for t in range(params.k)])


def build_generator(params: ConstructionParams) -> CodeDescriptor:
    params.validate()
    F = params.field()
    gamma = params.resolved_gamma()
    blocks = []
    for j in (0, 1):
        gj = F.pow(gamma, j)
        block = [[0] * params.n for _ in range(params.k)]
        for i in range(params.n):
            alpha = build_alpha(params, j, i)
            b = F.conjugate(gj, alpha)
            for r in range(params.k):
                block[r][i] = F.mul(F.norm(r, b), alpha)
        blocks.append(block)
    prov = {
        "construction": "skew-vandermonde-memory-1",
        "q": params.q,
        "lambdas": list(params.resolved_lambdas()),
        "gamma": gamma,
    }
    return CodeDescriptor(params.n, params.k, F, PolyMat.from_coeffs(F, blocks),
                          label=f"construction ({params.n},{params.k}) q={params.q}",
                          provenance=prov)


@dataclass
class DualConstruction:
    primal: CodeDescriptor
    dual: CodeDescriptor
    check: DualCheck
    strongly_mds: bool

    @property
    def mdp(self) -> bool:
        return self.check.mdp


def build_dual(params: ConstructionParams, workers: int = 1) -> DualConstruction:
    """The dual (n, n-k, k) code: parity check G(D), generator from the kernel.

    For the dual, delta = k < n - k gives L = M = 1 and the generalized
    Singleton value 2k + 1 equals the window-1 bound, so strongly-MDS
    coincides with the MDP verdict.
    """
    primal = build_generator(params)
    check = dual_mdp_check(primal, cross_check=True, workers=workers)
    return DualConstruction(primal, check.dual, check, check.mdp)


def admissible_qs(n: int, count: int = 2, start: int | None = None) -> list[int]:
    """The ``count`` smallest prime powers q with q >= max(3, n) and n <= q - 1."""
    out = []
    q = max(3, n + 1) if start is None else start
    while len(out) < count:
        if prime_power(q) is not None and q >= max(3, n) and n <= q - 1:
            out.append(q)
        q += 1
    return out


def field_size_report(n: int, k: int) -> tuple[int, int]:
    """(smallest admissible q, q**k)."""
    q = admissible_qs(n, 1)[0]
    return q, q**k
