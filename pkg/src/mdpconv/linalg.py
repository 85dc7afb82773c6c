"""Dense linear algebra over a :class:`~mdpconv.fieldcore.FieldTower` and over F[D].

Matrices are lists of rows of integer field elements.  Every routine takes the
field as its first argument.  Elimination always pivots on the first nonzero
entry in column order, so echelon forms and kernel bases are canonical.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from . import _poly
from .errors import (
    BothZero,
    IndexOutOfRange,
    NotSquare,
    NotStrictlyIncreasing,
)
from .fieldcore import FieldTower, same_field

Mat = list  # list[list[int]]


def zeros(rows: int, cols: int) -> Mat:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> Mat:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m: Sequence[Sequence[int]]) -> Mat:
    return [list(col) for col in zip(*m)] if m else []


def ncols(m: Sequence[Sequence[int]]) -> int:
    return len(m[0]) if m else 0


def matmul(F: FieldTower, a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Mat:
    bt = transpose(b)
    add, mul = F.add, F.mul
    out = []
    for row in a:
        out_row = []
        for col in bt:
            acc = 0
            for x, y in zip(row, col):
                if x and y:
                    acc = add(acc, mul(x, y))
            out_row.append(acc)
        out.append(out_row)
    return out


def rref(F: FieldTower, m: Sequence[Sequence[int]]) -> tuple[Mat, list[int]]:
    """Reduced row echelon form and pivot columns."""
    a = [list(r) for r in m]
    rows, cols = len(a), ncols(a)
    pivots: list[int] = []
    r = 0
    sub, mul, inv = F.sub, F.mul, F.inv
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        s = inv(a[r][c])
        pivot_row = [mul(s, x) for x in a[r]]
        a[r] = pivot_row
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [sub(x, mul(f, y)) if y else x for x, y in zip(a[i], pivot_row)]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(F: FieldTower, m: Sequence[Sequence[int]]) -> int:
    a = [list(r) for r in m]
    rows, cols = len(a), ncols(a)
    r = 0
    sub, mul, inv = F.sub, F.mul, F.inv
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        s = inv(a[r][c])
        pr = a[r]
        for i in range(r + 1, rows):
            if a[i][c]:
                f = mul(a[i][c], s)
                a[i] = [sub(x, mul(f, y)) if y else x for x, y in zip(a[i], pr)]
        r += 1
    return r


def det(F: FieldTower, m: Sequence[Sequence[int]]) -> int:
    n = len(m)
    if any(len(row) != n for row in m):
        raise NotSquare(f"{n}x{ncols(m)} matrix has no determinant")
    a = [list(r) for r in m]
    sub, mul, inv = F.sub, F.mul, F.inv
    d = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            d = F.neg(d)
        pr = a[c]
        d = mul(d, pr[c])
        s = inv(pr[c])
        for i in range(c + 1, n):
            if a[i][c]:
                f = mul(a[i][c], s)
                row = a[i]
                for t in range(c + 1, n):
                    if pr[t]:
                        row[t] = sub(row[t], mul(f, pr[t]))
    return d


def kernel(F: FieldTower, m: Sequence[Sequence[int]], cols: int | None = None) -> Mat:
    """Right kernel ``{x : m x = 0}`` as rows in reduced echelon form."""
    if cols is None:
        cols = ncols(m)
    r, pivots = rref(F, m)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = []
    for fcol in free:
        v = [0] * cols
        v[fcol] = 1
        for row, pc in zip(r, pivots):
            v[pc] = F.neg(row[fcol])
        basis.append(v)
    return rref(F, basis)[0] if basis else []


def left_kernel(F: FieldTower, m: Sequence[Sequence[int]]) -> Mat:
    """``{y : y m = 0}`` as rows."""
    return kernel(F, transpose(m), cols=len(m))


def inverse(F: FieldTower, m: Sequence[Sequence[int]]) -> Mat:
    n = len(m)
    if any(len(row) != n for row in m):
        raise NotSquare("only square matrices are invertible")
    aug = [list(row) + identity(n)[i] for i, row in enumerate(m)]
    r, pivots = rref(F, aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in r]


def solve(F: FieldTower, a: Sequence[Sequence[int]], b: Sequence[int]) -> list[int] | None:
    """One solution of ``a x = b`` or ``None``."""
    cols = ncols(a)
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    r, pivots = rref(F, aug)
    if cols in pivots:
        return None
    x = [0] * cols
    for row, pc in zip(r, pivots):
        x[pc] = row[cols]
    return x


def _check_indices(idx: Sequence[int], bound: int, what: str) -> list[int]:
    idx = list(idx)
    for a, b in zip(idx, idx[1:]):
        if b <= a:
            raise NotStrictlyIncreasing(f"{what} indices {idx} are not strictly increasing")
    for i in idx:
        if not 1 <= i <= bound:
            raise IndexOutOfRange(f"{what} index {i} outside 1..{bound}")
    return idx


def submatrix(m: Sequence[Sequence[int]], row_idx: Sequence[int] | None,
              col_idx: Sequence[int] | None) -> Mat:
    """Select rows and columns by 1-based, strictly increasing indices.

    ``None`` selects everything along that axis.
    """
    rows = range(1, len(m) + 1) if row_idx is None else _check_indices(row_idx, len(m), "row")
    cols = range(1, ncols(m) + 1) if col_idx is None else _check_indices(col_idx, ncols(m), "column")
    return [[m[r - 1][c - 1] for c in cols] for r in rows]


def columns(m: Sequence[Sequence[int]], idx0: Iterable[int]) -> Mat:
    """Unchecked 0-based column selection used on hot paths."""
    idx0 = list(idx0)
    return [[row[c] for c in idx0] for row in m]


def hstack(*ms: Sequence[Sequence[int]]) -> Mat:
    ms = [m for m in ms if m and ncols(m)]
    if not ms:
        return []
    return [sum((list(m[i]) for m in ms), []) for i in range(len(ms[0]))]


def col_span_dim(F: FieldTower, m: Sequence[Sequence[int]]) -> int:
    return rank(F, m) if m and ncols(m) else 0


def column_space_intersection_dim(F: FieldTower, a: Sequence[Sequence[int]],
                                  b: Sequence[Sequence[int]]) -> int:
    """dim(colspan a  cap  colspan b) = rank a + rank b - rank [a b]."""
    return col_span_dim(F, a) + col_span_dim(F, b) - col_span_dim(F, hstack(a, b))


# ----------------------------------------------------------------------
# polynomials over F, lists of coefficients lowest degree first


def poly_gcd(F: FieldTower, f: Sequence[int], g: Sequence[int]) -> list[int]:
    """Monic gcd of two polynomials, not both zero."""
    if not _poly.trim(f) and not _poly.trim(g):
        raise BothZero("gcd(0, 0) is undefined")
    return _poly.gcd(F, f, g)


poly_add = _poly.add
poly_sub = _poly.sub
poly_mul = _poly.mul
poly_divmod = _poly.divmod_
poly_trim = _poly.trim
poly_degree = _poly.degree


def poly_det(F: FieldTower, m: Sequence[Sequence[Sequence[int]]]) -> list[int]:
    """Determinant of a square matrix of polynomials (fraction-free Bareiss)."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise NotSquare("polynomial determinant needs a square matrix")
    if n == 0:
        return [1]
    a = [[_poly.trim(e) for e in row] for row in m]
    sign = 1
    prev: list[int] = [1]
    for c in range(n - 1):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return []
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        for i in range(c + 1, n):
            for t in range(c + 1, n):
                num = _poly.sub(F, _poly.mul(F, a[c][c], a[i][t]), _poly.mul(F, a[i][c], a[c][t]))
                quo, rem = _poly.divmod_(F, num, prev)
                assert not rem, "Bareiss division must be exact"
                a[i][t] = quo
            a[i][c] = []
        prev = a[c][c]
    d = a[n - 1][n - 1]
    return d if sign == 1 else _poly.scale(F, F.neg(1), d)


def poly_rank(F: FieldTower, m: Sequence[Sequence[Sequence[int]]]) -> int:
    """Rank over F(D) by division-free elimination."""
    a = [[_poly.trim(e) for e in row] for row in m]
    rows, cols = len(a), len(a[0]) if a else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r]
        for i in range(r + 1, rows):
            if a[i][c]:
                f = a[i][c]
                a[i] = [_poly.sub(F, _poly.mul(F, p[c], x), _poly.mul(F, f, y)) for x, y in zip(a[i], p)]
        r += 1
    return r


# ----------------------------------------------------------------------
# polynomial matrices


@dataclass(frozen=True)
class PolyMat:
    """Matrix over F[D] stored as coefficient matrices of D^0, D^1, ...

    Trailing all-zero coefficient matrices are trimmed, but the constant
    coefficient is always kept.
    """

    field: FieldTower
    rows: int
    cols: int
    coeffs: tuple = dc_field(default=())

    def __post_init__(self):
        cs = [tuple(tuple(int(x) for x in row) for row in c) for c in self.coeffs]
        for c in cs:
            if len(c) != self.rows or any(len(r) != self.cols for r in c):
                raise ValueError("coefficient matrices must share dimensions")
        while len(cs) > 1 and not any(any(r) for r in cs[-1]):
            cs.pop()
        if not cs:
            cs = [tuple(tuple([0] * self.cols) for _ in range(self.rows))]
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def from_coeffs(cls, F: FieldTower, coeffs: Sequence[Sequence[Sequence[int]]]) -> "PolyMat":
        coeffs = list(coeffs)
        rows = len(coeffs[0])
        cols = len(coeffs[0][0]) if rows else 0
        return cls(F, rows, cols, tuple(coeffs))

    @classmethod
    def from_entries(cls, F: FieldTower, entries: Sequence[Sequence[Sequence[int]]]) -> "PolyMat":
        """Build from a matrix whose entries are coefficient lists."""
        rows = len(entries)
        cols = len(entries[0])
        deg = max((len(e) for row in entries for e in row), default=1)
        coeffs = []
        for d in range(max(deg, 1)):
            coeffs.append([[e[d] if d < len(e) else 0 for e in row] for row in entries])
        return cls(F, rows, cols, tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> Mat:
        if 0 <= i < len(self.coeffs):
            return [list(r) for r in self.coeffs[i]]
        return zeros(self.rows, self.cols)

    def entry(self, r: int, c: int) -> list[int]:
        return _poly.trim([m[r][c] for m in self.coeffs])

    def entries(self) -> list[list[list[int]]]:
        return [[self.entry(r, c) for c in range(self.cols)] for r in range(self.rows)]

    def row_degrees(self) -> list[int]:
        """Per-row maximum entry degree (-1 for an all-zero row)."""
        out = []
        for r in range(self.rows):
            d = -1
            for i, m in enumerate(self.coeffs):
                if any(m[r]):
                    d = i
            out.append(d)
        return out

    def row(self, r: int) -> "PolyMat":
        return PolyMat(self.field, 1, self.cols, tuple((m[r],) for m in self.coeffs))

    def select_columns(self, idx0: Sequence[int]) -> "PolyMat":
        return PolyMat(self.field, self.rows, len(idx0),
                       tuple(tuple(tuple(r[c] for c in idx0) for r in m) for m in self.coeffs))

    def __matmul__(self, other: "PolyMat") -> "PolyMat":
        F = same_field(self.field, other.field)
        if self.cols != other.rows:
            raise ValueError("inner dimensions differ")
        out = [zeros(self.rows, other.cols) for _ in range(self.degree + other.degree + 1)]
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                prod = matmul(F, a, b)
                tgt = out[i + j]
                for r in range(self.rows):
                    for c in range(other.cols):
                        if prod[r][c]:
                            tgt[r][c] = F.add(tgt[r][c], prod[r][c])
        return PolyMat(F, self.rows, other.cols, tuple(out))

    def transpose(self) -> "PolyMat":
        return PolyMat(self.field, self.cols, self.rows, tuple(tuple(transpose(m)) for m in self.coeffs))

    def is_zero(self) -> bool:
        return not any(any(r) for m in self.coeffs for r in m)


def poly_kernel_bounded(g: PolyMat, deg_bound: int) -> PolyMat:
    """All rows h(D) with entry degrees <= ``deg_bound`` and g(D) h(D)^T = 0.

    The system is flattened to one block of equations per power of D, up to
    deg(g) + deg_bound.  The unknown ``h[c]`` coefficient of ``D^t`` sits at
    flat position ``t * n + c``; the returned rows are the reduced echelon
    basis of the solution space in that coordinate order.
    """
    if deg_bound < 0:
        raise ValueError("deg_bound must be >= 0")
    F = g.field
    n = g.cols
    unknowns = n * (deg_bound + 1)
    eqs = []
    for i in range(g.rows):
        for s in range(g.degree + deg_bound + 1):
            row = [0] * unknowns
            for t in range(deg_bound + 1):
                gi = s - t
                if 0 <= gi <= g.degree:
                    gm = g.coeffs[gi][i]
                    for c in range(n):
                        row[t * n + c] = gm[c]
            if any(row):
                eqs.append(row)
    basis = kernel(F, eqs, cols=unknowns) if eqs else [
        [int(i == j) for j in range(unknowns)] for i in range(unknowns)]
    return _flat_rows_to_polymat(F, basis, n, deg_bound)


def _flat_rows_to_polymat(F: FieldTower, flat: Sequence[Sequence[int]], n: int, deg_bound: int) -> PolyMat:
    if not flat:
        return PolyMat(F, 0, n, ())
    coeffs = [[list(v[t * n:(t + 1) * n]) for v in flat] for t in range(deg_bound + 1)]
    return PolyMat(F, len(flat), n, tuple(coeffs))


def _flatten_row(pm: PolyMat, r: int, deg_bound: int) -> list[int]:
    out = []
    for t in range(deg_bound + 1):
        out.extend(pm.coeffs[t][r] if t < len(pm.coeffs) else [0] * pm.cols)
    return out


def minimal_kernel_basis(g: PolyMat, max_degree: int, target: int | None = None) -> PolyMat:
    """A minimal (row-reduced, basic) polynomial basis of the right kernel of g.

    Degrees are raised one at a time.  At degree d the D-shifts of the rows
    already chosen span part of the degree-<=d solution space; any echelon
    basis vector of that space not in the span becomes a new row of degree
    d.  Stops once ``target`` rows (default ``cols - rank``) are found or
    ``max_degree`` is reached.
    """
    F = g.field
    n = g.cols
    if target is None:
        target = n - poly_rank(F, g.entries())
    chosen: list[tuple[int, list[list[int]]]] = []  # (degree, per-power coefficient rows)
    for d in range(max_degree + 1):
        if len(chosen) >= target:
            break
        space = poly_kernel_bounded(g, d)
        if space.rows == 0:
            continue
        shifts = []
        for deg, coeffs in chosen:
            for s in range(d - deg + 1):
                v = [0] * (n * (d + 1))
                for t, c in enumerate(coeffs):
                    v[(t + s) * n:(t + s + 1) * n] = c
                shifts.append(v)
        current = rank(F, shifts) if shifts else 0
        span = [list(v) for v in shifts]
        for r in range(space.rows):
            cand = _flatten_row(space, r, d)
            if rank(F, span + [cand]) > current:
                span.append(cand)
                current += 1
                chosen.append((d, [cand[t * n:(t + 1) * n] for t in range(d + 1)]))
                if len(chosen) >= target:
                    break
    top = max((deg for deg, _ in chosen), default=0)
    coeffs = []
    for t in range(top + 1):
        coeffs.append([c[t] if t < len(c) else [0] * n for _, c in chosen])
    if not chosen:
        return PolyMat(F, 0, n, ())
    return PolyMat(F, len(chosen), n, tuple(coeffs))
