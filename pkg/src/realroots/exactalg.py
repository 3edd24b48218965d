"""Small exact linear algebra helpers over the rationals.

Vectors are tuples of :class:`~fractions.Fraction`, matrices are tuples of
such tuples (row major).  Everything here is exact; callers convert to float
at the boundary where irrational constants (pi, square roots) enter.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]

__all__ = [
    "as_fraction",
    "as_vec",
    "as_mat",
    "vec_add",
    "vec_sub",
    "vec_scale",
    "dot",
    "mat_vec",
    "mat_mul",
    "mat_det",
    "mat_inverse",
    "solve",
    "rank",
    "nullspace_vector",
    "bilinear",
    "simplex_contains",
]


def as_fraction(x) -> Fraction:
    """Convert an int/Fraction/str/float to an exact Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        # exact binary expansion; callers wanting decimal semantics should
        # pass strings or Fractions
        return Fraction(x)
    return Fraction(x)


def as_vec(v: Iterable) -> Vec:
    return tuple(as_fraction(x) for x in v)


def as_mat(rows: Iterable[Iterable]) -> Mat:
    return tuple(as_vec(r) for r in rows)


def vec_add(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vec:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vec_sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vec:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vec_scale(a: Sequence[Fraction], c: Fraction) -> Vec:
    return tuple(c * x for x in a)


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b, strict=True)), Fraction(0))


def mat_vec(m: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vec:
    return tuple(dot(row, v) for row in m)


def mat_mul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Mat:
    cols = list(zip(*b, strict=True))
    return tuple(tuple(dot(row, col) for col in cols) for row in a)


def bilinear(g: Sequence[Sequence[Fraction]], x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
    """x^T g y with exact arithmetic."""
    return dot(x, mat_vec(g, y))


def _eliminate(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Row reduce in place; returns (reduced rows, pivot column indices)."""
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(m: Sequence[Sequence[Fraction]]) -> int:
    if not m:
        return 0
    rows = [list(r) for r in m]
    _, pivots = _eliminate(rows, len(m[0]))
    return len(pivots)


def mat_det(m: Sequence[Sequence[Fraction]]) -> Fraction:
    n = len(m)
    rows = [list(r) for r in m]
    det = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            det = -det
        det *= rows[c][c]
        inv = 1 / rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return det


def mat_inverse(m: Sequence[Sequence[Fraction]]) -> Mat:
    n = len(m)
    rows = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m)]
    rows, pivots = _eliminate(rows, n)
    if len(pivots) != n:
        raise ValueError("matrix is singular")
    return tuple(tuple(row[n:]) for row in rows)


def solve(m: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> Vec:
    """Solve m x = b exactly.  m may be rectangular; the system must be
    consistent and have a unique solution on its column space."""
    ncols = len(m[0])
    rows = [list(r) + [bv] for r, bv in zip(m, b, strict=True)]
    rows, pivots = _eliminate(rows, ncols)
    x = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        x[c] = rows[r][ncols]
    # consistency check on the zero rows
    for i in range(len(pivots), len(rows)):
        if rows[i][ncols] != 0:
            raise ValueError("inconsistent linear system")
    if mat_vec(m, x) != tuple(b):
        raise ValueError("linear system has no exact solution")
    return tuple(x)


def nullspace_vector(m: Sequence[Sequence[Fraction]]) -> Vec:
    """One nonzero rational vector in the null space of m (must exist)."""
    ncols = len(m[0])
    rows = [list(r) for r in m]
    rows, pivots = _eliminate(rows, ncols)
    free = next((c for c in range(ncols) if c not in pivots), None)
    if free is None:
        raise ValueError("matrix has trivial null space")
    x = [Fraction(0)] * ncols
    x[free] = Fraction(1)
    for r, c in enumerate(pivots):
        x[c] = -rows[r][free]
    return tuple(x)


def simplex_contains(point: Sequence[Fraction], vertices: Sequence[Sequence[Fraction]]) -> bool:
    """Exact membership of a point in the convex hull of d+1 affinely
    independent vertices (closed simplex)."""
    v0 = vertices[0]
    cols = [vec_sub(v, v0) for v in vertices[1:]]
    m = tuple(zip(*cols, strict=True)) if cols else ()
    try:
        coeffs = solve(m, vec_sub(point, v0)) if cols else ()
    except ValueError:
        return False
    return all(c >= 0 for c in coeffs) and sum(coeffs, Fraction(0)) <= 1
