"""Exact linear algebra helpers.

Everything here works over exact numbers: rational Gaussian elimination for
ranks, determinants and span membership, and an integer Smith normal form for
integral homology.  No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Mapping, Sequence

Matrix = list[list[Fraction]]


def _to_fraction_rows(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def rank(rows: Sequence[Sequence]) -> int:
    """Rank of a matrix over the rationals."""
    m = _to_fraction_rows(rows)
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][col]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                factor = m[i][col]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def det(rows: Sequence[Sequence]) -> Fraction:
    """Determinant of a square matrix over the rationals.

    The empty matrix has determinant 1.
    """
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ValueError("determinant requires a square matrix")
    m = _to_fraction_rows(rows)
    result = Fraction(1)
    for col in range(n):
        pivot = next((i for i in range(col, n) if m[i][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            result = -result
        result *= m[col][col]
        inv = 1 / m[col][col]
        for i in range(col + 1, n):
            if m[i][col]:
                factor = m[i][col] * inv
                m[i] = [a - factor * b for a, b in zip(m[i], m[col])]
    return result


def sparse_rank(vectors: Sequence[Mapping[Hashable, Fraction]]) -> int:
    """Rank of a family of sparse vectors (dicts with mutually comparable keys)."""
    pivots: dict = {}
    for vec in vectors:
        cur = {k: Fraction(v) for k, v in vec.items() if v}
        while cur:
            lead = max(cur)
            if lead not in pivots:
                pivots[lead] = cur
                break
            basis = pivots[lead]
            factor = cur[lead] / basis[lead]
            for key, val in basis.items():
                new = cur.get(key, Fraction(0)) - factor * val
                if new:
                    cur[key] = new
                else:
                    cur.pop(key, None)
    return len(pivots)


def solve_in_span(
    vectors: Sequence[Mapping[Hashable, Fraction]],
    target: Mapping[Hashable, Fraction],
) -> list[Fraction] | None:
    """Express ``target`` as an exact linear combination of ``vectors``.

    Returns the coefficient list, or None when the target lies outside the
    span.  When the vectors are dependent an arbitrary valid solution is
    returned; callers that need uniqueness should check independence first.
    """
    keys = sorted({k for v in vectors for k in v} | set(target))
    width = len(vectors)
    # Rows of the augmented system, one per coordinate.
    rows = [
        [Fraction(v.get(key, 0)) for v in vectors] + [Fraction(target.get(key, 0))]
        for key in keys
    ]
    pivots: list[int] = []
    r = 0
    for col in range(width):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                factor = rows[i][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    # Any leftover nonzero row is an inconsistency.
    for i in range(r, len(rows)):
        if rows[i][width]:
            return None
    coeffs = [Fraction(0)] * width
    for row_idx, col in enumerate(pivots):
        coeffs[col] = rows[row_idx][width]
    return coeffs


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Invariant factors of an integer matrix, as a divisibility chain.

    Returns the nonnegative diagonal of the Smith normal form with
    d1 | d2 | ... and trailing zeros stripped, so ``len(result)`` is the rank.
    Arbitrary-precision throughout.
    """
    m = [[int(x) for x in row] for row in matrix]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    diag: list[int] = []
    t = 0
    while t < min(nrows, ncols):
        # Pick the nonzero entry of smallest magnitude as pivot.
        pivot = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if m[i][j] and (pivot is None or abs(m[i][j]) < abs(m[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i0, j0 = pivot
        m[t], m[i0] = m[i0], m[t]
        for row in m:
            row[t], row[j0] = row[j0], row[t]
        clean = True
        for i in range(t + 1, nrows):
            q = m[i][t] // m[t][t]
            if q:
                m[i] = [a - q * b for a, b in zip(m[i], m[t])]
            if m[i][t]:
                clean = False
        for j in range(t + 1, ncols):
            q = m[t][j] // m[t][t]
            if q:
                for i in range(nrows):
                    m[i][j] -= q * m[i][t]
            if m[t][j]:
                clean = False
        if clean:
            diag.append(abs(m[t][t]))
            t += 1
    # Normalize the diagonal into a divisibility chain: diag(a, b) and
    # diag(gcd, lcm) are equivalent under unimodular operations.
    import math

    changed = True
    while changed:
        changed = False
        for i in range(len(diag)):
            for j in range(i + 1, len(diag)):
                if diag[j] % diag[i]:
                    g = math.gcd(diag[i], diag[j])
                    lcm = diag[i] * diag[j] // g
                    diag[i], diag[j] = g, lcm
                    changed = True
    return diag


def integer_rank(matrix: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix (over the rationals)."""
    return rank(matrix)
