"""Exact integer and rational matrix routines.

Everything here works on plain nested lists/tuples of Python ints or
``Fraction`` objects, so results are exact at any size.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Matrix = Sequence[Sequence[int]]


def bareiss_det(matrix: Matrix) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    n = len(matrix)
    if n == 0:
        return 1
    a = [list(row) for row in matrix]
    if any(len(row) != n for row in a):
        raise ValueError("matrix is not square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            aik = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (pivot * row_i[j] - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def integer_inverse(matrix: Matrix) -> tuple[int, list[list[int]]]:
    """Return ``(d, N)`` with ``matrix^{-1} = N / d`` and ``d = det(matrix)``.

    Fraction-free Gauss-Jordan elimination on ``[A | I]``.  Every division
    is exact, so ``N`` is the adjugate of ``A``.

    Raises:
        ValueError: if the matrix is singular or not square.
    """
    n = len(matrix)
    if n == 0:
        return 1, []
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix is not square")
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(matrix)]
    width = 2 * n
    prev = 1
    sign = 1
    for k in range(n):
        if aug[k][k] == 0:
            for r in range(k + 1, n):
                if aug[r][k] != 0:
                    aug[k], aug[r] = aug[r], aug[k]
                    sign = -sign
                    break
            else:
                raise ValueError("matrix is singular")
        pivot = aug[k][k]
        row_k = aug[k]
        for i in range(n):
            if i == k:
                continue
            row_i = aug[i]
            aik = row_i[k]
            for j in range(width):
                row_i[j] = (pivot * row_i[j] - aik * row_k[j]) // prev
        prev = pivot
    det = prev
    inv = [row[n:] for row in aug]
    # after the loop every diagonal entry of the left block equals ``det``
    # of the row-permuted matrix; fix the sign so ``det`` is det(matrix)
    if sign < 0:
        det = -det
        inv = [[-x for x in row] for row in inv]
    return det, inv


def mat_mul(a: Matrix, b: Matrix) -> list[list]:
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def transpose(a: Matrix) -> list[list]:
    return [list(col) for col in zip(*a)]


def ldl(matrix: Matrix) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Exact LDL^T factorization of a symmetric positive definite matrix.

    Returns unit lower-triangular ``L`` and the diagonal ``D`` as Fractions.
    """
    n = len(matrix)
    low = [[Fraction(0)] * n for _ in range(n)]
    diag: list[Fraction] = []
    for j in range(n):
        dj = Fraction(matrix[j][j]) - sum(low[j][k] * low[j][k] * diag[k] for k in range(j))
        if dj <= 0:
            raise ValueError("matrix is not positive definite")
        diag.append(dj)
        low[j][j] = Fraction(1)
        for i in range(j + 1, n):
            s = Fraction(matrix[i][j]) - sum(low[i][k] * low[j][k] * diag[k] for k in range(j))
            low[i][j] = s / dj
    return low, diag


def lower_frame(gram: Matrix) -> list[list[float]]:
    """Lower-triangular float matrix ``M`` with ``M^T M = gram``.

    The factorization is done exactly on the index-reversed matrix and only
    the final square roots are taken in floating point.
    """
    n = len(gram)
    rev = [[gram[n - 1 - i][n - 1 - j] for j in range(n)] for i in range(n)]
    low, diag = ldl(rev)
    # rev = C C^T with C = L sqrt(D); then M = P C^T P is lower triangular
    roots = [math.sqrt(d) for d in diag]
    c = [[float(low[i][j]) * roots[j] for j in range(n)] for i in range(n)]
    return [[c[n - 1 - j][n - 1 - i] for j in range(n)] for i in range(n)]


def smith_normal_form(matrix: Matrix) -> list[int]:
    """Invariant factors ``d_1 | d_2 | ... | d_r`` of an integer matrix.

    Only the nonzero diagonal entries are returned, so ``len`` of the result
    is the rank.  Uses unimodular row and column operations with a
    smallest-entry pivot.
    """
    a = [list(row) for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    factors: list[int] = []
    t = 0
    while t < min(rows, cols):
        pos = _min_nonzero(a, t, rows, cols)
        if pos is None:
            break
        i, j = pos
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            done = True
            p = a[t][t]
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // p
                    if q:
                        ri, rt = a[i], a[t]
                        for j in range(t, cols):
                            ri[j] -= q * rt[j]
                    if a[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // p
                    if q:
                        for row in a[t:]:
                            row[j] -= q * row[t]
                    if a[t][j]:
                        done = False
            if done:
                bad = _nondivisible(a, t, rows, cols, p)
                if bad is None:
                    break
                rt, rb = a[t], a[bad]
                for j in range(t, cols):
                    rt[j] += rb[j]
                continue
            pos = _min_nonzero_cross(a, t, rows, cols)
            i, j = pos
            a[t], a[i] = a[i], a[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
        factors.append(abs(a[t][t]))
        t += 1
    return factors


def _min_nonzero(a, t, rows, cols):
    best = None
    for i in range(t, rows):
        for j in range(t, cols):
            v = a[i][j]
            if v and (best is None or abs(v) < best[0]):
                best = (abs(v), i, j)
                if best[0] == 1:
                    return i, j
    return None if best is None else best[1:]


def _min_nonzero_cross(a, t, rows, cols):
    best = (abs(a[t][t]), t, t) if a[t][t] else None
    for i in range(t + 1, rows):
        v = a[i][t]
        if v and (best is None or abs(v) < best[0]):
            best = (abs(v), i, t)
    for j in range(t + 1, cols):
        v = a[t][j]
        if v and (best is None or abs(v) < best[0]):
            best = (abs(v), t, j)
    return best[1:]


def _nondivisible(a, t, rows, cols, p):
    for i in range(t + 1, rows):
        row = a[i]
        for j in range(t + 1, cols):
            if row[j] % p:
                return i
    return None


def in_column_lattice(matrix: Matrix, vector: Sequence[int]) -> bool:
    """True iff ``vector`` is an integer combination of the columns of ``matrix``.

    The lattice spanned by ``[M | v]`` contains the one spanned by ``M``; the
    two agree exactly when rank and product of invariant factors agree.
    """
    base = smith_normal_form(matrix)
    extended = smith_normal_form([list(row) + [v] for row, v in zip(matrix, vector)])
    return len(base) == len(extended) and math.prod(base) == math.prod(extended)
