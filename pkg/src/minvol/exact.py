"""Exact integer and rational linear algebra.

Everything here works on plain Python ints (arbitrary precision) and
``fractions.Fraction``; no floating point anywhere.  Vectors are tuples of
ints, matrices are lists/tuples of row tuples.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class DimensionError(ValueError):
    """Inputs with inconsistent or unexpected dimensions."""


class DegeneracyError(ValueError):
    """An input was degenerate (e.g. affinely dependent simplex vertices)."""


def vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def det(m):
    """Exact determinant of a square integer matrix (Bareiss elimination).

    Fraction-free: all intermediate values are integers, divisions are exact.
    """
    n = len(m)
    for row in m:
        if len(row) != n:
            raise DimensionError(f"matrix is not square: {len(row)} != {n}")
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def matrix_rank(m):
    """Rank of an integer matrix, by fraction-free row elimination."""
    if not m:
        return 0
    a = [list(row) for row in m]
    rows, cols = len(a), len(a[0])
    rank = 0
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        for i in range(r + 1, rows):
            if a[i][c] != 0:
                p, q = a[r][c], a[i][c]
                a[i] = [p * a[i][j] - q * a[r][j] for j in range(cols)]
        r += 1
        rank += 1
        if r == rows:
            break
    return rank


def pivot_columns(m, target_rank=None):
    """Column indices of a maximal independent column set (in order).

    Used to project points of a lower-dimensional affine subspace to full
    dimension without losing affine structure.
    """
    if not m:
        return []
    a = [list(row) for row in m]
    rows, cols = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        for i in range(r + 1, rows):
            if a[i][c] != 0:
                p, q = a[r][c], a[i][c]
                a[i] = [p * a[i][j] - q * a[r][j] for j in range(cols)]
        pivots.append(c)
        r += 1
        if r == rows or (target_rank is not None and r == target_rank):
            break
    return pivots


def affine_rank(points):
    """Dimension of the affine hull of a nonempty point list."""
    if not points:
        raise DimensionError("affine_rank of an empty point list")
    p0 = points[0]
    return matrix_rank([vec_sub(p, p0) for p in points[1:]])


def solve_square(m, rhs):
    """Solve an exact square linear system via Cramer's rule.

    `m` has integer (or Fraction) entries; returns a tuple of Fractions.
    Raises DegeneracyError on a singular matrix.
    """
    d = det(m) if all(isinstance(x, int) for row in m for x in row) else _det_frac(m)
    if d == 0:
        raise DegeneracyError("singular linear system")
    n = len(m)
    sol = []
    for j in range(n):
        mj = [list(row) for row in m]
        for i in range(n):
            mj[i][j] = rhs[i]
        dj = det(mj) if all(isinstance(x, int) for row in mj for x in row) else _det_frac(mj)
        sol.append(Fraction(dj, d) if isinstance(dj, int) and isinstance(d, int) else Fraction(dj) / Fraction(d))
    return tuple(sol)


def _det_frac(m):
    """Determinant over Fractions (plain Gaussian elimination)."""
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    result = Fraction(1)
    for k in range(n):
        pivot = next((i for i in range(k, n) if a[i][k] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != k:
            a[k], a[pivot] = a[pivot], a[k]
            result = -result
        result *= a[k][k]
        inv = 1 / a[k][k]
        for i in range(k + 1, n):
            if a[i][k] != 0:
                f = a[i][k] * inv
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return result


def barycentric(simplex_vertices, x):
    """Exact barycentric coordinates of `x` with respect to a simplex.

    The simplex has k+1 affinely independent vertices living in dimension
    n >= k.  Returns a tuple of k+1 Fractions summing to 1 with
    sum(lambda_i * v_i) == x, or raises DegeneracyError if the vertices are
    affinely dependent.  If n > k and x is outside the affine hull, raises
    DegeneracyError as well.
    """
    k1 = len(simplex_vertices)
    n = len(simplex_vertices[0])
    if len(x) != n:
        raise DimensionError("point dimension does not match simplex")
    # Rows: one per coordinate, plus the affine row of ones.
    full_rows = [[v[i] for v in simplex_vertices] for i in range(n)]
    full_rows.append([1] * k1)
    full_rhs = list(x) + [1]
    if n + 1 == k1:
        lam = solve_square(full_rows, full_rhs)
    else:
        idx = pivot_columns([row for row in zip(*full_rows)], target_rank=k1)
        # pivot_columns on the transpose gives independent rows of full_rows
        if len(idx) < k1:
            raise DegeneracyError("degenerate simplex: affinely dependent vertices")
        sub = [full_rows[i] for i in idx]
        rhs = [full_rhs[i] for i in idx]
        lam = solve_square(sub, rhs)
        # x must actually lie in the affine hull: check the remaining rows
        for i in range(n + 1):
            if i not in idx:
                if sum(Fraction(full_rows[i][j]) * lam[j] for j in range(k1)) != full_rhs[i]:
                    raise DegeneracyError("point outside the affine hull of the simplex")
    return lam


def hyperplane_normal(points):
    """Integer normal of the hyperplane through d affinely independent points
    of Z^d, via the generalized cross product.  Returns the zero vector if
    the points are affinely dependent.  The normal is not primitivized.
    """
    d = len(points[0])
    if len(points) != d:
        raise DimensionError(f"need exactly {d} points, got {len(points)}")
    q0 = points[0]
    m = [vec_sub(p, q0) for p in points[1:]]  # (d-1) x d
    normal = []
    for j in range(d):
        minor = [[row[c] for c in range(d) if c != j] for row in m]
        normal.append((-1) ** j * det(minor))
    return tuple(normal)


def primitivize(vec):
    """Divide an integer vector by the gcd of its entries (sign preserved)."""
    g = 0
    for x in vec:
        g = gcd(g, abs(x))
    if g <= 1:
        return tuple(vec)
    return tuple(x // g for x in vec)
