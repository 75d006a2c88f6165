"""Regularity of triangulations via exact height-lifting feasibility.

A triangulation is regular when some height assignment on the points makes
it the lower envelope projection of the lifted point set.  That holds iff
for every simplex S and every point v not in S, the lifted v lies strictly
above the affine span of the lifted S:

    w(v) - sum_u lambda_u(v) * w(u)  >  0

with lambda the barycentric coordinates of v with respect to S.  The system
is homogeneous in w, so strict feasibility is equivalent to feasibility with
every right-hand side normalized to 1.  We decide that with an exact
rational simplex method using Bland's anti-cycling rule; on success the
heights are returned, on failure a proven infeasibility verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpq

from .exact import barycentric
from .polytope import PreconditionError


@dataclass(frozen=True)
class HeightFunction:
    """One rational height per configuration point; a regularity witness."""

    heights: tuple  # of Fraction, in PointConfig order


@dataclass(frozen=True)
class NotRegular:
    """Verified infeasibility of the lifting system."""

    reason: str = "lifting system infeasible"


def lifting_system(t):
    """Constraint rows of the height system, one per (simplex, outside point)
    pair: coefficients over all configuration points, RHS normalized to 1."""
    cfg = t.config
    n = len(cfg.points)
    rows = []
    for s in t.simplices:
        verts = [cfg.points[i] for i in s.vertex_indices]
        inside = set(s.vertex_indices)
        for v in range(n):
            if v in inside:
                continue
            lam = barycentric(verts, cfg.points[v])
            row = [Fraction(0)] * n
            row[v] = Fraction(1)
            for u, l in zip(s.vertex_indices, lam):
                row[u] -= l
            rows.append(row)
    return rows


def _feasible_point(rows, n):
    """Find w with row . w >= 1 for every row, exactly, or None if the
    system is infeasible.

    Works on the polar problem: maximize sum(y) subject to
    sum_j y_j * a_j = 0, y >= 0 (a_j the constraint rows).  By Farkas, an
    unbounded ray proves the original system infeasible; at optimality the
    simplex multipliers are a feasible w.  All right-hand sides are zero, so
    every pivot is degenerate and Bland's rule guarantees termination.
    """
    m = len(rows)
    if m == 0:
        return [Fraction(0)] * n
    zero = mpq(0)
    one = mpq(1)
    # tableau columns: m real columns then n artificial identity columns
    tab = [[mpq(rows[j][i].numerator, rows[j][i].denominator) for j in range(m)]
           + [one if i == k else zero for k in range(n)]
           for i in range(n)]
    # cost row: reduced costs; real columns cost 1, artificials 0
    cost = [one] * m + [zero] * n
    basis = [m + i for i in range(n)]  # artificial basis

    while True:
        enter = next((j for j in range(m) if cost[j] > 0), None)
        if enter is None:
            break
        # Bland leaving rule: smallest basic variable index among positive
        # pivot entries (all ratios are zero).
        leave = None
        for i in range(n):
            if tab[i][enter] > 0:
                if leave is None or basis[i] < basis[leave]:
                    leave = i
        if leave is None:
            return None  # unbounded ray: Farkas certificate of infeasibility
        piv = tab[leave][enter]
        row = tab[leave]
        if piv != 1:
            inv = 1 / piv
            tab[leave] = row = [x * inv for x in row]
        for i in range(n):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                ri = tab[i]
                tab[i] = [x - f * y for x, y in zip(ri, row)]
        f = cost[enter]
        if f != 0:
            cost = [x - f * y for x, y in zip(cost, row)]
        basis[leave] = enter

    # multipliers: pi_k = sum_i cost(basis[i]) * Binv[i][k]; the artificial
    # columns of the tableau hold Binv.
    pi = [mpq(0)] * n
    for i in range(n):
        if basis[i] < m:  # real basic column, cost 1
            for k in range(n):
                pi[k] += tab[i][m + k]
    return [Fraction(x.numerator, x.denominator) for x in pi]


def regularity_certificate(t):
    """Heights witnessing regularity, or a NotRegular verdict."""
    rows = lifting_system(t)
    n = len(t.config.points)
    w = _feasible_point(rows, n)
    if w is None:
        return NotRegular()
    h = HeightFunction(tuple(w))
    if not verify_heights(t, h):
        raise RuntimeError("solver returned heights that fail verification")
    return h


def verify_heights(t, h: HeightFunction) -> bool:
    """Every lifting constraint must hold strictly (> 0) under the heights."""
    if len(h.heights) != len(t.config.points):
        raise PreconditionError("height vector length does not match configuration")
    for row in lifting_system(t):
        value = sum(c * w for c, w in zip(row, h.heights) if c)
        if value <= 0:
            return False
    return True


def format_heights(h: HeightFunction) -> str:
    lines = []
    for w in h.heights:
        lines.append(f"{w.numerator}/{w.denominator}")
    return "\n".join(lines) + "\n"


def parse_heights(text) -> HeightFunction:
    from .polytope import FormatError

    heights = []
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln:
            continue
        try:
            if "/" in ln:
                num, den = ln.split("/")
                heights.append(Fraction(int(num), int(den)))
            else:
                heights.append(Fraction(int(ln)))
        except (ValueError, ZeroDivisionError):
            raise FormatError(f"bad height line `{ln}`") from None
    return HeightFunction(tuple(heights))
