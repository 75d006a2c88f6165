"""Lattice polytopes: exact convex hulls, facets, lattice point census,
normalized volume and the minimal-volume bound.

Points are tuples of ints.  All predicates are exact integer comparisons.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .exact import (
    DegeneracyError,
    DimensionError,
    affine_rank,
    det,
    dot,
    hyperplane_normal,
    matrix_rank,
    pivot_columns,
    primitivize,
    vec_sub,
)


class PreconditionError(ValueError):
    """An operation was called outside its stated preconditions."""


class FormatError(ValueError):
    """A polytope or certificate file could not be parsed."""


@dataclass(frozen=True)
class Facet:
    """Facet inequality normal . x <= offset with a primitive integer normal."""

    normal: tuple
    offset: int

    def value(self, point):
        return dot(self.normal, point)

    def contains(self, point):
        return self.value(point) <= self.offset

    def active(self, point):
        return self.value(point) == self.offset


@dataclass(frozen=True)
class Polytope:
    """Full-dimensional lattice polytope: hull vertices plus irredundant facets."""

    d: int
    vertices: tuple
    facets: tuple

    def contains(self, point):
        return all(f.contains(point) for f in self.facets)

    def on_boundary(self, point):
        return self.contains(point) and any(f.active(point) for f in self.facets)

    def strictly_contains(self, point):
        return all(f.value(point) < f.offset for f in self.facets)

    def facet_vertices(self, facet):
        return tuple(v for v in self.vertices if facet.active(v))

    def bounding_box(self):
        lo = tuple(min(v[i] for v in self.vertices) for i in range(self.d))
        hi = tuple(max(v[i] for v in self.vertices) for i in range(self.d))
        return lo, hi

    @property
    def volume(self):
        return Fraction(normalized_volume(self), factorial(self.d))


@dataclass(frozen=True)
class PointCensus:
    """Boundary/interior lattice points of a polytope and their counts."""

    boundary: tuple
    interior: tuple

    @property
    def b(self):
        return len(self.boundary)

    @property
    def c(self):
        return len(self.interior)


def convex_hull(points):
    """Exact convex hull of integer points, by incremental beneath-beyond.

    Returns a Polytope whose vertex list contains exactly the hull vertices
    and whose facet list is irredundant (coplanar simplicial facets merged).
    Raises DimensionError if the points are not full-dimensional.
    """
    pts = []
    seen = set()
    for p in points:
        t = tuple(p)
        if t not in seen:
            seen.add(t)
            pts.append(t)
    if not pts:
        raise DimensionError("empty point set")
    d = len(pts[0])
    rank = affine_rank(pts)
    if rank < d:
        raise DimensionError(f"points span dimension {rank}, expected {d}")
    if d == 1:
        lo = min(p[0] for p in pts)
        hi = max(p[0] for p in pts)
        return Polytope(1, ((lo,), (hi,)), (Facet((1,), hi), Facet((-1,), -lo)))

    simplicial = _incremental_hull(pts, d)

    # Merge coplanar simplicial facets into geometric facets.
    facet_map = {}
    for fset, (normal, offset) in simplicial.items():
        facet_map.setdefault((normal, offset), set()).update(fset)
    facets = tuple(
        Facet(normal, offset)
        for normal, offset in sorted(facet_map)
    )

    # True hull vertices: points whose active facet normals span rank d.
    hull_point_idx = sorted({i for fset in simplicial for i in fset})
    vertices = []
    for i in hull_point_idx:
        p = pts[i]
        normals = [f.normal for f in facets if f.active(p)]
        if len(normals) >= d and matrix_rank(normals) == d:
            vertices.append(p)
    return Polytope(d, tuple(sorted(vertices)), facets)


def _initial_simplex(pts, d):
    """Indices of d+1 affinely independent points, greedily."""
    idx = [0]
    for i in range(1, len(pts)):
        trial = idx + [i]
        if affine_rank([pts[j] for j in trial]) == len(trial) - 1:
            idx.append(i)
            if len(idx) == d + 1:
                return idx
    raise DimensionError("could not find a full-dimensional simplex")


def _oriented(normal, offset, ref_sum, ref_count):
    """Flip the facet inequality so the interior reference point satisfies it
    strictly.  ref_sum is the unscaled sum of ref_count interior points."""
    val = dot(normal, ref_sum)
    if val < offset * ref_count:
        return normal, offset
    if val > offset * ref_count:
        return tuple(-x for x in normal), -offset
    raise DegeneracyError("reference point on a facet hyperplane")


def _facet_plane(pts, idx_set, ref_sum, ref_count):
    vs = [pts[i] for i in idx_set]
    normal = hyperplane_normal(vs)
    if all(x == 0 for x in normal):
        raise DegeneracyError("degenerate facet candidate")
    normal = primitivize(normal)
    offset = dot(normal, vs[0])
    return _oriented(normal, offset, ref_sum, ref_count)


def _incremental_hull(pts, d):
    """Map frozenset(point indices) -> (normal, offset) of simplicial facets."""
    init = _initial_simplex(pts, d)
    ref_sum = tuple(sum(pts[i][j] for i in init) for j in range(d))
    ref_count = d + 1

    facets = {}
    for drop in init:
        fset = frozenset(i for i in init if i != drop)
        facets[fset] = _facet_plane(pts, sorted(fset), ref_sum, ref_count)

    ridge_map = {}

    def add_ridges(fset):
        for r in itertools.combinations(sorted(fset), d - 1):
            ridge_map.setdefault(frozenset(r), set()).add(fset)

    def drop_ridges(fset):
        for r in itertools.combinations(sorted(fset), d - 1):
            rs = ridge_map.get(frozenset(r))
            if rs is not None:
                rs.discard(fset)
                if not rs:
                    del ridge_map[frozenset(r)]

    for fset in facets:
        add_ridges(fset)

    remaining = [i for i in range(len(pts)) if i not in init]
    for i in remaining:
        p = pts[i]
        strict = [f for f, (n, o) in facets.items() if dot(n, p) > o]
        if not strict:
            continue
        # Flood-fill across adjacency; coplanar facets join only when they
        # touch a strictly violated one, keeping the visible region connected.
        visible = set(strict)
        stack = list(strict)
        while stack:
            f = stack.pop()
            for r in itertools.combinations(sorted(f), d - 1):
                for g in ridge_map.get(frozenset(r), ()):
                    if g not in visible:
                        n, o = facets[g]
                        if dot(n, p) >= o:
                            visible.add(g)
                            stack.append(g)
        horizon = []
        for f in visible:
            for r in itertools.combinations(sorted(f), d - 1):
                incident = ridge_map[frozenset(r)]
                others = incident - visible
                if others:
                    horizon.append(frozenset(r))
        for f in visible:
            drop_ridges(f)
            del facets[f]
        for r in horizon:
            fset = frozenset(r | {i})
            if fset in facets:
                continue
            facets[fset] = _facet_plane(pts, sorted(fset), ref_sum, ref_count)
            add_ridges(fset)

    # Sanity: the H-description must contain every input point.
    for n, o in facets.values():
        for p in pts:
            if dot(n, p) > o:
                raise DegeneracyError("hull construction failed containment check")
    return facets


def lattice_census(p: Polytope) -> PointCensus:
    """All lattice points of the polytope, split into boundary and interior
    by facet-equality tests over a bounding-box scan."""
    lo, hi = p.bounding_box()
    boundary = []
    interior = []
    for pt in itertools.product(*(range(lo[i], hi[i] + 1) for i in range(p.d))):
        values = [f.value(pt) for f in p.facets]
        if any(v > f.offset for v, f in zip(values, p.facets)):
            continue
        if any(v == f.offset for v, f in zip(values, p.facets)):
            boundary.append(pt)
        else:
            interior.append(pt)
    return PointCensus(tuple(boundary), tuple(interior))


def project_points(points):
    """Project points of a k-dimensional affine subspace of Z^d to Z^k by
    selecting k independent coordinates.  Returns (k, projected points).

    The projection is an affine isomorphism of the subspace, so convexity,
    faces and affine independence are preserved (lattice structure is not,
    which is fine for purely combinatorial uses).
    """
    p0 = points[0]
    diffs = [vec_sub(p, p0) for p in points[1:]]
    k = matrix_rank(diffs) if diffs else 0
    cols = pivot_columns(diffs, target_rank=k) if k else []
    projected = [tuple(p[c] for c in cols) for p in points]
    return k, projected


def face_vertex_sets(points, k):
    """Facet decomposition of conv(points), a k-dimensional polytope embedded
    in Z^d: returns a list of tuples of indices into `points`, one per facet,
    each listing ALL given points lying on that facet.  Requires k >= 1."""
    if k == 1:
        kk, proj = project_points(points)
        order = sorted(range(len(points)), key=lambda i: proj[i])
        return [(order[0],), (order[-1],)]
    kk, proj = project_points(points)
    if kk != k:
        raise DimensionError(f"points span dimension {kk}, expected {k}")
    hull = convex_hull(proj)
    out = []
    for f in hull.facets:
        out.append(tuple(i for i, q in enumerate(proj) if f.active(q)))
    return out


def _cone_volume(apex, facet_vertices, k):
    """Sum of |det| of cones from `apex` over a recursive triangulation of a
    (k-1)-face given by its vertex list (lex-least pulling, vertices only)."""
    total = 0
    for simplex in _pull_simplices(facet_vertices, k - 1):
        edges = [vec_sub(v, apex) for v in simplex]
        total += abs(det(edges))
    return total


def _pull_simplices(vertices, k):
    """Triangulate a k-face (given by its vertex list) into k-simplices by
    coning the lex-least vertex over recursively triangulated sub-faces."""
    vertices = sorted(vertices)
    if len(vertices) == k + 1:
        return [vertices]
    v0 = vertices[0]
    out = []
    for face in face_vertex_sets(vertices, k):
        fverts = [vertices[i] for i in face]
        if v0 in fverts:
            continue
        for sub in _pull_simplices(fverts, k - 1):
            out.append([v0] + sub)
    return out


def normalized_volume(p: Polytope) -> int:
    """d! times the volume, an integer.

    Computed by coning the lex-least vertex over pulled triangulations of the
    facets not containing it, using polytope vertices only.  This is kept
    independent of the triangulation pipeline so the two can cross-check.
    """
    v0 = p.vertices[0]  # vertices are stored lex-sorted
    total = 0
    for f in p.facets:
        if f.active(v0):
            continue
        total += _cone_volume(v0, list(p.facet_vertices(f)), p.d)
    if total <= 0:
        raise DegeneracyError("nonpositive volume: polytope invalid")
    return total


def min_bound(d: int, b: int, c: int) -> int:
    """Numerator of the volume lower bound: d*c + (d-1)*b - d^2 + 2.

    Only defined for c > 0; the bound does not apply to polytopes without
    interior points.
    """
    if c < 1:
        raise PreconditionError("bound requires c >= 1")
    if d < 2:
        raise PreconditionError("bound requires d >= 2")
    if b < d + 1:
        raise PreconditionError(f"b = {b} below the minimum {d + 1}")
    return d * c + (d - 1) * b - d * d + 2


def parse_polytope_file(text) -> Polytope:
    """Parse the polytope text format.

    Line 1: `d n`; then n lines of d space-separated integers (vertex
    generators; the hull is taken).  `#` starts a comment line.
    """
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        lines.append((lineno, stripped))
    if not lines:
        raise FormatError("line 1: empty file")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2:
        raise FormatError(f"line {lineno}: expected `d n` header")
    try:
        d, n = int(parts[0]), int(parts[1])
    except ValueError:
        raise FormatError(f"line {lineno}: non-integer header") from None
    if d < 1 or n < 1:
        raise FormatError(f"line {lineno}: need d >= 1 and n >= 1")
    if len(lines) - 1 != n:
        raise FormatError(f"line {lineno}: header promises {n} points, file has {len(lines) - 1}")
    points = []
    for lineno, line in lines[1:]:
        parts = line.split()
        if len(parts) != d:
            raise FormatError(f"line {lineno}: expected {d} coordinates, got {len(parts)}")
        try:
            points.append(tuple(int(x) for x in parts))
        except ValueError:
            raise FormatError(f"line {lineno}: non-integer coordinate") from None
    try:
        return convex_hull(points)
    except DimensionError as exc:
        raise FormatError(f"line {lineno}: {exc}") from None


def format_polytope(p: Polytope) -> str:
    lines = [f"{p.d} {len(p.vertices)}"]
    for v in p.vertices:
        lines.append(" ".join(str(x) for x in v))
    return "\n".join(lines) + "\n"
