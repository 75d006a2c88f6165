"""Triangulation pipeline: boundary triangulation, coning over the first
interior point, stellar insertion of the remaining interior points, and the
count-bound / unimodularity / equality-case predicates.

Simplices are sorted tuples of indices into a PointConfig.  The whole
pipeline is deterministic: interior points are inserted in lexicographic
coordinate order and every tie-break is by index order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd

from .exact import (
    DegeneracyError,
    det,
    dot,
    hyperplane_normal,
    solve_square,
    vec_sub,
)
from .polytope import (
    Polytope,
    PreconditionError,
    face_vertex_sets,
    lattice_census,
    min_bound,
    normalized_volume,
    project_points,
)


class LocationError(ValueError):
    """A point to insert was not found inside the triangulated region."""


class DuplicatePointError(ValueError):
    """A point to insert coincides with an existing vertex."""


class InvariantError(RuntimeError):
    """An internal invariant the construction proves impossible was violated."""


class BoundViolationError(RuntimeError):
    """The constructed triangulation came out below the count bound."""


@dataclass(frozen=True)
class PointConfig:
    """A polytope together with the ordered finite point set the
    triangulation is built on (all polytope vertices included)."""

    polytope: Polytope
    points: tuple
    interior_flags: tuple

    @classmethod
    def from_points(cls, polytope, points):
        pts = tuple(tuple(p) for p in points)
        if len(set(pts)) != len(pts):
            raise PreconditionError("duplicate points in configuration")
        flags = []
        for p in pts:
            if not polytope.contains(p):
                raise PreconditionError(f"point {p} lies outside the polytope")
            flags.append(polytope.strictly_contains(p))
        present = set(pts)
        for v in polytope.vertices:
            if v not in present:
                raise PreconditionError(f"polytope vertex {v} missing from configuration")
        return cls(polytope, pts, tuple(flags))

    @classmethod
    def from_lattice_points(cls, polytope):
        census = lattice_census(polytope)
        pts = tuple(sorted(census.boundary)) + tuple(sorted(census.interior))
        flags = (False,) * len(census.boundary) + (True,) * len(census.interior)
        return cls(polytope, pts, flags)

    @property
    def b(self):
        return sum(1 for f in self.interior_flags if not f)

    @property
    def c(self):
        return sum(1 for f in self.interior_flags if f)

    def boundary_indices(self):
        return [i for i, f in enumerate(self.interior_flags) if not f]

    def interior_indices_lex(self):
        idx = [i for i, f in enumerate(self.interior_flags) if f]
        return sorted(idx, key=lambda i: self.points[i])


@dataclass(frozen=True)
class Simplex:
    vertex_indices: tuple  # sorted, length d+1
    norm_vol: int


@dataclass(frozen=True)
class Triangulation:
    config: PointConfig
    simplices: tuple  # of Simplex, in insertion order

    def __len__(self):
        return len(self.simplices)

    def volume_sum(self):
        return sum(s.norm_vol for s in self.simplices)


@dataclass(frozen=True)
class BoundaryComplex:
    config: PointConfig
    cells: tuple  # of sorted index tuples, length d


@dataclass(frozen=True)
class InsertionTrace:
    point_index: int
    container: tuple  # simplex the point was located in
    face: tuple  # smallest face containing the point
    e: int
    q: int
    removed: tuple
    added: tuple


@dataclass
class ValidationReport:
    violations: list

    @property
    def passed(self):
        return not self.violations

    def add(self, axiom, message):
        self.violations.append((axiom, message))


def _simplex(config, indices):
    idx = tuple(sorted(indices))
    pts = [config.points[i] for i in idx]
    vol = abs(det([vec_sub(p, pts[0]) for p in pts[1:]]))
    return Simplex(idx, vol)


# ---------------------------------------------------------------------------
# generic simplicial machinery, parameterized by a coordinate map
# ---------------------------------------------------------------------------

def _bary(coords, simplex, x):
    """Barycentric coordinates of x wrt a full-dimensional simplex, both given
    in k-dimensional coordinates via the `coords` mapping."""
    vs = [coords[i] for i in simplex]
    k = len(vs[0])
    rows = [[v[i] for v in vs] for i in range(k)]
    rows.append([1] * len(vs))
    rhs = list(x) + [1]
    return solve_square(rows, rhs)


def _locate_in(simplices, coords, x):
    """First simplex (in list order) containing x; returns
    (simplex, face, lambdas) where face is the positive-coordinate vertex
    tuple.  None if no simplex contains x."""
    for s in simplices:
        try:
            lam = _bary(coords, s, x)
        except DegeneracyError:
            continue
        if all(l >= 0 for l in lam):
            face = tuple(v for v, l in zip(s, lam) if l > 0)
            return s, face, lam
    return None


def _stellar_replace(simplices, face, x_index):
    """Replace every simplex having `face` as a face by its cones from
    x_index over the facets opposite each vertex of `face`.  Returns
    (new_simplices, removed, added)."""
    fset = set(face)
    removed = [s for s in simplices if fset.issubset(s)]
    kept = [s for s in simplices if not fset.issubset(s)]
    added = []
    for g in removed:
        for y in face:
            added.append(tuple(sorted(set(g) - {y} | {x_index})))
    return kept + added, removed, added


# ---------------------------------------------------------------------------
# boundary stage
# ---------------------------------------------------------------------------

def _triangulate_face(points, subset, k):
    """Deterministic triangulation of a k-face on all of its listed points.

    `subset` holds global point indices lying on the face.  The rule: cone
    the lex-least point over recursively triangulated sub-faces not
    containing it, then stellar-insert the remaining points in lex order.
    Depends only on the face's own point set, so shared faces of different
    facets receive identical triangulations.
    """
    if k == 0 or len(subset) == k + 1:
        return [tuple(sorted(subset))]
    pts = [points[i] for i in subset]
    v0_local = min(range(len(subset)), key=lambda i: pts[i])
    v0 = subset[v0_local]
    simplices = []
    for face in face_vertex_sets(pts, k):
        if v0_local in face:
            continue
        sub_idx = [subset[i] for i in face]
        for cell in _triangulate_face(points, sub_idx, k - 1):
            simplices.append(tuple(sorted((v0,) + cell)))
    used = {i for s in simplices for i in s}
    remaining = sorted((i for i in subset if i not in used), key=lambda i: points[i])
    if remaining:
        kk, proj = project_points(pts)
        coords = {g: proj[i] for i, g in enumerate(subset)}
        for g in remaining:
            found = _locate_in(simplices, coords, coords[g])
            if found is None:
                raise LocationError(f"point {points[g]} not located inside its face")
            _, face, _ = found
            simplices, _, _ = _stellar_replace(simplices, face, g)
    return simplices


def boundary_triangulation(cfg: PointConfig) -> BoundaryComplex:
    """Triangulate each facet of the polytope on all configuration points
    lying on it.  Cells are (d-1)-simplices given as sorted index tuples."""
    d = cfg.polytope.d
    if len(cfg.boundary_indices()) < d + 1:
        raise PreconditionError("need at least d+1 boundary points")
    cells = set()
    for facet in cfg.polytope.facets:
        on_facet = [i for i, p in enumerate(cfg.points) if facet.active(p)]
        cells.update(_triangulate_face(cfg.points, on_facet, d - 1))
    return BoundaryComplex(cfg, tuple(sorted(cells)))


# ---------------------------------------------------------------------------
# main pipeline
# ---------------------------------------------------------------------------

def cone_first_interior(bc: BoundaryComplex, x1_index: int) -> Triangulation:
    cfg = bc.config
    if not cfg.interior_flags[x1_index]:
        raise PreconditionError(f"point index {x1_index} is not interior")
    simplices = tuple(_simplex(cfg, cell + (x1_index,)) for cell in bc.cells)
    return Triangulation(cfg, simplices)


def locate(t: Triangulation, x):
    """Containing simplex, smallest containing face and its dimension for a
    point inside the triangulated polytope."""
    x = tuple(x)
    cfg = t.config
    if x in cfg.points:
        idx = cfg.points.index(x)
        if any(idx in s.vertex_indices for s in t.simplices):
            raise DuplicatePointError(f"{x} is already a vertex of the triangulation")
    coords = {i: p for i, p in enumerate(cfg.points)}
    found = _locate_in([s.vertex_indices for s in t.simplices], coords, x)
    if found is None:
        raise LocationError(f"{x} is not inside the triangulation")
    simplex, face, _ = found
    return simplex, face, len(face) - 1


def stellar_insert(t: Triangulation, x_index: int):
    """Insert configuration point `x_index` by stellar subdivision of the
    smallest face containing it.  Returns (new triangulation, trace)."""
    cfg = t.config
    d = cfg.polytope.d
    x = cfg.points[x_index]
    container, face, e = locate(t, x)
    index_lists = [s.vertex_indices for s in t.simplices]
    new_lists, removed, added = _stellar_replace(index_lists, face, x_index)
    q = len(removed)
    if cfg.interior_flags[x_index] and q < d - e + 1:
        raise InvariantError(
            f"q = {q} < d - e + 1 = {d - e + 1} while inserting interior point {x}"
        )
    by_idx = {s.vertex_indices: s for s in t.simplices}
    simplices = tuple(
        by_idx[idx] if idx in by_idx else _simplex(cfg, idx) for idx in new_lists
    )
    trace = InsertionTrace(
        point_index=x_index,
        container=container,
        face=face,
        e=e,
        q=q,
        removed=tuple(removed),
        added=tuple(added),
    )
    return Triangulation(cfg, simplices), trace


def build(cfg: PointConfig):
    """Full pipeline: boundary triangulation, cone over the lex-least
    interior point, stellar-insert the remaining interior points in lex
    order.  Returns (triangulation, traces); raises BoundViolationError if
    the final count falls below the lower bound (a defect, never returned)."""
    if cfg.c < 1:
        raise PreconditionError("pipeline requires at least one interior point")
    d = cfg.polytope.d
    interior = cfg.interior_indices_lex()
    bc = boundary_triangulation(cfg)
    t = cone_first_interior(bc, interior[0])
    traces = []
    for idx in interior[1:]:
        t, trace = stellar_insert(t, idx)
        traces.append(trace)
    bound = min_bound(d, cfg.b, cfg.c)
    if len(t) < bound:
        raise BoundViolationError(
            f"triangulation has {len(t)} simplices, below the bound {bound}"
        )
    return t, traces


def is_unimodular(t: Triangulation) -> bool:
    return all(s.norm_vol == 1 for s in t.simplices)


def is_castelnuovo(p: Polytope) -> bool:
    """Equality case of the volume lower bound, on all lattice points."""
    census = lattice_census(p)
    if census.c < 1:
        raise PreconditionError("equality case requires interior lattice points")
    return normalized_volume(p) == min_bound(p.d, census.b, census.c)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def _simplex_halfspaces(points):
    """Inequalities n.x <= o describing a d-simplex given by its vertex
    coordinate list (one inequality per omitted vertex)."""
    d = len(points[0])
    out = []
    for drop in range(d + 1):
        rest = [p for i, p in enumerate(points) if i != drop]
        n = hyperplane_normal(rest)
        o = dot(n, rest[0])
        inner = dot(n, points[drop])
        if inner == o:
            raise DegeneracyError("degenerate simplex in halfspace computation")
        if inner > o:
            n = tuple(-x for x in n)
            o = -o
        out.append((n, o))
    return out


def _norm_point(nums, den):
    if den < 0:
        nums = tuple(-x for x in nums)
        den = -den
    g = den
    for x in nums:
        g = gcd(g, abs(x))
    return tuple(x // g for x in nums), den // g


def _intersection_vertices(halfspaces, d):
    """Vertices of the polytope cut out by the given inequalities, by exact
    enumeration of d-subsets (Cramer's rule over integers)."""
    out = set()
    for combo in itertools.combinations(range(len(halfspaces)), d):
        m = [halfspaces[i][0] for i in combo]
        rhs = [halfspaces[i][1] for i in combo]
        dd = det(m)
        if dd == 0:
            continue
        nums = []
        for j in range(d):
            mj = [list(row) for row in m]
            for i in range(d):
                mj[i][j] = rhs[i]
            nums.append(det(mj))
        nums, den = _norm_point(tuple(nums), dd)
        if all(dot(n, nums) <= o * den for n, o in halfspaces):
            out.add((nums, den))
    return out


def _pair_proper(fa, fb):
    """Whether two simplices intersect exactly in their shared-vertex face.

    fa/fb: (index tuple, coordinate tuple, bounding box, halfspaces).
    """
    ia, pa, boxa, ha = fa
    ib, pb, boxb, hb = fb
    d = len(pa[0])
    for k in range(d):
        if boxa[1][k] < boxb[0][k] or boxb[1][k] < boxa[0][k]:
            return True  # disjoint; no shared vertices possible
    shared = set(ia) & set(ib)
    # Fast path: a facet hyperplane of either simplex that separates the two
    # with all on-plane vertices shared resolves the pair exactly.
    for n, o in ha + hb:
        va = [dot(n, p) - o for p in pa]
        vb = [dot(n, p) - o for p in pb]
        for sa, sb in ((va, vb), (vb, va)):
            if all(x <= 0 for x in sa) and all(x >= 0 for x in sb):
                on_a = {i for i, x in zip(ia, va) if x == 0}
                on_b = {i for i, x in zip(ib, vb) if x == 0}
                if on_a <= shared and on_b <= shared:
                    return True
        # note: if both simplices lie entirely on the plane they are
        # degenerate, which norm_vol > 0 rules out
    # Full exact test: vertex set of the halfspace intersection must equal
    # the shared-vertex set.
    inter = _intersection_vertices(ha + hb, d)
    shared_pts = {_norm_point(p, 1) for i, p in zip(ia, pa) if i in shared}
    return inter == shared_pts


def validate(t: Triangulation) -> ValidationReport:
    """Check the four triangulation axioms mechanically.

    (i) vertex indices valid and simplices nondegenerate; (ii) every
    configuration point used; (iii) pairwise intersections are common faces
    (exact halfspace-intersection test); (iv) simplices contained in the
    polytope with volumes summing to its normalized volume.
    """
    cfg = t.config
    d = cfg.polytope.d
    report = ValidationReport([])

    n = len(cfg.points)
    for s in t.simplices:
        if len(s.vertex_indices) != d + 1 or any(i < 0 or i >= n for i in s.vertex_indices):
            report.add("i", f"bad vertex index tuple {s.vertex_indices}")
        elif s.norm_vol <= 0:
            report.add("i", f"degenerate simplex {s.vertex_indices}")
    if report.violations:
        return report

    seen = {}
    for s in t.simplices:
        seen[s.vertex_indices] = seen.get(s.vertex_indices, 0) + 1
    for idx, count in sorted(seen.items()):
        if count > 1:
            report.add("iii", f"simplex {idx} appears {count} times")

    used = {i for s in t.simplices for i in s.vertex_indices}
    for i in range(n):
        if i not in used:
            report.add("ii", f"point {cfg.points[i]} is not a vertex of any simplex")

    data = []
    for s in t.simplices:
        pts = tuple(cfg.points[i] for i in s.vertex_indices)
        box = (
            tuple(min(p[k] for p in pts) for k in range(d)),
            tuple(max(p[k] for p in pts) for k in range(d)),
        )
        data.append((s.vertex_indices, pts, box, _simplex_halfspaces(pts)))
    for a in range(len(data)):
        for b in range(a + 1, len(data)):
            if data[a][0] == data[b][0]:
                continue  # duplicates already reported
            if not _pair_proper(data[a], data[b]):
                report.add(
                    "iii",
                    f"simplices {data[a][0]} and {data[b][0]} do not meet face-to-face",
                )

    for s in t.simplices:
        for i in s.vertex_indices:
            if not cfg.polytope.contains(cfg.points[i]):
                report.add("iv", f"vertex {cfg.points[i]} outside the polytope")
    total = t.volume_sum()
    expected = normalized_volume(cfg.polytope)
    if total != expected:
        report.add("iv", f"volume sum {total} != normalized volume {expected}")
    return report


# ---------------------------------------------------------------------------
# certificate files
# ---------------------------------------------------------------------------

def format_certificate(t: Triangulation) -> str:
    cfg = t.config
    lines = [f"{cfg.polytope.d} {len(t.simplices)}", str(len(cfg.points))]
    for p in cfg.points:
        lines.append(" ".join(str(x) for x in p))
    for s in t.simplices:
        lines.append(" ".join(str(i) for i in s.vertex_indices))
    return "\n".join(lines) + "\n"


def parse_certificate(text):
    """Parse a certificate file into (d, points, simplex index tuples).

    Duplicate simplices are preserved so verification can reject them.
    """
    from .polytope import FormatError

    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if len(lines) < 2:
        raise FormatError("certificate truncated")
    try:
        d, m = (int(x) for x in lines[0].split())
        npts = int(lines[1])
    except ValueError:
        raise FormatError("certificate header malformed") from None
    if len(lines) != 2 + npts + m:
        raise FormatError(
            f"certificate promises {npts} points and {m} simplices, "
            f"found {len(lines) - 2} body lines"
        )
    points = []
    for ln in lines[2 : 2 + npts]:
        coords = tuple(int(x) for x in ln.split())
        if len(coords) != d:
            raise FormatError(f"point line `{ln}` has wrong dimension")
        points.append(coords)
    simplices = []
    for ln in lines[2 + npts :]:
        idx = tuple(int(x) for x in ln.split())
        if len(idx) != d + 1:
            raise FormatError(f"simplex line `{ln}` has wrong arity")
        if any(i < 0 or i >= npts for i in idx):
            raise FormatError(f"simplex line `{ln}` has out-of-range index")
        simplices.append(idx)
    return d, points, simplices


def triangulation_from_certificate(polytope, points, simplex_indices):
    cfg = PointConfig.from_points(polytope, points)
    simplices = tuple(_simplex(cfg, idx) for idx in simplex_indices)
    return Triangulation(cfg, simplices)
