"""Survey of small lattice polytopes: realized (d, b, c) triples, the
equality case of the volume bound, and the hunt for minimal-b simplices.

Everything is deterministic given the parameters: draw i of a run is
produced by its own RNG seeded from (seed, i), so rows do not depend on
execution order or worker count.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .exact import DimensionError
from .polytope import (
    Polytope,
    PreconditionError,
    convex_hull,
    lattice_census,
    min_bound,
    normalized_volume,
)
from .regularity import HeightFunction, regularity_certificate
from .triangulation import PointConfig, build, is_unimodular


@dataclass(frozen=True)
class SearchParams:
    d: int
    box: int
    samples: int
    seed: int = 0
    exhaustive: bool = False
    regularity_checks: bool = True
    regularity_cap: int = 25  # max |V| for the exact LP
    min_points: int = 0  # generators per draw; 0 means d+1
    max_points: int = 0  # 0 means d+3
    require_interior: bool = True

    def __post_init__(self):
        if self.d < 2:
            raise PreconditionError("search requires d >= 2")
        if self.box < 1:
            raise PreconditionError("search requires box size >= 1")


@dataclass(frozen=True)
class Rejection:
    reason: str  # "lower-dimensional" | "no-interior-point"


@dataclass(frozen=True)
class SurveyRow:
    d: int
    b: int
    c: int
    normalized_volume: int
    bound: int
    castelnuovo: bool
    unimodular_build: bool
    regular_build: object  # True | False | "skipped"
    witness: tuple  # vertex list


class BoundViolationFinding(RuntimeError):
    """A surveyed polytope fell below the volume bound: impossible if the
    implementation is correct, so the whole run fails loudly."""


def random_polytope(params: SearchParams, draw_index: int):
    """Deterministic draw: a full-dimensional polytope or a Rejection."""
    rng = random.Random(f"{params.seed}:{draw_index}")
    lo = params.min_points or params.d + 1
    hi = params.max_points or params.d + 3
    n = rng.randint(lo, hi)
    pts = [tuple(rng.randint(0, params.box) for _ in range(params.d)) for _ in range(n)]
    try:
        p = convex_hull(pts)
    except DimensionError:
        return Rejection("lower-dimensional")
    if params.require_interior and not lattice_census(p).interior:
        return Rejection("no-interior-point")
    return p


def _row_for(p: Polytope, params: SearchParams) -> SurveyRow:
    census = lattice_census(p)
    b, c = census.b, census.c
    nvol = normalized_volume(p)
    bound = min_bound(p.d, b, c) if c > 0 else 0
    if c > 0 and nvol < bound:
        raise BoundViolationFinding(
            f"normalized volume {nvol} below bound {bound} for vertices {p.vertices}"
        )
    castelnuovo = c > 0 and nvol == bound
    unimodular = False
    regular = "skipped"
    if castelnuovo:
        cfg = PointConfig.from_lattice_points(p)
        t, _ = build(cfg)
        unimodular = is_unimodular(t)
        if params.regularity_checks and len(cfg.points) <= params.regularity_cap:
            regular = isinstance(regularity_certificate(t), HeightFunction)
    return SurveyRow(p.d, b, c, nvol, bound, castelnuovo, unimodular, regular, p.vertices)


def _translate_key(p: Polytope):
    lo = tuple(min(v[i] for v in p.vertices) for i in range(p.d))
    return tuple(sorted(tuple(x - m for x, m in zip(v, lo)) for v in p.vertices))


def _exhaustive_polytopes(params: SearchParams):
    """All hulls of (d+1)-subsets of the box lattice, deduplicated by
    translation, in lexicographic subset order, capped at `samples` rows."""
    grid = list(itertools.product(range(params.box + 1), repeat=params.d))
    seen = set()
    count = 0
    for combo in itertools.combinations(grid, params.d + 1):
        if count >= params.samples:
            return
        try:
            p = convex_hull(list(combo))
        except DimensionError:
            continue
        if params.require_interior and not lattice_census(p).interior:
            continue
        key = _translate_key(p)
        if key in seen:
            continue
        seen.add(key)
        count += 1
        yield p


def survey(params: SearchParams):
    """One SurveyRow per accepted polytope, in draw order."""
    rows = []
    if params.exhaustive:
        for p in _exhaustive_polytopes(params):
            rows.append(_row_for(p, params))
        return rows
    accepted = 0
    draw = 0
    seen = set()
    while accepted < params.samples:
        result = random_polytope(params, draw)
        draw += 1
        if isinstance(result, Rejection):
            continue
        key = _translate_key(result)
        if key in seen:
            continue
        seen.add(key)
        rows.append(_row_for(result, params))
        accepted += 1
    return rows


SURVEY_COLUMNS = (
    "d", "b", "c", "normalized_volume", "bound",
    "castelnuovo", "unimodular_build", "regular_build", "witness",
)


def format_survey(rows):
    out = ["\t".join(SURVEY_COLUMNS)]
    for r in rows:
        witness = '"' + ";".join(",".join(str(x) for x in v) for v in r.witness) + '"'
        out.append("\t".join(str(x) for x in (
            r.d, r.b, r.c, r.normalized_volume, r.bound,
            str(r.castelnuovo).lower(), str(r.unimodular_build).lower(),
            str(r.regular_build).lower() if isinstance(r.regular_build, bool) else r.regular_build,
            witness,
        )))
    return "\n".join(out) + "\n"


def castelnuovo_simplex_search(d: int, c: int, cap: int = 10):
    """Search for an equality-case simplex with b = d+1 and the requested
    interior count.

    Candidates come from the family conv{0, e_1, ..., e_{d-1},
    (a_1, ..., a_{d-1}, d*c+1)} with 0 <= a_i <= cap, whose normalized
    volume is d*c+1 by construction: exactly the bound value at b = d+1.
    Each hit is verified by a full lattice census before being returned;
    returns None when the cap is exhausted.
    """
    if d < 3:
        raise PreconditionError("simplex search requires d >= 3")
    if c < 1:
        raise PreconditionError("simplex search requires c >= 1")
    height = d * c + 1
    base = [tuple(0 for _ in range(d))]
    for i in range(d - 1):
        base.append(tuple(1 if j == i else 0 for j in range(d)))
    for a in itertools.product(range(cap + 1), repeat=d - 1):
        apex = a + (height,)
        p = convex_hull(base + [apex])
        if len(p.vertices) != d + 1:
            continue
        census = lattice_census(p)
        if census.b == d + 1 and census.c == c:
            assert normalized_volume(p) == height
            return p
    return None
