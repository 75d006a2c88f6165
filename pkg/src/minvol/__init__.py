"""Exact-arithmetic toolkit for the minimal-volume lower bound of lattice
polytopes: constructive triangulations, the equality-case (Castelnuovo)
predicate, unimodularity and regularity certificates, and a small-polytope
survey."""

from .exact import DegeneracyError, DimensionError, affine_rank, barycentric, det
from .polytope import (
    Facet,
    FormatError,
    PointCensus,
    Polytope,
    PreconditionError,
    convex_hull,
    lattice_census,
    min_bound,
    normalized_volume,
)
from .regularity import (
    HeightFunction,
    NotRegular,
    regularity_certificate,
    verify_heights,
)
from .search import (
    SearchParams,
    SurveyRow,
    castelnuovo_simplex_search,
    random_polytope,
    survey,
)
from .triangulation import (
    BoundaryComplex,
    BoundViolationError,
    InsertionTrace,
    PointConfig,
    Simplex,
    Triangulation,
    boundary_triangulation,
    build,
    cone_first_interior,
    is_castelnuovo,
    is_unimodular,
    locate,
    stellar_insert,
    validate,
)

__all__ = [
    "DegeneracyError",
    "DimensionError",
    "affine_rank",
    "barycentric",
    "det",
    "Facet",
    "FormatError",
    "PointCensus",
    "Polytope",
    "PreconditionError",
    "convex_hull",
    "lattice_census",
    "min_bound",
    "normalized_volume",
    "HeightFunction",
    "NotRegular",
    "regularity_certificate",
    "verify_heights",
    "SearchParams",
    "SurveyRow",
    "castelnuovo_simplex_search",
    "random_polytope",
    "survey",
    "BoundaryComplex",
    "BoundViolationError",
    "InsertionTrace",
    "PointConfig",
    "Simplex",
    "Triangulation",
    "boundary_triangulation",
    "build",
    "cone_first_interior",
    "is_castelnuovo",
    "is_unimodular",
    "locate",
    "stellar_insert",
    "validate",
]

__version__ = "0.1.0"
