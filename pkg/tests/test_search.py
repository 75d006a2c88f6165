import pytest

from minvol.polytope import (
    PreconditionError,
    lattice_census,
    min_bound,
    normalized_volume,
)
from minvol.search import (
    Rejection,
    SearchParams,
    castelnuovo_simplex_search,
    format_survey,
    random_polytope,
    survey,
)
from oracles import in_hull


class TestRandomPolytope:
    def test_deterministic(self):
        params = SearchParams(d=3, box=4, samples=1, seed=42)
        a = random_polytope(params, 0)
        b = random_polytope(params, 0)
        if isinstance(a, Rejection):
            assert a == b
        else:
            assert a.vertices == b.vertices
            assert a.facets == b.facets

    def test_rejections_are_values(self):
        params = SearchParams(d=3, box=2, samples=1, seed=0)
        kinds = set()
        for i in range(300):
            r = random_polytope(params, i)
            if isinstance(r, Rejection):
                kinds.add(r.reason)
        assert kinds <= {"lower-dimensional", "no-interior-point"}
        assert kinds  # small boxes reject plenty

    def test_bad_params_rejected(self):
        with pytest.raises(PreconditionError):
            SearchParams(d=1, box=3, samples=1)
        with pytest.raises(PreconditionError):
            SearchParams(d=3, box=0, samples=1)


class TestSurvey:
    def test_known_rows(self, cube, box223):
        from minvol.search import _row_for
        params = SearchParams(d=3, box=4, samples=1, seed=0)
        row = _row_for(cube, params)
        assert (row.d, row.b, row.c) == (3, 26, 1)
        assert (row.normalized_volume, row.bound) == (48, 48)
        assert row.castelnuovo and row.unimodular_build
        assert row.regular_build == "skipped"  # |V| = 27 above the default cap

        row2 = _row_for(box223, params)
        assert (row2.d, row2.b, row2.c) == (3, 34, 2)
        assert (row2.normalized_volume, row2.bound) == (72, 67)
        assert not row2.castelnuovo

    def test_reproducible(self):
        params = SearchParams(d=3, box=3, samples=15, seed=99, regularity_checks=False)
        rows1 = survey(params)
        rows2 = survey(params)
        assert format_survey(rows1) == format_survey(rows2)

    def test_d2_all_castelnuovo(self):
        params = SearchParams(d=2, box=4, samples=50, seed=7, regularity_checks=False)
        rows = survey(params)
        assert len(rows) == 50
        assert all(r.castelnuovo for r in rows)
        assert all(r.unimodular_build for r in rows)

    def test_bound_always_holds(self):
        params = SearchParams(d=3, box=4, samples=30, seed=5, regularity_checks=False)
        for row in survey(params):
            assert row.normalized_volume >= row.bound
            assert row.bound == min_bound(row.d, row.b, row.c)
            assert row.castelnuovo == (row.normalized_volume == row.bound)

    def test_castelnuovo_rows_unimodular_and_regular(self):
        params = SearchParams(d=3, box=2, samples=40, seed=13, regularity_cap=25)
        for row in survey(params):
            if row.castelnuovo:
                assert row.unimodular_build
                assert row.regular_build in (True, "skipped")

    def test_exhaustive_mode(self):
        params = SearchParams(d=2, box=2, samples=30, seed=0, exhaustive=True,
                              regularity_checks=False)
        rows = survey(params)
        assert rows == survey(params)
        assert 0 < len(rows) <= 30
        assert all(r.castelnuovo for r in rows)  # d = 2


class TestSimplexSearch:
    @pytest.mark.parametrize("c", [1, 2, 3])
    def test_witness_found_and_verified(self, c):
        p = castelnuovo_simplex_search(3, c, cap=10)
        assert p is not None
        census = lattice_census(p)
        assert len(p.vertices) == 4
        assert census.b == 4
        assert census.c == c
        assert normalized_volume(p) == min_bound(3, 4, c) == 3 * c + 1
        # census cross-checked by an independent membership oracle
        for q in census.interior:
            assert in_hull(q, list(p.vertices))

    def test_bad_args(self):
        with pytest.raises(PreconditionError):
            castelnuovo_simplex_search(2, 1)
        with pytest.raises(PreconditionError):
            castelnuovo_simplex_search(3, 0)

    def test_d4(self):
        p = castelnuovo_simplex_search(4, 1, cap=10)
        assert p is not None
        census = lattice_census(p)
        assert (census.b, census.c) == (5, 1)
        assert normalized_volume(p) == 5
