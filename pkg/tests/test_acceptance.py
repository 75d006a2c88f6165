"""Acceptance suite: one test per criterion, each printing a pass line.

Criterion 2's random instances are generated once per session and shared by
criteria 2, 3, 4, 6 and 7.  All assertions are exact (integer/rational); no
tolerances anywhere.
"""

import random
import subprocess
import sys
import time
from itertools import product

import pytest

from conftest import PYRAMID_POINTS, TWISTED_POINTS, TWISTED_SIMPLICES
from minvol.exact import DimensionError
from minvol.polytope import (
    convex_hull,
    lattice_census,
    min_bound,
    normalized_volume,
)
from minvol.regularity import (
    HeightFunction,
    NotRegular,
    lifting_system,
    regularity_certificate,
    verify_heights,
)
from minvol.search import SearchParams, castelnuovo_simplex_search, survey
from minvol.triangulation import (
    PointConfig,
    Triangulation,
    _simplex,
    boundary_triangulation,
    build,
    cone_first_interior,
    is_castelnuovo,
    is_unimodular,
    stellar_insert,
    validate,
)

N_RANDOM = 200


@pytest.fixture(scope="session")
def random_instances():
    """>= 200 random full-dimensional lattice polytopes with c > 0,
    d in {2,3,4}, coordinates in [0,4], together with their builds."""
    rng = random.Random(20240823)
    out = []
    while len(out) < N_RANDOM:
        d = rng.choice([2, 3, 4])
        k = rng.choice([1, 2, 3, 4])
        n = rng.randint(d + 1, d + 3)
        pts = [tuple(rng.randint(0, k) for _ in range(d)) for _ in range(n)]
        try:
            p = convex_hull(pts)
        except DimensionError:
            continue
        cfg = PointConfig.from_lattice_points(p)
        if cfg.c == 0:
            continue
        t, traces = build(cfg)
        out.append((p, cfg, t, traces))
    return out


def _passline(n, text):
    import conftest
    line = f"ACCEPTANCE criterion {n}: PASS ({text})"
    conftest.ACCEPTANCE_LINES.append(line)
    print("\n" + line)


def test_criterion_1_exact_instances(cube, dilated_simplex, box223, unit_simplex):
    start = time.time()
    for p, expected in (
        (cube, (26, 1, 48, 48, True)),
        (dilated_simplex, (34, 1, 64, 64, True)),
        (box223, (34, 2, 72, 67, False)),
    ):
        census = lattice_census(p)
        b, c, nvol, bound, cast = expected
        assert census.b == b
        assert census.c == c
        assert normalized_volume(p) == nvol
        assert min_bound(p.d, b, c) == bound
        assert is_castelnuovo(p) == cast
    census = lattice_census(unit_simplex)
    assert census.c == 0
    with pytest.raises(Exception):
        min_bound(3, census.b, 0)
    assert time.time() - start < 4.0  # four instances, each well under 1 s
    _passline(1, "cube/simplex/box/unit-simplex censuses, volumes and bounds exact")


def test_criterion_2_count_bound(random_instances):
    assert len(random_instances) >= 200
    for p, cfg, t, traces in random_instances:
        d = p.d
        bound = min_bound(d, cfg.b, cfg.c)
        assert len(t) >= bound
        for tr in traces:
            assert tr.q >= d - tr.e + 1
            assert tr.q * tr.e >= d
    _passline(2, f"{len(random_instances)} builds meet the count bound")


def test_criterion_3_axioms_and_conservation(random_instances):
    for p, cfg, t, traces in random_instances:
        report = validate(t)
        assert report.passed, (p.vertices, report.violations[:3])
        assert t.volume_sum() == normalized_volume(p)
    _passline(3, "validate + volume conservation on every build")


def test_criterion_4_volume_bound(random_instances):
    for p, cfg, t, traces in random_instances:
        assert normalized_volume(p) >= min_bound(p.d, cfg.b, cfg.c)
    _passline(4, "normalized volume >= bound on every instance")


def test_criterion_5_pick_equality():
    rng = random.Random(55)
    done = 0
    while done < 50:
        pts = [tuple(rng.randint(0, 4) for _ in range(2))
               for _ in range(rng.randint(3, 7))]
        try:
            p = convex_hull(pts)
        except DimensionError:
            continue
        census = lattice_census(p)
        if census.c == 0:
            continue
        assert normalized_volume(p) == min_bound(2, census.b, census.c)
        done += 1
    _passline(5, "50 random polygons: exact equality")


def test_criterion_6_castelnuovo_unimodular(random_instances, cube, dilated_simplex):
    checked = 0
    for p in (cube, dilated_simplex):
        assert is_castelnuovo(p)
        t, _ = build(PointConfig.from_lattice_points(p))
        assert is_unimodular(t)
        checked += 1
    for p, cfg, t, traces in random_instances:
        if normalized_volume(p) == min_bound(p.d, cfg.b, cfg.c):
            assert is_unimodular(t)
            checked += 1
    params = SearchParams(d=3, box=3, samples=1000, seed=601,
                          regularity_checks=False)
    rows = survey(params)
    assert len(rows) >= 1000
    for row in rows:
        if row.castelnuovo:
            assert row.unimodular_build
            checked += 1
    _passline(6, f"{checked} Castelnuovo instances, all builds unimodular")


def test_criterion_7_regularity(random_instances):
    certified = 0
    for p, cfg, t, traces in random_instances:
        if len(cfg.points) > 25:
            continue
        if normalized_volume(p) != min_bound(p.d, cfg.b, cfg.c):
            continue
        result = regularity_certificate(t)
        assert isinstance(result, HeightFunction), p.vertices
        assert verify_heights(t, result)
        certified += 1
    assert certified > 0

    # known non-regular fixture, cross-checked by Fourier-Motzkin
    from oracles import fm_feasible
    poly = convex_hull(TWISTED_POINTS)
    cfg = PointConfig.from_points(poly, TWISTED_POINTS)
    t = Triangulation(cfg, tuple(_simplex(cfg, s) for s in TWISTED_SIMPLICES))
    assert validate(t).passed
    assert isinstance(regularity_certificate(t), NotRegular)
    rows = lifting_system(t)
    assert not fm_feasible(rows, [1] * len(rows))
    _passline(7, f"{certified} Castelnuovo builds certified regular; "
                 "twisted fixture NOT regular (FM agrees)")


def test_criterion_8_worked_example():
    p = convex_hull(PYRAMID_POINTS[:5])
    cfg = PointConfig.from_points(p, PYRAMID_POINTS)
    assert (cfg.b, cfg.c) == (6, 2)
    bc = boundary_triangulation(cfg)
    assert len(bc.cells) == 8
    interior = cfg.interior_indices_lex()
    t1 = cone_first_interior(bc, interior[0])
    assert len(t1) == 8
    t2, trace = stellar_insert(t1, interior[1])
    assert len(t2) == 12
    assert (trace.e, trace.q) == (2, 2)
    assert len(t2) >= min_bound(3, 6, 2) == 11
    # the subdivided face is the triangle on the first interior point, the
    # extra boundary point and a base vertex, as in the narrative
    face_pts = {cfg.points[i] for i in trace.face}
    assert face_pts == {(2, 2, 3), (1, 1, 0), (8, 8, 0)}
    assert validate(t2).passed
    _passline(8, "pyramid: 8 -> 8 -> 12 simplices, insertion e=2 q=2")


def test_criterion_9_simplex_search():
    for c in (1, 2, 3):
        start = time.time()
        p = castelnuovo_simplex_search(3, c, cap=10)
        elapsed = time.time() - start
        assert p is not None, f"no witness found for c={c} (reportable finding)"
        census = lattice_census(p)
        assert census.b == 4
        assert census.c == c
        assert normalized_volume(p) == min_bound(3, 4, c)
        assert elapsed < 30.0
    _passline(9, "witnesses for d=3, c=1,2,3 verified")


def test_criterion_10_determinism(tmp_path):
    poly = tmp_path / "cube.poly"
    poly.write_text("3 8\n" + "\n".join(
        " ".join(str(x) for x in p) for p in sorted(product([0, 2], repeat=3))) + "\n")

    def run(args):
        return subprocess.run([sys.executable, "-m", "minvol.cli"] + args,
                              capture_output=True, check=False)

    outs = []
    for i in (1, 2):
        cert = tmp_path / f"cube{i}.cert"
        r1 = run(["analyze", str(poly)])
        r2 = run(["triangulate", str(poly), str(cert)])
        r3 = run(["search", "--dim", "2", "--samples", "10", "--seed", "7",
                  "--regularity-cap", "0"])
        assert r1.returncode == r2.returncode == r3.returncode == 0
        outs.append((r1.stdout, cert.read_bytes(), r3.stdout))
    # triangulate output embeds the certificate path, so compare the
    # machine-readable artifacts: analyze output, certificate, search rows
    assert outs[0] == outs[1]
    _passline(10, "byte-identical analyze/certificate/search across runs")
