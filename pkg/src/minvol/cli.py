"""Command-line interface.

Exit codes: 0 success, 1 mathematical violation or defect finding, 2 input
error.  Machine-readable output goes to stdout as `key: value` lines;
diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import sys

from .polytope import (
    FormatError,
    PreconditionError,
    lattice_census,
    min_bound,
    normalized_volume,
    parse_polytope_file,
)
from .regularity import (
    HeightFunction,
    format_heights,
    regularity_certificate,
    verify_heights,
)
from .search import SearchParams, format_survey, survey
from .triangulation import (
    BoundViolationError,
    PointConfig,
    build,
    format_certificate,
    is_unimodular,
    parse_certificate,
    triangulation_from_certificate,
    validate,
)


def _read(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise FormatError(str(exc)) from None


def _load_polytope(path):
    return parse_polytope_file(_read(path))


def cmd_analyze(args):
    p = _load_polytope(args.file)
    census = lattice_census(p)
    nvol = normalized_volume(p)
    print(f"d: {p.d}")
    print(f"vertices: {len(p.vertices)}")
    print(f"facets: {len(p.facets)}")
    print(f"b: {census.b}")
    print(f"c: {census.c}")
    vol = p.volume
    print(f"volume: {vol.numerator}/{vol.denominator}")
    print(f"normalized_volume: {nvol}")
    if census.c == 0:
        print("bound: n/a (c = 0)")
        print("bound_holds: n/a (c = 0)")
        print("castelnuovo: n/a (c = 0)")
        return 0
    bound = min_bound(p.d, census.b, census.c)
    print(f"bound: {bound}")
    print(f"bound_holds: {str(nvol >= bound).lower()}")
    print(f"castelnuovo: {str(nvol == bound).lower()}")
    if nvol < bound:
        print("defect: volume below the proven bound", file=sys.stderr)
        return 1
    return 0


def cmd_triangulate(args):
    p = _load_polytope(args.file)
    census = lattice_census(p)
    if census.c == 0:
        print("error: polytope has no interior lattice points", file=sys.stderr)
        return 2
    cfg = PointConfig.from_lattice_points(p)
    try:
        t, traces = build(cfg)
    except BoundViolationError as exc:
        print(f"defect: {exc}", file=sys.stderr)
        return 1
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(format_certificate(t))
    print(f"simplices: {len(t)}")
    print(f"bound: {min_bound(p.d, cfg.b, cfg.c)}")
    print(f"coning_cells: {len(t) - sum(tr.q * tr.e for tr in traces)}")
    for k, tr in enumerate(traces, start=2):
        print(f"insertion: k={k} e={tr.e} q={tr.q}")
    print(f"certificate: {args.out}")
    return 0


def _load_certified(polytope_path, cert_path):
    p = _load_polytope(polytope_path)
    d, points, simplices = parse_certificate(_read(cert_path))
    if d != p.d:
        raise FormatError(f"certificate dimension {d} != polytope dimension {p.d}")
    try:
        t = triangulation_from_certificate(p, points, simplices)
    except PreconditionError as exc:
        raise FormatError(f"certificate/polytope mismatch: {exc}") from None
    return p, t


def cmd_verify(args):
    p, t = _load_certified(args.file, args.cert)
    report = validate(t)
    if not report.passed:
        axiom, message = report.violations[0]
        print("verify: FAIL")
        print(f"violation: axiom ({axiom}): {message}")
        return 1
    cfg = t.config
    if cfg.c > 0:
        bound = min_bound(p.d, cfg.b, cfg.c)
        if len(t) < bound:
            print("verify: FAIL")
            print(f"violation: count {len(t)} below bound {bound}")
            return 1
        print(f"bound: {bound}")
    print(f"simplices: {len(t)}")
    print(f"volume_sum: {t.volume_sum()}")
    print(f"unimodular: {str(is_unimodular(t)).lower()}")
    print("verify: PASS")
    return 0


def cmd_regular(args):
    p, t = _load_certified(args.file, args.cert)
    report = validate(t)
    if not report.passed:
        axiom, message = report.violations[0]
        print(f"error: certificate invalid: axiom ({axiom}): {message}", file=sys.stderr)
        return 2
    result = regularity_certificate(t)
    if not isinstance(result, HeightFunction):
        print("NOT REGULAR")
        return 0
    assert verify_heights(t, result)
    sys.stdout.write(format_heights(result))
    return 0


def cmd_search(args):
    params = SearchParams(
        d=args.dim,
        box=args.box,
        samples=args.samples,
        seed=args.seed,
        exhaustive=args.exhaustive,
        regularity_checks=args.regularity_cap > 0,
        regularity_cap=args.regularity_cap,
    )
    rows = survey(params)
    sys.stdout.write(format_survey(rows))
    return 0


def make_parser():
    parser = argparse.ArgumentParser(
        prog="minvol",
        description="Exact triangulation toolkit for the minimal-volume "
        "bound on lattice polytopes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="census, volume and bound of a polytope file")
    a.add_argument("file")
    a.set_defaults(func=cmd_analyze)

    tcmd = sub.add_parser("triangulate", help="build a triangulation certificate")
    tcmd.add_argument("file")
    tcmd.add_argument("out")
    tcmd.set_defaults(func=cmd_triangulate)

    v = sub.add_parser("verify", help="verify a triangulation certificate")
    v.add_argument("file")
    v.add_argument("cert")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("regular", help="decide regularity of a certified triangulation")
    r.add_argument("file")
    r.add_argument("cert")
    r.set_defaults(func=cmd_regular)

    s = sub.add_parser("search", help="survey random polytopes")
    s.add_argument("--dim", type=int, default=3)
    s.add_argument("--box", type=int, default=3)
    s.add_argument("--samples", type=int, default=50)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--exhaustive", action="store_true")
    s.add_argument("--regularity-cap", type=int, default=25,
                   help="max point count for regularity checks; 0 disables")
    s.set_defaults(func=cmd_search)
    return parser


def main(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
