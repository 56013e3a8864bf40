"""Command-line front end.

    jordanet analyze  <file|catalog://id> [--json] [--trials N]
    jordanet chow     <file|catalog://id> [--rank] [--kernel] [--det-stats] [--generic-n3]
    jordanet pencil   <file|catalog://id>
    jordanet copencil <file|catalog://id>
    jordanet plucker  <file|catalog://id>
    jordanet limit    <file|catalog://id>
    jordanet emptiness <polyfile> [--degree D]
    jordanet verify   [--subset NAME] [--seed N] [--json]
    jordanet catalog

Space files use the JSON schema documented in the README; ``catalog://<id>``
resolves to a built-in reference space.  ``--json`` prints a byte-stable
report (fixed key order, no timing); exit codes are 0 success, 1
verification failure, 2 parse error, 3 precondition violation.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Optional, Union

from .catalog import canonical, catalog_ids, catalog_note
from .chow import chow_det_generic, chow_kernel_forms, chow_matrix, chow_rank
from .classify import (
    classify_copencil_S3,
    classify_net_S4,
    classify_pencil,
    classify_abstract,
)
from .errors import InputError, JordanetError, PreconditionError
from .exact import frac_str, parse_poly
from .io import load_space_file
from .jordan import (
    check_reciprocal_identity,
    is_jordan,
    jordan_closure,
    radical,
    structure_constants,
)
from .linalg import Mat
from .linalg import det as linalg_det
from .spaces import (
    MatSpace,
    ParametricBasis,
    find_invertible,
    generic_det,
    grassmann_limit,
    plucker,
)
from .varieties import CATALOGS, catalog_eval, macaulay_emptiness
from .verify import run_verification


def _resolve_space(token: str) -> Union[MatSpace, ParametricBasis]:
    if token.startswith("catalog://"):
        return canonical(token[len("catalog://"):])
    return load_space_file(token)


def _render_value(v):
    if isinstance(v, Fraction):
        return frac_str(v)
    if isinstance(v, Mat):
        return [[_render_value(v[i, j]) for j in range(v.cols)] for i in range(v.rows)]
    if isinstance(v, (list, tuple)):
        return [_render_value(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _render_value(x) for k, x in v.items()}
    return v


def _emit(report: dict, as_json: bool, elapsed: Optional[float] = None) -> None:
    if as_json:
        print(json.dumps(_render_value(report), sort_keys=True, indent=1))
        return
    for key, value in report.items():
        if key == "command":
            continue
        rendered = _render_value(value)
        if isinstance(rendered, (dict, list)):
            rendered = json.dumps(rendered)
        print(f"{key}: {rendered}")
    if elapsed is not None:
        print(f"elapsed: {elapsed:.2f}s")


def cmd_analyze(args) -> int:
    space = _resolve_space(args.space)
    if isinstance(space, ParametricBasis):
        raise PreconditionError("UNSUPPORTED_DIM", "analyze expects a plain space; use 'limit'")
    report = {
        "command": "analyze",
        "input": args.space,
        "n": space.n,
        "m": space.m,
        "regular": not generic_det(space).is_zero(),
    }
    if not report["regular"]:
        report.update({"jordan": None, "closure_dim": None, "radical_dim": None,
                       "abstract_class": None, "reciprocal_ok": None, "witness": None,
                       "net_class": None})
        return _done(report, args)
    u, coords = find_invertible(space)
    report["unit_coordinates"] = list(coords)
    ok, witness = is_jordan(space, u)
    report["jordan"] = ok
    report["witness"] = None
    if witness is not None:
        report["witness"] = {"i": witness.i, "j": witness.j, "residue": witness.residue}
    report["closure_dim"] = jordan_closure(space, u).m
    recip_ok, _ = check_reciprocal_identity(space, u, trials=args.trials)
    report["reciprocal_ok"] = recip_ok
    report["radical_dim"] = None
    report["abstract_class"] = None
    report["net_class"] = None
    if ok:
        a = structure_constants(space, u)
        report["radical_dim"] = radical(a)[1].dim
        if space.m in (2, 3):
            report["abstract_class"] = classify_abstract(a)
        try:
            if space.n == 4 and space.m == 3:
                report["net_class"] = classify_net_S4(space)
            elif space.m == 2:
                report["net_class"] = classify_pencil(space).label
            elif space.n == 3 and space.m == 4:
                report["net_class"] = classify_copencil_S3(space)
        except PreconditionError as err:
            if err.code != "UNRECOGNIZED":
                raise
            report["net_class"] = "UNRECOGNIZED"
    return _done(report, args)


def cmd_chow(args) -> int:
    report = {"command": "chow", "input": args.space or "generic-n3"}
    if args.generic_n3 or (args.det_stats and args.space is None):
        det = chow_det_generic(3)
        report["det_degree"] = int(det.total_degree())
        report["det_terms"] = det.term_count()
        return _done(report, args)
    if args.space is None:
        raise InputError("PARSE_ERROR", "chow needs a space or --generic-n3")
    space = _resolve_space(args.space)
    if isinstance(space, ParametricBasis):
        raise PreconditionError("UNSUPPORTED_DIM", "chow expects a plain space")
    wants_all = not (args.rank or args.kernel or args.det_stats)
    if args.rank or wants_all:
        report["rank"] = chow_rank(space)
    if args.kernel or wants_all:
        report["kernel_forms"] = [str(f) for f in chow_kernel_forms(space)]
    if args.det_stats:
        if space.n != 3 or space.m != 3:
            raise PreconditionError("UNSUPPORTED_DIM", "--det-stats applies to nets of 3x3 matrices")
        report["det_value"] = linalg_det(chow_matrix(space).as_mat())
    return _done(report, args)


def cmd_pencil(args) -> int:
    space = _resolve_space(args.space)
    got = classify_pencil(space)
    return _done({"command": "pencil", "input": args.space,
                  "kind": got.kind, "label": got.label}, args)


def cmd_copencil(args) -> int:
    space = _resolve_space(args.space)
    return _done({"command": "copencil", "input": args.space,
                  "class": classify_copencil_S3(space)}, args)


def cmd_plucker(args) -> int:
    space = _resolve_space(args.space)
    if isinstance(space, ParametricBasis):
        raise PreconditionError("UNSUPPORTED_DIM", "plucker expects a plain space")
    pv = plucker(space)
    nonzero = {"".join(str(i) for i in key): value for key, value in sorted(pv.nonzero().items())}
    report = {
        "command": "plucker",
        "input": args.space,
        "coordinates": len(pv.values),
        "nonzero": nonzero,
    }
    if space.n == 4 and space.m == 3:
        quadrics = {cid: catalog_eval(cid, pv)[0] for cid in CATALOGS if cid.startswith("plucker")}
        report["certificate_values"] = quadrics
    return _done(report, args)


def cmd_limit(args) -> int:
    family = _resolve_space(args.space)
    if isinstance(family, MatSpace):
        raise PreconditionError("NOT_GENERIC_RANK", "limit expects a parametric family")
    lim = grassmann_limit(family)
    report = {"command": "limit", "input": args.space, "n": lim.n, "m": lim.m,
              "basis": [b for b in lim.basis]}
    try:
        if lim.n == 4 and lim.m == 3:
            report["net_class"] = classify_net_S4(lim)
    except JordanetError:
        report["net_class"] = None
    return _done(report, args)


def cmd_emptiness(args) -> int:
    polys = []
    for line in Path(args.polyfile).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        polys.append(parse_poly(line))
    if not polys:
        raise InputError("PARSE_ERROR", "no polynomials in the input file")
    cert = macaulay_emptiness(polys, args.degree)
    return _done({"command": "emptiness", "input": args.polyfile, "degree": args.degree,
                  "kind": cert.kind, "span_rank": cert.span_rank,
                  "span_target": cert.span_target}, args)


def cmd_verify(args) -> int:
    t0 = time.time()
    results = run_verification(args.subset, seed=args.seed)
    failures = [r for r in results if not r.ok]
    if args.json:
        report = {
            "command": "verify",
            "subset": args.subset or "all",
            "seed": args.seed,
            "passed": len(results) - len(failures),
            "failed": len(failures),
            "checks": [{"name": r.name, "ok": r.ok, "detail": r.detail} for r in results],
        }
        print(json.dumps(_render_value(report), sort_keys=True, indent=1))
    else:
        for r in results:
            status = "PASS" if r.ok else "FAIL"
            suffix = f"  [{r.detail}]" if (r.detail and not r.ok) else ""
            print(f"{status}  {r.name}{suffix}")
        print(f"{len(results) - len(failures)}/{len(results)} checks passed "
              f"({time.time() - t0:.1f}s)")
    return 1 if failures else 0


def cmd_catalog(args) -> int:
    report = {"command": "catalog",
              "entries": {cid: catalog_note(cid) for cid in catalog_ids()}}
    return _done(report, args)


def _done(report: dict, args) -> int:
    _emit(report, getattr(args, "json", False))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jordanet",
        description="Exact analysis of linear subspaces of symmetric matrices: "
                    "closure under the inverse-twisted product, reciprocal spans, "
                    "Chow matrices, and classification invariants.",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    def common(p, space=True):
        if space:
            p.add_argument("space", help="JSON space file or catalog://<id>")
        p.add_argument("--json", action="store_true", help="byte-stable JSON report")
        p.add_argument("--seed", type=int, default=0, help="seed for sampled checks")

    p = sub.add_parser("analyze", help="regularity, closure, radical, classification")
    common(p)
    p.add_argument("--trials", type=int, default=10, help="sample points for the inverse test")
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("chow", help="Chow matrix rank, kernel forms, determinant stats")
    p.add_argument("space", nargs="?", help="JSON space file or catalog://<id>")
    p.add_argument("--json", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rank", action="store_true")
    p.add_argument("--kernel", action="store_true")
    p.add_argument("--det-stats", action="store_true")
    p.add_argument("--generic-n3", action="store_true",
                   help="statistics of the fully symbolic 3x3 Chow determinant")
    p.set_defaults(fn=cmd_chow)

    p = sub.add_parser("pencil", help="classify a two-dimensional space")
    common(p)
    p.set_defaults(fn=cmd_pencil)

    p = sub.add_parser("copencil", help="classify a codimension-two space in S^3")
    common(p)
    p.set_defaults(fn=cmd_copencil)

    p = sub.add_parser("plucker", help="dual Pluecker coordinates and certificate values")
    common(p)
    p.set_defaults(fn=cmd_plucker)

    p = sub.add_parser("limit", help="Grassmannian limit of a parametric family at t -> 0")
    common(p)
    p.set_defaults(fn=cmd_limit)

    p = sub.add_parser("emptiness", help="Macaulay certificate for a homogeneous system")
    p.add_argument("polyfile", help="text file, one polynomial per line")
    p.add_argument("--degree", type=int, default=4)
    p.add_argument("--json", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_emptiness)

    p = sub.add_parser("verify", help="run the built-in verification suite")
    p.add_argument("--subset", default=None,
                   help="intro | jordan | chow | chow-oracle | classify | tau | "
                        "pencil | complement | plucker | count")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("catalog", help="list built-in catalog entries")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_catalog)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.time()
    try:
        code = args.fn(args)
    except InputError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except JordanetError as err:
        print(f"error: {err}", file=sys.stderr)
        return 3
    if not getattr(args, "json", False) and args.cmd != "verify":
        print(f"elapsed: {time.time() - t0:.2f}s")
    return code


if __name__ == "__main__":
    sys.exit(main())
