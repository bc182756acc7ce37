"""Command-line entry point.

Subcommands: validate, reconstruct, check, dual, rmatrix, group, dims, gen.
Reports are deterministic JSON by default (--text for a human format); exit
codes are 0 (pass), 1 (check failure), 2 (input error), 3 (internal
inconsistency).
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .aqg import (
    InconsistentSolve,
    InvalidBundle,
    NotFinite,
    modular_data,
    reconstruct,
    verify_axioms,
)
from .braid import MissingBraiding, braiding_to_r, triangularity, verify_quasitriangular
from .bundle import BundleSyntaxError, ShapeError, parse_bundle, serialize_bundle, validate_bundle
from .dual import dual_hopf, pontryagin_check, universal_corep, verify_universal
from .examples import (
    BadPresentation,
    DegenerateProjector,
    builtin_group,
    gen_finite_group,
    gen_pointed,
    gen_suq2,
)
from .group import cocommutative_check, grouplikes
from .linalg import Tolerance
from .report import Report

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="aqgrec",
        description="Reconstruct and verify discrete quantum groups from "
        "semisimple tensor-category data.",
    )
    p.add_argument("--version", action="version", version=f"aqgrec {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, with_bundle=True):
        if with_bundle:
            sp.add_argument("bundle", help="path to a category bundle JSON file")
        sp.add_argument("-o", "--output", default=None,
                        help="write the report/output to this path")
        sp.add_argument("--text", action="store_true",
                        help="human-readable report instead of JSON")
        sp.add_argument("--abs-tol", type=float, default=1e-9)
        sp.add_argument("--rel-tol", type=float, default=1e-9)
        sp.add_argument("--samples", type=int, default=16)
        sp.add_argument("--seed", type=int, default=42)

    common(sub.add_parser("validate", help="validate a bundle"))
    common(sub.add_parser("reconstruct", help="reconstruct and export the "
                          "quantum group structure"))
    common(sub.add_parser("check", help="reconstruct and verify all axioms"))
    common(sub.add_parser("dual", help="dual Hopf algebra and double-dual "
                          "check (closed bundles)"))
    common(sub.add_parser("rmatrix", help="R-matrix from the braiding with "
                          "the quasitriangularity suite"))
    common(sub.add_parser("group", help="intrinsic group recovery"))
    common(sub.add_parser("dims", help="labels with Hilbert and quantum "
                          "dimensions"))

    g = sub.add_parser("gen", help="generate a golden bundle")
    g.add_argument("family", choices=["zn", "s3", "d4", "q8", "pointed", "suq2"])
    g.add_argument("-o", "--output", default=None)
    g.add_argument("--n", type=int, default=3, help="order for zn/pointed")
    g.add_argument("--t", type=int, default=0, help="bicharacter exponent")
    g.add_argument("--q", type=float, default=0.5, help="deformation parameter")
    g.add_argument("--L", type=int, default=4, help="truncation level")
    g.add_argument("--text", action="store_true")
    g.add_argument("--abs-tol", type=float, default=1e-9)
    g.add_argument("--rel-tol", type=float, default=1e-9)
    g.add_argument("--samples", type=int, default=16)
    g.add_argument("--seed", type=int, default=42)
    return p


def _emit(payload: str, out_path) -> None:
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(payload)
            if not payload.endswith("\n"):
                fh.write("\n")
    else:
        sys.stdout.write(payload)
        if not payload.endswith("\n"):
            sys.stdout.write("\n")


def _report_payload(rep: Report, text: bool) -> str:
    return rep.to_text() if text else rep.to_json()


def _json_payload(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _load(args):
    with open(args.bundle) as fh:
        return parse_bundle(fh.read())


def _cmd_validate(args, tol) -> int:
    b = _load(args)
    rep = validate_bundle(b, tol)
    _emit(_report_payload(rep, args.text), args.output)
    return EXIT_PASS if rep.passed else EXIT_FAIL


def _cmd_reconstruct(args, tol) -> int:
    q = reconstruct(_load(args), tol)
    _emit(_json_payload(q.export()), args.output)
    return EXIT_PASS


def _cmd_check(args, tol) -> int:
    q = reconstruct(_load(args), tol)
    rep = verify_axioms(q, tol, n_samples=args.samples, seed=args.seed)
    modular_data(q, tol)  # raises InconsistentSolve on failure
    rep.add("modular-data", "delta = f^-2, KMS, scaling constant", 0.0, True)
    _emit(_report_payload(rep, args.text), args.output)
    return EXIT_PASS if rep.passed else EXIT_FAIL


def _cmd_dual(args, tol) -> int:
    q = reconstruct(_load(args), tol)
    T, Td, rep = dual_hopf(q, tol)
    U = universal_corep(q, T, Td, tol)
    rep.extend(verify_universal(q, U, T, Td, tol))
    _, prep = pontryagin_check(q, tol)
    rep.extend(prep)
    _emit(_report_payload(rep, args.text), args.output)
    return EXIT_PASS if rep.passed else EXIT_FAIL


def _cmd_rmatrix(args, tol) -> int:
    q = reconstruct(_load(args), tol)
    R = braiding_to_r(q)
    rep = verify_quasitriangular(q, R, tol, n_samples=max(2, args.samples // 2),
                                 seed=args.seed)
    is_tri, tri_res = triangularity(q, R, tol)
    payload = rep.to_dict()
    payload["triangular"] = bool(is_tri)
    payload["triangular_residual"] = float(tri_res)
    if args.text:
        _emit(rep.to_text() + f"\ntriangular: {is_tri} "
              f"(residual {tri_res:.3e})", args.output)
    else:
        _emit(_json_payload(payload), args.output)
    return EXIT_PASS if rep.passed else EXIT_FAIL


def _cmd_group(args, tol) -> int:
    q = reconstruct(_load(args), tol)
    group, _, _, rep = grouplikes(q, tol, seed=args.seed)
    cocomm, crep = cocommutative_check(q, tol)
    rep.extend(crep)
    payload = rep.to_dict()
    payload["group"] = group.export()
    payload["cocommutative"] = bool(cocomm)
    if args.text:
        _emit(rep.to_text() + f"\norder: {group.order}\n"
              f"cocommutative: {cocomm}", args.output)
    else:
        _emit(_json_payload(payload), args.output)
    return EXIT_PASS if rep.passed else EXIT_FAIL


def _cmd_dims(args, tol) -> int:
    q = reconstruct(_load(args), tol)
    rows = [
        {
            "label": i,
            "hilbert_dim": q.d(i),
            "quantum_dim": float(np.trace(q.F[i]).real),
        }
        for i in q.labels
    ]
    if args.text:
        lines = [f"{r['label']}\t{r['hilbert_dim']}\t{r['quantum_dim']:.10g}"
                 for r in rows]
        _emit("label\tdim\tquantum_dim\n" + "\n".join(lines), args.output)
    else:
        _emit(_json_payload({"labels": rows}), args.output)
    return EXIT_PASS


def _cmd_gen(args, tol) -> int:
    fam = args.family
    if fam == "zn":
        b = gen_finite_group(builtin_group(f"z{args.n}"))
    elif fam in ("s3", "d4", "q8"):
        b = gen_finite_group(builtin_group(fam))
    elif fam == "pointed":
        b = gen_pointed(args.n, args.t)
    else:
        b = gen_suq2(args.q, args.L)
    _emit(serialize_bundle(b), args.output)
    return EXIT_PASS


_HANDLERS = {
    "validate": _cmd_validate,
    "reconstruct": _cmd_reconstruct,
    "check": _cmd_check,
    "dual": _cmd_dual,
    "rmatrix": _cmd_rmatrix,
    "group": _cmd_group,
    "dims": _cmd_dims,
    "gen": _cmd_gen,
}


def run(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    tol = Tolerance(absolute=args.abs_tol, relative=args.rel_tol)
    try:
        return _HANDLERS[args.command](args, tol)
    except (OSError, json.JSONDecodeError, BundleSyntaxError, ShapeError,
            BadPresentation, DegenerateProjector, NotFinite,
            MissingBraiding) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvalidBundle as exc:
        print(f"error: bundle failed validation", file=sys.stderr)
        for c in exc.report.failures():
            print(f"  failed: {c.name} at {c.location} "
                  f"(residual {c.residual:.3e})", file=sys.stderr)
        return EXIT_FAIL
    except InconsistentSolve as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
