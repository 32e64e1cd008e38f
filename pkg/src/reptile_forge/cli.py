"""Command-line front door.

Subcommands: fiedler check|reconstruct, hill generate|subdivide|verify|grow,
angles classify|catalog, audit run|step, export.  JSON results go to stdout
or --out; human-readable summaries go to stderr.  "-" means stdin/stdout.
Exit codes: 0 success, 1 verification failure, 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import audit as audit_mod
from . import hill as hill_mod
from .algebra import AlgebraicReal
from .fiedler import ReconstructionError, realizability_check, reconstruct_simplex
from .jsonio import (
    InputFormatError,
    export_obj,
    format_real,
    load_matrix,
    load_simplex,
    parse_real,
    read_json_document,
)
from .trig import catalog, match_rational_angle

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_USAGE = 2


def _precision_digits() -> int:
    raw = os.environ.get("REPTILE_FORGE_PRECISION")
    if not raw:
        return 12
    try:
        value = float(raw)
        if not 0 < value < 1:
            raise ValueError
        import math

        return max(1, round(-math.log10(value)))
    except ValueError:
        raise InputFormatError(
            f"REPTILE_FORGE_PRECISION must be a width like 1e-12, got {raw!r}"
        ) from None


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _emit(payload, out: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if out and out != "-":
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _log(msg: str) -> None:
    print(msg, file=sys.stderr)


def _kernel_json(verdict, digits):
    if verdict.kernel is None:
        return None
    return [format_real(k, digits) for k in verdict.kernel]


# -- fiedler ---------------------------------------------------------------


def cmd_fiedler_check(args) -> int:
    digits = _precision_digits()
    matrix = load_matrix(read_json_document(_read_input(args.matrix)))
    verdict = realizability_check(matrix)
    payload = {
        "valid": verdict.valid,
        "kernel": _kernel_json(verdict, digits),
        "failure_witness": None
        if verdict.failure_witness is None
        else {k: str(v) for k, v in verdict.failure_witness.items()},
        "char_poly": None
        if verdict.char_poly is None
        else [str(c) for c in verdict.char_poly],
    }
    _emit(payload, args.out)
    _log(f"realizability: {'valid' if verdict.valid else 'invalid'}")
    return EXIT_OK if verdict.valid else EXIT_VERIFICATION


def cmd_fiedler_reconstruct(args) -> int:
    matrix = load_matrix(read_json_document(_read_input(args.matrix)))
    try:
        s = reconstruct_simplex(matrix)
    except ReconstructionError as e:
        _log(f"not realizable: {e.verdict.failure_witness}")
        _emit({"error": "not realizable", "witness": str(e.verdict.failure_witness)}, args.out)
        return EXIT_VERIFICATION
    _emit(s.to_json(), args.out)
    _log("reconstructed simplex (longest edge normalized to 1)")
    return EXIT_OK


# -- hill ------------------------------------------------------------------


def _hill_spec(args) -> hill_mod.HillSpec:
    cos = parse_real(args.cos)
    if isinstance(cos, AlgebraicReal):
        if cos.is_rational:
            cos = cos.as_fraction()
        else:
            return hill_mod.HillSpec.from_pair_cos(args.dim, float(cos))
    return hill_mod.HillSpec.from_pair_cos(args.dim, Fraction(cos))


def cmd_hill_generate(args) -> int:
    spec = _hill_spec(args)
    s = hill_mod.hill_simplex(spec)
    _emit(s.to_json(), args.out)
    _log(f"Hill simplex: dim {args.dim}, pairwise cosine {args.cos}, mode {spec.mode}")
    return EXIT_OK


def cmd_hill_subdivide(args) -> int:
    spec = _hill_spec(args)
    sub = hill_mod.subdivide(spec, args.m)
    _emit(sub.to_json(), args.out)
    _log(f"subdivided into {len(sub.pieces)} pieces (m = {args.m})")
    return EXIT_OK


def cmd_hill_verify(args) -> int:
    sub = hill_mod.Subdivision.from_json(read_json_document(_read_input(args.subdivision)))
    report = hill_mod.verify_reptile(sub)
    _emit(report.to_json(), args.out)
    _log("reptile verification: " + ("all checks passed" if report.all_ok else "FAILED"))
    return EXIT_OK if report.all_ok else EXIT_VERIFICATION


def cmd_hill_grow(args) -> int:
    spec = _hill_spec(args)
    cells, report = hill_mod.grow_space_tiling(
        spec, args.generations, m=args.m, budget=args.budget
    )
    if args.obj:
        stats = export_obj(cells, args.obj)
        _log(f"wrote {args.obj}: {stats['vertices']} vertices, {stats['faces']} faces")
    _emit(report.to_json(), args.out)
    _log(
        f"growth: {report.cells_emitted}/{report.cell_total} cells"
        + (" (truncated)" if report.truncated else "")
    )
    return EXIT_OK if report.sampled_disjoint_ok else EXIT_VERIFICATION


# -- angles ----------------------------------------------------------------


def cmd_angles_classify(args) -> int:
    digits = _precision_digits()
    value = parse_real(
        read_json_document(args.value) if args.value.strip().startswith("{") else args.value
    )
    angle = match_rational_angle(value)
    matches = []
    if angle is not None:
        from .trig import cosine_of

        matches.append(
            {
                "angle_deg": float(angle.degrees),
                "angle": f"{angle.p}*pi/{angle.q}",
                "minpoly": list(cosine_of(angle).minpoly),
                "approx": format_real(cosine_of(angle), digits)["approx"],
            }
        )
    _emit(matches, args.out)
    _log(
        f"cosine of a rational angle: {matches[0]['angle'] if matches else 'no match'}"
    )
    return EXIT_OK


def cmd_angles_catalog(args) -> int:
    digits = _precision_digits()
    cat = catalog(args.degree)
    payload = [
        {
            "angle_deg": float(a.degrees),
            "angle": f"{a.p}*pi/{a.q}",
            "minpoly": list(c.minpoly),
            "approx": format_real(c, digits)["approx"],
        }
        for a, c in cat.entries
    ]
    _emit(payload, args.out)
    _log(f"catalog degree {args.degree}: {len(payload)} angles")
    return EXIT_OK


# -- audit -----------------------------------------------------------------


def cmd_audit_run(args) -> int:
    reports = audit_mod.run_full_audit(args.kmax)
    payload = [r.to_json() for r in reports]
    out = args.json or args.out
    _emit(payload, out)
    ok = True
    for r in reports:
        _log(f"k = {r.k}: {r.conclusion}")
        if audit_mod.is_perfect_cube(r.k):
            continue
        ok = ok and r.conclusion == "excluded"
    if args.verify:
        for r in reports:
            if not audit_mod.verify_report(r):
                _log(f"certificate re-verification FAILED for k = {r.k}")
                ok = False
    return EXIT_OK if ok else EXIT_VERIFICATION


def cmd_audit_step(args) -> int:
    step = audit_mod.run_step(args.id, k=args.k)
    _emit(step.to_json(), args.out)
    _log(f"step {step.id}: {step.verdict}")
    if step.verdict == "fail":
        return EXIT_VERIFICATION
    return EXIT_OK


# -- export ----------------------------------------------------------------


def cmd_export(args) -> int:
    doc = read_json_document(_read_input(args.input))
    if "pieces" in doc:
        sub = hill_mod.Subdivision.from_json(doc)
        items = [sub.parent] + list(sub.pieces) if args.include_parent else list(sub.pieces)
        names = (["parent"] if args.include_parent else []) + [
            f"piece_{i:03d}" for i in range(len(sub.pieces))
        ]
    else:
        items = [load_simplex(doc)]
        names = ["simplex"]
    stats = export_obj(items, args.obj, names=names)
    _log(f"wrote {args.obj}: {stats['vertices']} vertices, {stats['faces']} faces")
    _emit(stats, args.out)
    return EXIT_OK


# -- wiring ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="reptile-forge",
        description="Exact tools for reptile simplices: realizability, angle catalogs, "
        "Hill subdivisions, and the nonexistence audit.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    fied = sub.add_parser("fiedler", help="dihedral-angle realizability").add_subparsers(
        dest="sub", required=True
    )
    fc = fied.add_parser("check", help="exact realizability of a cosine matrix")
    fc.add_argument("matrix", help="matrix JSON path or '-' for stdin")
    fc.add_argument("--out", help="write JSON result here instead of stdout")
    fc.set_defaults(fn=cmd_fiedler_check)
    fr = fied.add_parser("reconstruct", help="build a simplex from a cosine matrix")
    fr.add_argument("matrix", help="matrix JSON path or '-' for stdin")
    fr.add_argument("--out", help="write simplex JSON here")
    fr.set_defaults(fn=cmd_fiedler_reconstruct)

    hill = sub.add_parser("hill", help="Hill simplices and reptile subdivisions").add_subparsers(
        dest="sub", required=True
    )
    hg = hill.add_parser("generate", help="build a Hill simplex")
    hs = hill.add_parser("subdivide", help="cut a Hill simplex into m^d pieces")
    hv = hill.add_parser("verify", help="verify the reptile property of a subdivision")
    hw = hill.add_parser("grow", help="iterate the subdivision into a larger tiling")
    for cmd in (hg, hs, hw):
        cmd.add_argument("--dim", type=int, default=3, help="dimension (2..4)")
        cmd.add_argument(
            "--cos", default="0", help="common pairwise cosine, e.g. 0, 1/2, sqrt(2)/4"
        )
        cmd.add_argument("--out", help="write JSON result here")
    hs.add_argument("--m", type=int, required=True, help="cuts per side (pieces = m^d)")
    hg.set_defaults(fn=cmd_hill_generate)
    hs.set_defaults(fn=cmd_hill_subdivide)
    hv.add_argument("subdivision", help="subdivision JSON path or '-' for stdin")
    hv.add_argument("--out", help="write report JSON here")
    hv.set_defaults(fn=cmd_hill_verify)
    hw.add_argument("--m", type=int, default=2)
    hw.add_argument("--generations", type=int, required=True)
    hw.add_argument("--budget", type=int, default=20000, help="piece cap for streaming")
    hw.add_argument("--obj", help="write an OBJ mesh of the cells here")
    hw.set_defaults(fn=cmd_hill_grow)

    ang = sub.add_parser("angles", help="rational angles and cosine catalogs").add_subparsers(
        dest="sub", required=True
    )
    ac = ang.add_parser("classify", help="match an exact cosine to a rational angle")
    ac.add_argument("value", help='cosine spec: "1/2", "sqrt(2)/2", or minpoly JSON')
    ac.add_argument("--out")
    ac.set_defaults(fn=cmd_angles_classify)
    at = ang.add_parser("catalog", help="all rational angles of one cosine degree")
    at.add_argument("degree", type=int)
    at.add_argument("--out")
    at.set_defaults(fn=cmd_angles_catalog)

    aud = sub.add_parser("audit", help="the nonexistence case analysis").add_subparsers(
        dest="sub", required=True
    )
    ar = aud.add_parser("run", help="audit every k up to a bound")
    ar.add_argument("--kmax", type=int, required=True)
    ar.add_argument("--json", help="write the report list here")
    ar.add_argument("--out", help="alias for --json")
    ar.add_argument(
        "--verify",
        action="store_true",
        help="re-validate every certificate with the independent checker",
    )
    ar.set_defaults(fn=cmd_audit_run)
    ast = aud.add_parser("step", help="run a single audit step by id")
    ast.add_argument("id", help=f"one of: {', '.join(sorted(audit_mod.STEP_BUILDERS))}")
    ast.add_argument("--k", type=int, help="k for the k-dependent steps")
    ast.add_argument("--out")
    ast.set_defaults(fn=cmd_audit_step)

    ex = sub.add_parser("export", help="write OBJ meshes from simplex/subdivision JSON")
    ex.add_argument("input", help="simplex or subdivision JSON path or '-'")
    ex.add_argument("--obj", required=True, help="output OBJ path")
    ex.add_argument("--include-parent", action="store_true")
    ex.add_argument("--out", help="write export stats JSON here")
    ex.set_defaults(fn=cmd_export)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except InputFormatError as e:
        _log(f"input error: {e}")
        return EXIT_USAGE
    except (ValueError, OSError) as e:
        _log(f"error: {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
