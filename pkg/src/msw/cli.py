"""Command-line front end.

Every subcommand reads space files or construction names and writes one
JSON report to stdout.  Exit codes:

    0   verified / completed
    1   violation witness found
    2   inconclusive / enumeration or scan capped
    3   malformed or unreadable space file (diagnostics on stderr)
    4   usage error or violated operation precondition

Reports are byte-identical across reruns of the same invocation and seed,
except for the isolated "timing" object.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional

from . import constructions, duality, primitivity, recognition, spectral, theorems
from .errors import (
    EnumerationTooLargeError,
    MswError,
    PreconditionViolatedError,
    ScanTooLargeError,
    SpaceFileError,
)
from .linalg import FieldSpec, Matrix
from .spaces import DEFAULT_ELEMENT_CAP, upper_rank
from . import spacefile

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INCONCLUSIVE = 2
EXIT_BAD_FILE = 3
EXIT_USAGE = 4

CONSTRUCTION_NAMES = ("altn", "strict-ut", "wedge", "p-alt")


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2; keep 4
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    """Shared flag definitions, accepted before and after the subcommand.

    The subcommand copies use SUPPRESS defaults so a fresh subparser
    namespace never overwrites values already parsed at the top level.
    """
    holder = argparse.ArgumentParser(add_help=False)
    miss = argparse.SUPPRESS
    holder.add_argument("--cap", type=int, default=miss if suppress else DEFAULT_ELEMENT_CAP,
                        help="element enumeration cap (default 2**22)")
    holder.add_argument("--json-indent", type=int, default=miss if suppress else 2,
                        help="indentation of the JSON report (default 2)")
    holder.add_argument("--quiet", action="store_true", default=miss if suppress else False,
                        help="suppress progress messages on stderr")
    return holder


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="msw", description="matrix space workbench over prime fields",
                     parents=[_global_flags(suppress=False)])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_command(name, **kwargs):
        return sub.add_parser(name, parents=[_global_flags(suppress=True)], **kwargs)

    c = add_command("construct", help="write a named construction to a space file")
    c.add_argument("name", choices=CONSTRUCTION_NAMES)
    c.add_argument("--n", type=int, required=True, help="matrix size")
    c.add_argument("--p", type=int, required=True, help="prime modulus")
    c.add_argument("--seed", type=int, default=0, help="seed for randomized constructions")
    c.add_argument("-o", "--output", required=True, help="output space file")

    pr = add_command("props", help="spectral predicates of a space")
    pr.add_argument("file")

    pm = add_command("primitivity", help="non-degeneracy conditions of a space")
    pm.add_argument("file")

    du = add_command("dual", help="pairing-matrix space of a square space")
    du.add_argument("file")
    du.add_argument("--P", dest="frame", default=None,
                    help="space file holding a single invertible frame matrix")

    rd = add_command("reduce", help="minimal degenerate column compression")
    rd.add_argument("file")

    rc = add_command("recognize", help="extremal-case recognition")
    rc.add_argument("kind", choices=("alt", "strict-ut", "wedge"))
    rc.add_argument("file")
    rc.add_argument("--budget", type=int, default=recognition.DEFAULT_PROBE_BUDGET)

    sc = add_command("scan", help="exhaustive scan of a Grassmannian of spaces")
    sc.add_argument("--n", type=int, required=True)
    sc.add_argument("--p", type=int, required=True)
    sc.add_argument("--dim", type=int, required=True)
    sc.add_argument("--predicate", choices=("trivial-spectrum", "nilpotent"), required=True)
    sc.add_argument("--partition", default=None, help="index range A:B")
    sc.add_argument("--ceiling", type=int, default=theorems.DEFAULT_SCAN_CEILING)

    th = add_command("theorem", help="bound verifiers")
    th.add_argument("which", choices=("gerstenhaber", "generalized", "atkinson"))
    th.add_argument("file")
    th.add_argument("--variant", choices=("trivial-spectrum", "nilpotent"),
                    default="trivial-spectrum", help="predicate for the dimension bound")
    th.add_argument("--budget", type=int, default=recognition.DEFAULT_PROBE_BUDGET)

    pb = add_command("probe", help="seeded randomized property checks")
    pb.add_argument("--spec", choices=theorems.PROBE_SPECS, required=True)
    pb.add_argument("--seed", type=int, default=0)
    pb.add_argument("--trials", type=int, default=100)
    return parser


def _emit(report: dict, args) -> None:
    indent = args.json_indent if args.json_indent and args.json_indent > 0 else None
    sys.stdout.write(json.dumps(report, indent=indent) + "\n")


def _wrap(command: str, params: dict, p: Optional[int], result: dict, verdict: Optional[str],
          started: float) -> dict:
    out = {
        "tool": "msw",
        "schema": "msw-report-1",
        "command": command,
        "params": params,
    }
    if p is not None:
        out["field"] = {"p": p}
    if verdict is not None:
        out["verdict"] = verdict
    out["result"] = result
    out["timing"] = {"seconds": round(time.perf_counter() - started, 6)}
    return out


def _verdict_exit(verdict: str) -> int:
    if verdict in ("verified", "completed", "not-applicable"):
        return EXIT_OK
    if verdict == "violated":
        return EXIT_VIOLATION
    return EXIT_INCONCLUSIVE


def _construct(args) -> int:
    field = FieldSpec(args.p)
    if args.name == "altn":
        space = constructions.alternating_space(args.n, field)
    elif args.name == "strict-ut":
        space = constructions.strict_upper_triangular_space(args.n, field)
    elif args.name == "wedge":
        space = constructions.wedge_space(args.n, field)
    else:  # p-alt
        scale = constructions.random_invertible(field, args.n, args.seed)
        space = constructions.scaled_alternating_space(scale)
    spacefile.save(space, args.output)
    if not args.quiet:
        print(f"wrote {args.name} (dim {space.dim}, shape {space.rows}x{space.cols}) to {args.output}",
              file=sys.stderr)
    return EXIT_OK


def _props(args, started) -> int:
    space = spacefile.load(args.file)
    report = spectral.spectral_report(space, args.cap)
    _emit(_wrap("props", {"file": args.file}, space.field.p, report.to_json_dict(), "completed", started), args)
    return EXIT_OK


def _primitivity(args, started) -> int:
    space = spacefile.load(args.file)
    report = primitivity.classify(space, args.cap)
    _emit(_wrap("primitivity", {"file": args.file}, space.field.p, report.to_json_dict(), "completed", started), args)
    return EXIT_OK


def _load_frame(path: str) -> Matrix:
    holder = spacefile.load(path)
    if holder.dim != 1 or holder.rows != holder.cols:
        raise SpaceFileError(
            f"frame file {path} must hold exactly one square matrix",
            ("expected a single square basis matrix",),
        )
    return holder.basis_matrices()[0]


def _dual(args, started) -> int:
    space = spacefile.load(args.file)
    frame = _load_frame(args.frame) if args.frame else None
    dual = duality.dual_space(space, frame)
    result = dual.to_json_dict()
    result["space_urk"] = upper_rank(dual.space, args.cap)[0]
    result["condition_i"] = primitivity.condition_i(dual.space)[0]
    result["condition_ii"] = primitivity.condition_ii(dual.space)[0]
    _emit(_wrap("dual", {"file": args.file, "frame": args.frame}, space.field.p, result, "completed", started), args)
    return EXIT_OK


def _reduce(args, started) -> int:
    space = spacefile.load(args.file)
    i_ok, w_i = primitivity.condition_i(space)
    ii_ok, w_ii = primitivity.condition_ii(space)
    if not (i_ok and ii_ok):
        result = {
            "reduced": False,
            "failing_condition": "i" if not i_ok else "ii",
            "witness": [int(v) for v in (w_i if not i_ok else w_ii)],
        }
        _emit(_wrap("reduce", {"file": args.file}, space.field.p, result, "completed", started), args)
        return EXIT_OK
    compression = primitivity.minimal_degenerate_compression(space, args.cap)
    result = {
        "reduced": True,
        "compression": None if compression is None else compression.to_json_dict(),
    }
    _emit(_wrap("reduce", {"file": args.file}, space.field.p, result, "completed", started), args)
    return EXIT_OK


def _recognize(args, started) -> int:
    space = spacefile.load(args.file)
    params = {"kind": args.kind, "file": args.file, "budget": args.budget}
    if args.kind == "alt":
        found = recognition.solve_alternating_congruence(space)
        result = {"recognized": found is not None,
                  "alternating_scale": None if found is None else found.to_lists()}
        verdict = "completed"
    elif args.kind == "strict-ut":
        tri = recognition.strict_triangularization(space)
        full = space.dim == space.rows * (space.rows - 1) // 2
        result = {
            "recognized": tri is not None,
            "similar_to_full_strict_triangular": tri is not None and full,
            "basis_change": None if tri is None else tri[1].to_lists(),
            "flag_dims": None if tri is None else [f.dim for f in tri[0]],
        }
        verdict = "completed"
    else:  # wedge
        target = constructions.wedge_space(space.cols, space.field)
        if space.shape != target.shape:
            result = {"verdict": {"kind": "distinct", "reason": "shape differs from the wedge space"}}
            verdict = "completed"
        else:
            probe = recognition.equivalence_probe(space, target, args.budget)
            result = {"verdict": probe.to_json_dict()}
            verdict = "completed" if probe.kind != "inconclusive" else "inconclusive"
    _emit(_wrap("recognize", params, space.field.p, result, verdict, started), args)
    return EXIT_OK if verdict == "completed" else EXIT_INCONCLUSIVE


def _parse_partition(text: Optional[str]) -> Optional[tuple[int, int]]:
    if text is None:
        return None
    try:
        lo, hi = text.split(":")
        return int(lo), int(hi)
    except ValueError as exc:
        raise PreconditionViolatedError(f"partition must be A:B, got {text!r}") from exc


def _scan(args, started) -> int:
    field = FieldSpec(args.p)
    report = theorems.exhaustive_scan(
        args.n, field, args.dim, args.predicate,
        partition=_parse_partition(args.partition), ceiling=args.ceiling,
    )
    _emit(_wrap("scan", {"n": args.n, "dim": args.dim, "predicate": args.predicate,
                         "partition": report.params["partition"]},
                args.p, report.to_json_dict(), report.verdict, started), args)
    return _verdict_exit(report.verdict)


def _theorem(args, started) -> int:
    space = spacefile.load(args.file)
    if args.which == "gerstenhaber":
        report = theorems.verify_gerstenhaber_bound(space, args.variant, args.cap)
    elif args.which == "generalized":
        report = theorems.run_generalized_pipeline(space, args.cap)
    else:
        report = theorems.verify_atkinson_on_instance(space, args.cap, args.budget)
    _emit(_wrap("theorem", {"which": args.which, "file": args.file}, space.field.p,
                report.to_json_dict(), report.verdict, started), args)
    return _verdict_exit(report.verdict)


def _probe(args, started) -> int:
    report = theorems.random_probe(args.spec, args.seed, args.trials)
    _emit(_wrap("probe", {"spec": args.spec, "seed": args.seed, "trials": args.trials},
                None, report.to_json_dict(), report.verdict, started), args)
    return _verdict_exit(report.verdict)


def main(argv: Optional[list[str]] = None) -> int:
    started = time.perf_counter()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "construct":
            return _construct(args)
        if args.command == "props":
            return _props(args, started)
        if args.command == "primitivity":
            return _primitivity(args, started)
        if args.command == "dual":
            return _dual(args, started)
        if args.command == "reduce":
            return _reduce(args, started)
        if args.command == "recognize":
            return _recognize(args, started)
        if args.command == "scan":
            return _scan(args, started)
        if args.command == "theorem":
            return _theorem(args, started)
        if args.command == "probe":
            return _probe(args, started)
        raise AssertionError(f"unhandled command {args.command}")
    except SpaceFileError as exc:
        print(f"msw: {exc}", file=sys.stderr)
        for line in exc.details:
            print(f"msw:   {line}", file=sys.stderr)
        return EXIT_BAD_FILE
    except (EnumerationTooLargeError, ScanTooLargeError) as exc:
        print(f"msw: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except PreconditionViolatedError as exc:
        print(f"msw: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MswError as exc:
        print(f"msw: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
