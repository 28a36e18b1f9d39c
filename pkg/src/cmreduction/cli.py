"""Command-line entry point: ``cmreduction <subcommand> ...``.

Exit codes: 0 success / all pass, 1 any FAIL, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import cmclass, genus2, torsion
from .corpus import run_corpus, shipped_corpus_path
from .errors import CMReductionError, HypothesisNotMet, NotCovered, ParseError, UnsupportedPlace
from .localfield import QQ, FieldElement, QuadraticField, get_place
from .tate import tate_algorithm
from .weierstrass import WeierstrassModel, quadratic_twist

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    def __init__(self, flag: str, message: str):
        super().__init__(f"{flag}: {message}")


def parse_field_flag(text: str) -> QuadraticField:
    if text.strip().upper() == "Q":
        return QQ
    try:
        return QuadraticField(int(text))
    except ValueError as exc:
        raise UsageError("--field", f"expected Q or a squarefree integer D, got {text!r} ({exc})") from exc


def parse_coefficient(text: str, field: QuadraticField, flag: str = "--ainvs") -> FieldElement:
    """'n', 'n/c' (rational) or 'a/b/c' meaning (a + b sqrt D)/c."""
    parts = text.strip().split("/")
    try:
        nums = [int(x) for x in parts]
        if len(nums) == 1:
            return FieldElement(nums[0], 0, 1, field)
        if len(nums) == 2:
            return FieldElement(nums[0], 0, nums[1], field)
        if len(nums) == 3:
            if nums[1] and field.D is None:
                raise ValueError("irrational part over Q")
            return FieldElement(nums[0], nums[1], nums[2], field)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(flag, f"bad coefficient {text!r}: {exc}") from exc
    raise UsageError(flag, f"bad coefficient {text!r}")


def parse_model(args) -> WeierstrassModel:
    field = parse_field_flag(args.field)
    coeffs = [c for c in args.ainvs.split(",")]
    if len(coeffs) != 5:
        raise UsageError("--ainvs", f"need five coefficients, got {len(coeffs)}")
    try:
        return WeierstrassModel([parse_coefficient(c, field) for c in coeffs], field)
    except CMReductionError as exc:
        raise UsageError("--ainvs", str(exc)) from exc


def parse_place(args, field):
    try:
        return get_place(field, args.p, args.place_index)
    except ValueError as exc:
        raise UsageError("--p/--place-index", str(exc)) from exc


def emit(obj, as_table: bool, out=None):
    out = out or sys.stdout
    if not as_table:
        print(json.dumps(obj), file=out)
        return
    if isinstance(obj, list):
        for item in obj:
            print(item if not isinstance(item, (dict, list)) else json.dumps(item), file=out)
        return
    for key, value in obj.items():
        print(f"{key}: {value if not isinstance(value, (dict, list)) else json.dumps(value)}", file=out)


def cmd_reduce(args) -> int:
    model = parse_model(args)
    place = parse_place(args, model.field)
    ld = tate_algorithm(model, place, args.max_residue)
    emit(ld.to_json(), args.table)
    return EXIT_OK


def cmd_twist(args) -> int:
    model = parse_model(args)
    d = parse_coefficient(args.d, model.field, "--d")
    try:
        twisted = quadratic_twist(model, d)
    except CMReductionError as exc:
        raise UsageError("--d", str(exc)) from exc
    emit(twisted.to_json(), args.table)
    return EXIT_OK


def cmd_classify_cm(args) -> int:
    if args.ainvs is not None:
        model = parse_model(args)
        place = parse_place(args, model.field)
        if args.cm_field is None:
            raise UsageError("--cm-field", "required when --ainvs is given")
        try:
            spec = cmclass.CMSpec(parse_field_flag(args.cm_field), not args.non_maximal, not args.potential)
        except CMReductionError as exc:
            raise UsageError("--cm-field", str(exc)) from exc
        try:
            report = cmclass.check_curve(model, place, spec, args.label, max_prime=args.max_residue)
        except HypothesisNotMet as exc:
            emit({"label": args.label, "verdict": "NOT_COVERED", "reason": str(exc)}, args.table)
            return EXIT_OK
        emit(report.to_json(), args.table)
        return EXIT_OK if report.passed else EXIT_FAIL

    if args.p is None or args.vp is None or args.j is None:
        raise UsageError("classify-cm", "give --p, --vp and --j, or a curve via --ainvs")
    lookup = cmclass.allowed_types_potential_cm if args.potential else cmclass.allowed_types_cm
    try:
        allowed = lookup(args.p, args.vp, cmclass.JClass(args.j))
    except NotCovered as exc:
        emit({"allowed": None, "not_covered": str(exc)}, args.table)
        return EXIT_OK
    emit(cmclass.sorted_types(allowed), args.table)
    return EXIT_OK


def cmd_genus2_types(args) -> int:
    try:
        spec = genus2.QuarticCMSpec(args.mu)
        if args.restricted:
            types = genus2.allowed_potentially_good_restricted(args.mu)
        elif args.potentially_good:
            types = genus2.allowed_potentially_good(args.mu)
        else:
            ctx = genus2.Genus2Context(spec, False, d=args.d, r=args.r)
            types = genus2.allowed_not_potentially_good(ctx)
    except CMReductionError as exc:
        raise UsageError("--mu", str(exc)) from exc
    except ValueError as exc:
        raise UsageError("--d/--r", str(exc)) from exc
    emit(genus2.sorted_symbols(types), args.table)
    return EXIT_OK


def cmd_torsion_bound(args) -> int:
    try:
        if args.bad_reduction:
            emit({"bound": torsion.bad_reduction_bound(args.g, args.p, args.e, args.mu)}, args.table)
            return EXIT_OK
        inp = torsion.TorsionInput(args.g, args.p, args.q if args.q is not None else args.p, args.e, args.mu)
    except ValueError as exc:
        raise UsageError("torsion-bound", str(exc)) from exc
    emit(torsion.torsion_bounds(inp).to_json(), args.table)
    return EXIT_OK


def cmd_corpus(args) -> int:
    path = args.path or shipped_corpus_path()
    try:
        summary = run_corpus(path, args.parallelism, args.max_residue)
    except OSError as exc:
        raise UsageError("corpus", str(exc)) from exc
    if args.table:
        for r in summary.results:
            computed = r.report["computed"] if r.report else "-"
            print(f"{r.status:<12} {computed:<6} {r.label}{'  ' + r.error if r.error else ''}")
        c = summary.counts
        print(f"pass={c['pass']} fail={c['fail']} not_covered={c['not_covered']}")
    else:
        for r in summary.results:
            print(json.dumps(r.to_json()))
        print(json.dumps({"summary": summary.counts}))
    return EXIT_FAIL if summary.any_fail else EXIT_OK


def _add_output_flags(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--json", action="store_true", help="JSON output (default)")
    g.add_argument("--table", action="store_true", help="plain-text output")


def _add_curve_flags(p, required=True):
    p.add_argument("--field", default="Q", help="Q or a squarefree integer D for Q(sqrt D)")
    p.add_argument("--ainvs", required=required, help="a1,a2,a3,a4,a6; quadratic coefficients as a/b/c")


def _add_place_flags(p, required=True):
    p.add_argument("--p", type=int, required=required, help="rational prime below the place")
    p.add_argument("--place-index", type=int, default=0, help="which place above p (default 0)")
    p.add_argument("--max-residue", type=int, default=None, help="largest supported residue characteristic")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cmreduction", description="Local reduction data and CM reduction-type tables.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", help="Tate's algorithm at one place")
    _add_curve_flags(p)
    _add_place_flags(p)
    _add_output_flags(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("twist", help="quadratic twist of a model")
    _add_curve_flags(p)
    p.add_argument("--d", required=True, help="twisting element (same syntax as a coefficient)")
    _add_output_flags(p)
    p.set_defaults(func=cmd_twist)

    p = sub.add_parser("classify-cm", help="allowed Kodaira types for CM curves, or check a curve")
    _add_curve_flags(p, required=False)
    _add_place_flags(p, required=False)
    p.add_argument("--vp", type=int, help="v(p) at the place (table lookup mode)")
    p.add_argument("--j", choices=[c.value for c in cmclass.JClass], help="j class (table lookup mode)")
    p.add_argument("--potential", action="store_true", help="CM only over an extension")
    p.add_argument("--cm-field", help="D of the imaginary quadratic CM field (curve mode)")
    p.add_argument("--non-maximal", action="store_true", help="endomorphism ring is a non-maximal order")
    p.add_argument("--label", default="", help="label echoed in the report")
    _add_output_flags(p)
    p.set_defaults(func=cmd_classify_cm)

    p = sub.add_parser("genus2-types", help="admissible genus-2 reduction types")
    p.add_argument("--mu", type=int, required=True, help="number of roots of unity in the quartic CM field")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--potentially-good", action="store_true")
    g.add_argument("--not-potentially-good", action="store_true")
    p.add_argument("--restricted", action="store_true", help="sharper table for mu 8 or 10 (implies potentially good)")
    p.add_argument("--d", type=int, help="degree of singularity")
    p.add_argument("--r", type=int, help="r-invariant")
    _add_output_flags(p)
    p.set_defaults(func=cmd_genus2_types)

    p = sub.add_parser("torsion-bound", help="local torsion bound")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, help="residue cardinality (default p)")
    p.add_argument("--e", type=int, default=1)
    p.add_argument("--mu", type=int, required=True)
    p.add_argument("--bad-reduction", action="store_true", help="only the bound for bad reduction")
    _add_output_flags(p)
    p.set_defaults(func=cmd_torsion_bound)

    p = sub.add_parser("corpus", help="check a JSON-lines corpus (default: shipped examples)")
    p.add_argument("path", nargs="?", help="corpus file")
    p.add_argument("--parallelism", type=int, default=1)
    p.add_argument("--max-residue", type=int, default=None)
    _add_output_flags(p)
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "genus2-types" and not (args.potentially_good or args.not_potentially_good or args.restricted):
        parser.error("genus2-types: give --potentially-good, --not-potentially-good or --restricted")
    if args.command == "genus2-types" and (args.potentially_good or args.restricted) and (args.d is not None or args.r is not None):
        parser.error("--d/--r: only valid with --not-potentially-good")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"{parser.prog}: parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnsupportedPlace as exc:
        print(f"{parser.prog}: error: --max-residue: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CMReductionError as exc:
        print(f"{parser.prog}: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
