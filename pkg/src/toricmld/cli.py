"""Command-line interface.

Subcommands: mld, lct, adjoin, flat, survey, check.  Exit codes: 0 success,
1 invalid input, 2 check or assertion failure, 3 internal error.
"""
from __future__ import annotations

import argparse
import json
import sys
import traceback

from .adjunction import adjoin_invariant_divisor, check_precise_inversion
from .errors import CheckFailed, InputError, ResourceLimit
from .flat import build_flat_structure
from .germ import Face, full_face, mld_bruteforce_oracle, mld_face, mld_global
from .newton import (
    lct_fermat,
    lct_general_member,
    lct_monomial,
    lct_newton,
    newton_poly_from_exponents,
)
from .rationals import rat, rat_str
from .survey import CorpusConfig, parse_germ, rows_to_csv, rows_to_json, run_survey, verify_corpus

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CHECK = 2
EXIT_INTERNAL = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # route argparse failures to exit code 1
        raise InputError(message)


def _read_germ(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    return parse_germ(text)


def _emit(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=1, sort_keys=True) + "\n"
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_int_list(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip() != ""]
    except ValueError as exc:
        raise InputError(f"expected a comma-separated integer list, got {text!r}") from exc


def _cmd_mld(args) -> int:
    germ = _read_germ(args.input)
    if args.global_:
        report = mld_global(germ)
    elif args.face:
        report = mld_face(germ, Face.coerce(_parse_int_list(args.face), germ.dim))
    else:
        report = mld_face(germ, full_face(germ.dim))
    payload = report.to_json_dict()
    if args.oracle_radius:
        oracle = mld_bruteforce_oracle(germ, report.face, args.oracle_radius)
        payload["oracle"] = rat_str(oracle)
        if oracle != report.value:
            _emit(payload, args.out)
            return EXIT_CHECK
    _emit(payload, args.out)
    return EXIT_OK


def _cmd_lct(args) -> int:
    germ = _read_germ(args.input)
    if args.exponents:
        exps = []
        for part in args.exponents.split(";"):
            exps.append(tuple(_parse_int_list(part)))
        report = lct_newton(newton_poly_from_exponents(germ, exps))
        payload = report.to_json_dict()
    elif args.general_member:
        payload = lct_general_member(germ).to_json_dict()
    elif args.monomial:
        value = lct_monomial(germ, tuple(_parse_int_list(args.monomial)))
        payload = {"lct": rat_str(value), "kind": "monomial"}
    elif args.fermat:
        if germ.lattice.index != 1:
            raise InputError("the diagonal-sum closed form needs the standard lattice")
        degrees = _parse_int_list(args.fermat)
        value = lct_fermat(germ.dim, germ.boundary, degrees)
        payload = {"lct": rat_str(value), "kind": "fermat"}
    else:
        raise InputError("choose one of --exponents, --general-member, --monomial, --fermat")
    _emit(payload, args.out)
    return EXIT_OK


def _cmd_adjoin(args) -> int:
    germ = _read_germ(args.input)
    result = adjoin_invariant_divisor(germ, args.divisor)
    payload = result.to_json_dict()
    status = EXIT_OK
    if args.check:
        report = check_precise_inversion(germ, args.divisor)
        payload["precise_inversion"] = report.to_json_dict()
        if not report.passed:
            status = EXIT_CHECK
    _emit(payload, args.out)
    return status


def _cmd_flat(args) -> int:
    germ = _read_germ(args.input)
    result = build_flat_structure(germ, args.max_steps)
    _emit(result.to_json_dict(), args.out)
    return EXIT_OK


def _cmd_survey(args) -> int:
    boundary = [rat(b) for b in args.boundary_set.split(",")]
    rows = run_survey(
        args.dim,
        args.max_index,
        boundary,
        mod_permutations=args.mod_permutations,
        jobs=args.jobs,
    )
    text = rows_to_json(rows) if args.json else rows_to_csv(rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_check(args) -> int:
    if args.corpus_config:
        try:
            with open(args.corpus_config, "r", encoding="utf-8") as fh:
                config = CorpusConfig.from_dict(json.load(fh))
        except OSError as exc:
            raise InputError(f"cannot read {args.corpus_config}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise InputError(f"bad config JSON: {exc}") from exc
    else:
        config = CorpusConfig()
    status, report = verify_corpus(config)
    _emit(report, args.out)
    return EXIT_CHECK if status else EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="toricmld", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mld", help="minimal log discrepancy of a germ document")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--face", help="comma-separated 1-based support, e.g. 1,3")
    p.add_argument("--global", dest="global_", action="store_true", help="minimum over all faces")
    p.add_argument("--oracle-radius", type=int, default=0, help="cross-check by brute force up to this radius")
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_mld)

    p = sub.add_parser("lct", help="log canonical threshold")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--exponents", help='semicolon-separated exponent vectors, e.g. "2,0;0,3"')
    p.add_argument("--general-member", action="store_true")
    p.add_argument("--monomial", help='single exponent vector, e.g. "1,2,3"')
    p.add_argument("--fermat", help='degrees, e.g. "2,3"')
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_lct)

    p = sub.add_parser("adjoin", help="restrict to an invariant divisor with coefficient 1")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--divisor", type=int, required=True)
    p.add_argument("--check", action="store_true", help="also compare minima upstairs and downstairs")
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_adjoin)

    p = sub.add_parser("flat", help="build a flat log structure")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--max-steps", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_flat)

    p = sub.add_parser("survey", help="enumerate a germ corpus and tabulate invariants")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--max-index", type=int, required=True)
    p.add_argument("--boundary-set", default="0", help='comma-separated coefficients, e.g. "0,1/2,1"')
    p.add_argument("--out")
    p.add_argument("--json", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--mod-permutations", action="store_true")
    p.set_defaults(fn=_cmd_survey)

    p = sub.add_parser("check", help="verify a corpus against all internal cross-checks")
    p.add_argument("--corpus-config")
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except (InputError, ResourceLimit) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CheckFailed as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except Exception:
        traceback.print_exc()
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
