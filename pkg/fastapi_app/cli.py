#!/usr/bin/env python3
"""
Command-line front end.

Results go to stdout (or --output), logs to stderr. Exit codes: 0 success,
1 verification failure, 2 usage or parse error, 3 model defect.
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

import config
from icl.appendix import Mismatch, errata_as_expected, find_mismatches
from icl.classifier import census
from icl.enumeration import SearchBound, enumerate_rmodels, find_countermodel
from icl.formula import FormulaSyntaxError, parse_formula, parse_nword, render, variables_of
from icl.kripke import ModelDefectError, load_model
from icl.poset import build_poset, emit_dot, poset_json
from reporting import (
    classify_report, countermodel_record, eval_report, format_census, format_errata, format_eval,
    format_table, validity_table,
)
from verification import VerifyOptions, run_verification

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILURE, EXIT_USAGE, EXIT_DEFECT = 0, 1, 2, 3

MAX_TABLE_LEN = 8


def cmd_table(max_len: int, fmt: str = "csv") -> str:
    if not 0 <= max_len <= MAX_TABLE_LEN:
        raise ValueError(f"table length must be between 0 and {MAX_TABLE_LEN}, got {max_len}")
    return format_table(validity_table(max_len), fmt)


def cmd_errata() -> list[Mismatch]:
    return find_mismatches()


def cmd_eval(model_path: str, formula_text: str) -> dict:
    return eval_report(load_model(model_path), parse_formula(formula_text))


def cmd_classify(word_text: str) -> dict:
    return classify_report(parse_nword(word_text))


def cmd_verify(max_len: Optional[int], bound: SearchBound) -> tuple[int, str]:
    report = run_verification(VerifyOptions.from_config(max_len=max_len, bound=bound))
    return (EXIT_OK if report.ok else EXIT_FAILURE), report.summary()


def _bound(args) -> SearchBound:
    return config.bound_from(args.max_worlds, args.max_height)


def _write(text: str, output: Optional[str]) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    path = Path(output)
    if not path.is_absolute() and path.parent == Path("."):
        path = config.get_output_path(output)
    path.write_text(text, encoding="utf-8")
    logger.info(f"wrote {path}")


def _json(value) -> str:
    return json.dumps(value, ensure_ascii=False, indent=2) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-worlds", type=int, default=None, help=f"Countermodel search: most worlds (default {config.DEFAULT_MAX_WORLDS}, at most {config.MAX_SEARCH_WORLDS}).")
    common.add_argument("--max-height", type=int, default=None, help="Countermodel search: longest chain, 0 for unbounded.")
    common.add_argument("--output", default=None, help="Write the result to a file (bare names go to the output directory).")

    parser = argparse.ArgumentParser(prog="icl", description="Negation-words of Intuitionistic Control Logic.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="Evaluate a formula at every world of a model.")
    p.add_argument("model", help="Model JSON file.")
    p.add_argument("formula")
    p.add_argument("--format", choices=["text", "json"], default="text")

    for name, help_text in (("valid", "Decide validity within the search bound."),
                            ("countermodel", "Find the smallest countermodel within the search bound.")):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("formula")

    p = sub.add_parser("classify", parents=[common], help="Normalize a negation-word.")
    p.add_argument("word")
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("census", parents=[common], help="Partition all words up to a length into classes.")
    p.add_argument("--max-len", type=int, default=config.TABLE_MAX_LEN)
    p.add_argument("--format", choices=["json", "csv", "markdown"], default="json")

    p = sub.add_parser("table", parents=[common], help="Validity table over the nine contexts.")
    p.add_argument("--max-len", type=int, default=config.TABLE_MAX_LEN)
    p.add_argument("--format", choices=["csv", "markdown", "json"], default="csv")

    p = sub.add_parser("errata", parents=[common], help="Audit the printed validity tables.")
    p.add_argument("--format", choices=["markdown", "csv", "json"], default="markdown")

    p = sub.add_parser("poset", parents=[common], help="Hasse diagram of the fifteen classes.")
    p.add_argument("--constants", action="store_true", help="Adjoin 0, bot and 1.")
    p.add_argument("--format", choices=["dot", "json"], default="dot")

    p = sub.add_parser("verify", parents=[common], help="Run every verification suite.")
    p.add_argument("--max-len", type=int, default=None, help=f"Word length swept (default {config.VERIFY_MAX_LEN}; 1 is quick mode).")
    p.add_argument("--format", choices=["text", "json"], default="text")
    return parser


def run(args: argparse.Namespace) -> int:
    if args.command == "eval":
        report = cmd_eval(args.model, args.formula)
        _write(_json(report) if args.format == "json" else format_eval(report), args.output)
        return EXIT_OK

    if args.command == "valid":
        f, bound = parse_formula(args.formula), _bound(args)
        found = find_countermodel(f, bound)
        if found is None:
            checked = sum(1 for _ in enumerate_rmodels(bound, max(variables_of(f), default=1)))
            _write(f"valid: {render(f)} holds in all {checked} models within {bound}\n", args.output)
        else:
            _write(f"invalid: {render(f)} is refuted at {found[1]}\n", args.output)
        return EXIT_OK

    if args.command == "countermodel":
        found = find_countermodel(parse_formula(args.formula), _bound(args))
        _write(_json(None if found is None else countermodel_record(*found)), args.output)
        return EXIT_OK

    if args.command == "classify":
        report = cmd_classify(args.word)
        if args.format == "json":
            text = _json(report)
        else:
            text = "".join(f"{key}: {value}\n" for key, value in report.items())
        _write(text, args.output)
        return EXIT_OK

    if args.command == "census":
        if args.max_len < 0:
            raise ValueError(f"census length must be non-negative, got {args.max_len}")
        _write(format_census(census(args.max_len), args.format), args.output)
        return EXIT_OK

    if args.command == "table":
        _write(cmd_table(args.max_len, args.format), args.output)
        return EXIT_OK

    if args.command == "errata":
        mismatches = cmd_errata()
        _write(format_errata(mismatches, args.format), args.output)
        return EXIT_OK if errata_as_expected(mismatches) else EXIT_FAILURE

    if args.command == "poset":
        poset = build_poset(args.constants, _bound(args))
        _write(emit_dot(poset) if args.format == "dot" else _json(poset_json(poset)), args.output)
        return EXIT_OK

    if args.command == "verify":
        if args.format == "json":
            report = run_verification(VerifyOptions.from_config(max_len=args.max_len, bound=_bound(args)))
            _write(_json(report.to_dict()), args.output)
            return EXIT_OK if report.ok else EXIT_FAILURE
        status, summary = cmd_verify(args.max_len, _bound(args))
        _write(summary, args.output)
        return status

    raise ValueError(f"unknown command: {args.command}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=config.LOG_LEVEL)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    try:
        return run(args)
    except ModelDefectError as e:
        for defect in e.defects:
            print(f"model defect: {defect}", file=sys.stderr)
        return EXIT_DEFECT
    except FormulaSyntaxError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as e:
        print(f"error: {str(e)}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
