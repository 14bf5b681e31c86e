"""Command-line front end.

Exit status: 0 when a command completes (whatever the verdict), 1 on bad
input, 2 when a budget or enumeration cap is exhausted, 3 when ``check``
finds an oracle failure.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import cfl, oracle
from .grammar import EmptyLanguage, GrammarError, format_word, parse_grammar
from .limits import (
    BudgetExceeded,
    LimitSup,
    Max,
    Min,
    compute_inf,
    compute_sup,
    default_budget,
    describe_extremum,
    language_limits,
)
from .order_type import analyze

MAX_LEN_LIMIT = 40
EXIT_INPUT, EXIT_BUDGET, EXIT_CHECK = 1, 2, 3


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors, which is our budget status
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def show_word(word) -> str:
    return format_word(word) if word else "eps"


def _dump(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2)


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_grammar(text)
    except GrammarError as exc:
        raise InputError(f"{path}: {exc}") from None


def cmd_analyze(args) -> int:
    g = _load(args.grammar)
    verdict = analyze(g)
    if args.json:
        print(verdict.dumps())
    else:
        data = verdict.to_json()
        if verdict.rank_le_1:
            print(f"rank <= 1, order type {data['pretty']}")
        else:
            print(f"not rank <= 1: {data['reason'].replace('_', ' ')}")
        if data["limits"]:
            print("limits: " + ", ".join(data["limits"]))
    for line in verdict.diagnostics:
        print(line, file=sys.stderr)
    return 0


def cmd_limits(args) -> int:
    g = _load(args.grammar)
    lims = language_limits(g)
    words = [] if lims.is_infinite else [str(w) for w in lims.sorted(g.alphabet)]
    if args.json:
        print(_dump({"infinite": lims.is_infinite, "limits": words}))
    elif lims.is_infinite:
        print("infinitely many limits")
    else:
        for w in words:
            print(w)
    return 0


def _extremum_json(result) -> dict:
    if isinstance(result, (Max, Min)):
        return {"kind": type(result).__name__.lower(), "word": show_word(result.word)}
    kind = "limit_sup" if isinstance(result, LimitSup) else "limit_inf"
    return {"kind": kind, "limit": str(result.w)}


def _cmd_extremum(args, fn) -> int:
    g = _load(args.grammar)
    budget = args.budget if args.budget is not None else default_budget(g)
    try:
        result = fn(g, budget=budget)
    except EmptyLanguage:
        raise InputError("the language is empty") from None
    data = _extremum_json(result)
    if args.json:
        print(_dump(data))
    else:
        print(describe_extremum(result))
    return 0


def cmd_sup(args) -> int:
    return _cmd_extremum(args, compute_sup)


def cmd_inf(args) -> int:
    return _cmd_extremum(args, compute_inf)


def cmd_enumerate(args) -> int:
    g = _load(args.grammar)
    words = cfl.enumerate_words(g, max_len=args.max_len, cap=args.cap)
    if args.json:
        print(_dump({"words": [show_word(w) for w in words]}))
    else:
        for w in words:
            print(show_word(w))
    return 0


def cmd_check(args) -> int:
    if args.grammar is None:
        report = oracle.run_corpus(args.seed)
    else:
        report = oracle.check_grammar(_load(args.grammar), max_len=args.max_len)
    if args.json:
        print(_dump({"failures": report.failures, "lines": report.lines, "ok": report.ok}))
    else:
        for line in report.lines:
            print(line)
    return 0 if report.ok else EXIT_CHECK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lexorder",
                     description="Lexicographic order types of context-free languages.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text, grammar_optional=False):
        p = sub.add_parser(name, help=help_text)
        if grammar_optional:
            p.add_argument("grammar", nargs="?", help="grammar file (default: shipped corpus)")
        else:
            p.add_argument("grammar", help="grammar file")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=func)
        return p

    add("analyze", cmd_analyze, "decide rank <= 1 and compute the order type")
    add("limits", cmd_limits, "list the limits of the language")
    for name, func in (("sup", cmd_sup), ("inf", cmd_inf)):
        p = add(name, func, f"{'supremum' if name == 'sup' else 'infimum'} of the language")
        p.add_argument("--budget", type=int, default=None,
                       help="prefix budget (default 4 * grammar size + 16)")
    p = add("enumerate", cmd_enumerate, "list members up to a length, in order")
    p.add_argument("--max-len", type=int, default=6)
    p.add_argument("--cap", type=int, default=cfl.DEFAULT_CAP, help="maximum number of words")
    p = add("check", cmd_check, "run the brute-force oracle", grammar_optional=True)
    p.add_argument("--seed", type=int, default=0, help="seed of the random law checks")
    p.add_argument("--max-len", type=int, default=10)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "max_len", None) is not None and not 0 <= args.max_len <= MAX_LEN_LIMIT:
        parser.error(f"--max-len must be between 0 and {MAX_LEN_LIMIT}")
    if getattr(args, "budget", None) is not None and args.budget < 4:
        parser.error("--budget must be at least 4")
    if getattr(args, "cap", None) is not None and args.cap < 1:
        parser.error("--cap must be positive")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"lexorder: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (BudgetExceeded, cfl.CapExceeded) as exc:
        print(f"lexorder: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
