"""Command-line front end: ``mimicauto SUBCOMMAND FILE.ma ...``.

Exit codes: 0/1/2 for Accept/Reject/BudgetExhausted (``run``, ``trace``),
0 for success elsewhere, 64 usage error, 65 parse or data error,
70 internal error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import dot, power, specio
from .automata import Outcome
from .errors import EnumerationTooLarge, MimicError
from .executor import execute, parse_segments
from .hierarchy import GluePolicy, segments

EX_USAGE = 64
EX_DATAERR = 65
EX_SOFTWARE = 70

OUTCOME_CODES = {Outcome.ACCEPT: 0, Outcome.REJECT: 1, Outcome.BUDGET_EXHAUSTED: 2}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def _color() -> bool:
    flag = os.environ.get("MA_COLOR")
    if flag is None:
        return sys.stderr.isatty()
    return flag == "1"


def _load(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return specio.to_automaton(specio.parse(text, path))


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _segment_words(ma, text: str) -> tuple:
    words = parse_segments(text)
    if ma.glue is GluePolicy.WORD_HANDOFF:
        if len(words) > 1:
            raise UsageError("word handoff takes one unsegmented input word (no '|')")
        return words
    count = max(len(segments(ma)), 1)
    if len(words) != count:
        raise UsageError(f"expected {count} '|'-separated segment words, got {len(words)}")
    return words


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


# -- subcommands


def cmd_validate(args) -> int:
    ma = _load(args.file)
    print(f"ok: {ma.name}, {len(segments(ma))} segments")
    return 0


def _run(args):
    ma = _load(args.file)
    words = _segment_words(ma, args.input)
    return execute(ma, words, args.budget, args.seed)


def cmd_run(args) -> int:
    trace = _run(args)
    print(trace.outcome.value)
    if trace.reason:
        print(f"reason: {trace.reason}")
    if trace.outcome is Outcome.ACCEPT:
        print(f"output: {power.show_word(trace.final_payload)}")
    print(f"steps: {trace.steps}")
    return OUTCOME_CODES[trace.outcome]


def cmd_trace(args) -> int:
    trace = _run(args)
    _write(args.output, trace.serialize())
    return OUTCOME_CODES[trace.outcome]


def cmd_classify(args) -> int:
    print(power.classify(_load(args.file)).value)
    return 0


def cmd_flatten(args) -> int:
    ma = _load(args.file)
    flat = power.flatten_regular(ma, args.seed)
    _write(args.output, specio.serialize(specio.fsa_document(flat, f"{ma.name}_upper")))
    return 0


def cmd_sample(args) -> int:
    ma = _load(args.file)
    if args.alphabet:
        alphabet = args.alphabet.replace(",", " ").split()
    else:
        alphabet = [x for sa in ma.lower_automata() for x in sa.input_alphabet]
    sample = power.language_sample(ma, alphabet, args.max_len, args.budget, args.seed)
    sys.stdout.write(sample.report())
    return 0


def cmd_export_dot(args) -> int:
    graphs = dot.export(_load(args.file), args.seed)
    if args.output is None:
        sys.stdout.write("\n".join(graphs.values()))
        return 0
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    for name, text in graphs.items():
        (out / f"{name}.dot").write_text(text, encoding="utf-8")
        print(out / f"{name}.dot")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mimicauto", description="Validate, run and analyse mimic automata (.ma files).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", help="path to a .ma spec file")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "check a spec file")
    for name, func, help_text in (("run", cmd_run, "run on segmented input and print the outcome"),
                                  ("trace", cmd_trace, "write the event log of one run")):
        p = add(name, func, help_text)
        p.add_argument("--input", required=True, help="segment words separated by '|', symbols by spaces")
        p.add_argument("--budget", type=_positive, default=10_000)
        p.add_argument("--seed", type=int, default=None, help="overrides seeds of random schedules")
        if name == "trace":
            p.add_argument("-o", "--output")
    add("classify", cmd_classify, "print the computational-power class")
    p = add("flatten", cmd_flatten, "write the equivalent single FSA as a spec file")
    p.add_argument("-o", "--output")
    p.add_argument("--seed", type=int, default=None)
    p = add("sample", cmd_sample, "enumerate accepted words up to a length")
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--alphabet", help="symbols separated by spaces or commas (default: all lower alphabets)")
    p.add_argument("--budget", type=_positive, default=10_000)
    p.add_argument("--seed", type=int, default=None)
    p = add("export-dot", cmd_export_dot, "write one DOT digraph per component")
    p.add_argument("-o", "--output", help="directory for the .dot files (default: stdout)")
    p.add_argument("--seed", type=int, default=None)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except specio.SpecError as exc:
        color = _color()
        for d in exc.diagnostics:
            print(d.format(color), file=sys.stderr)
        return EX_DATAERR
    except (UsageError, EnumerationTooLarge) as exc:
        print(f"mimicauto: error: {exc}", file=sys.stderr)
        return EX_USAGE
    except MimicError as exc:
        print(f"mimicauto: error: {exc}", file=sys.stderr)
        return EX_DATAERR
    except Exception as exc:  # pragma: no cover - last resort
        print(f"mimicauto: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EX_SOFTWARE


if __name__ == "__main__":
    sys.exit(main())
