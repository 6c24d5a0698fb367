"""Command-line interface.

Subcommands: extract (replica -> BT.txt), highlight (color sentences in the
replica), eval (score extractions against gold files), sweep-debug (dump
the column-sweep histogram as CSV).

Exit codes: 0 success, 1 usage error, 2 input format error, 3 pipeline
error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import fields
from pathlib import Path

from . import evaluate, pipeline
from .errors import FormatError, PipelineError
from .highlight import inject_colors, locate_sentence
from .metrics import Thresholds

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FORMAT = 2
EXIT_PIPELINE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _threshold_args(parser: argparse.ArgumentParser):
    group = parser.add_argument_group("thresholds")
    group.add_argument("--config", metavar="PATH",
                       help="key=value threshold file")
    for f in fields(Thresholds):
        group.add_argument(f"--{f.name.replace('_', '-')}", type=float,
                           default=None, metavar="N",
                           help=f"override {f.name} (default {f.default})")


def _resolve_thresholds(args) -> Thresholds:
    base = Thresholds.from_file(args.config) if args.config else Thresholds()
    overrides = {f.name: getattr(args, f.name) for f in fields(Thresholds)}
    try:
        return base.replace(**overrides)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def _extract_options(args) -> pipeline.ExtractOptions:
    words = None
    if getattr(args, "dict", None):
        words = pipeline.load_hyphen_words(args.dict)
    return pipeline.ExtractOptions(
        strict=args.strict,
        split_parity=getattr(args, "split_parity", False),
        abstract_keywords=getattr(args, "abstract_keywords", True),
        refs_strategy=getattr(args, "refs", "keyword"),
        keep_captions=getattr(args, "keep_captions", False),
        hyphen_words=words,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bodytext",
                     description="Extract clean body text from the HTML "
                                 "replica of a PDF document.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_extract = sub.add_parser("extract", help="write the body text file")
    p_extract.add_argument("html", help="replica HTML file")
    p_extract.add_argument("--css", action="append", metavar="PATH",
                           help="style sheet file or directory (repeatable; "
                                "default: follow <link> references)")
    p_extract.add_argument("-o", "--output", default="BT.txt",
                           help="output path (default BT.txt)")
    p_extract.add_argument("--strict", action="store_true",
                           help="treat unknown style classes as errors")
    p_extract.add_argument("--split-parity", action="store_true",
                           help="detect columns separately for even and odd "
                                "pages")
    p_extract.add_argument("--abstract-keywords", action="store_true",
                           default=True, dest="abstract_keywords",
                           help="keep the Abstract...Introduction band "
                                "regardless of font size (default)")
    p_extract.add_argument("--no-abstract-keywords", action="store_false",
                           dest="abstract_keywords")
    p_extract.add_argument("--refs", choices=("keyword", "sweep"),
                           default="keyword",
                           help="references detection strategy")
    p_extract.add_argument("--keep-captions", action="store_true",
                           help="skip the part-of-speech caption gate")
    p_extract.add_argument("--dict", metavar="PATH",
                           help="hyphenation word list (one compound per "
                                "line); keeps listed hyphens at line ends")
    p_extract.add_argument("--dump-histogram", metavar="PATH",
                           help="write the sweep histogram as CSV")
    p_extract.add_argument("--dump-verdicts", metavar="PATH",
                           help="write the removal audit log as JSON lines")
    _threshold_args(p_extract)

    p_hl = sub.add_parser("highlight", help="color sentences in the replica")
    p_hl.add_argument("html")
    p_hl.add_argument("--css", action="append", metavar="PATH")
    p_hl.add_argument("-o", "--output", required=True)
    p_hl.add_argument("--sentence", action="append", required=True,
                      metavar="TEXT")
    p_hl.add_argument("--color", action="append", required=True,
                      metavar="#RRGGBB")
    p_hl.add_argument("--strict", action="store_true")
    _threshold_args(p_hl)

    p_eval = sub.add_parser("eval", help="score extractions against gold")
    p_eval.add_argument("files", nargs="+",
                        help="alternating extracted/gold path pairs; a "
                             "GOLD.removed sidecar lists table/figure block "
                             "texts that must be absent")
    p_eval.add_argument("--json", metavar="PATH",
                        help="also write a machine-readable report")

    p_sweep = sub.add_parser("sweep-debug",
                             help="dump the column-sweep histogram")
    p_sweep.add_argument("html")
    p_sweep.add_argument("--css", action="append", metavar="PATH")
    p_sweep.add_argument("-o", "--output", help="CSV path (default stdout)")
    p_sweep.add_argument("--strict", action="store_true")
    _threshold_args(p_sweep)
    return parser


def _cmd_extract(args) -> int:
    thresholds = _resolve_thresholds(args)
    options = _extract_options(args)
    result = pipeline.extract_paths(args.html, args.css, thresholds, options)
    Path(args.output).write_bytes(result.bt_bytes)
    if args.dump_histogram:
        Path(args.dump_histogram).write_text(result.histogram.to_csv(),
                                             encoding="utf-8")
    if args.dump_verdicts:
        Path(args.dump_verdicts).write_text(result.log.to_jsonl() + "\n",
                                            encoding="utf-8")
    return EXIT_OK


def _cmd_highlight(args) -> int:
    if len(args.sentence) != len(args.color):
        raise FormatError("each --sentence needs a matching --color")
    thresholds = _resolve_thresholds(args)
    options = pipeline.ExtractOptions(strict=args.strict)
    result = pipeline.extract_paths(args.html, args.css, thresholds, options)
    warnings: list[str] = []
    spans = [(locate_sentence(result.stream, sentence, warnings), color)
             for sentence, color in zip(args.sentence, args.color)]
    for warning in warnings:
        print(f"warning: {warning}", file=sys.stderr)
    Path(args.output).write_bytes(inject_colors(result.doc, spans))
    return EXIT_OK


def _cmd_eval(args) -> int:
    if len(args.files) % 2:
        raise FormatError("eval expects extracted/gold path pairs")
    reports = []
    for ext_path, gold_path in zip(args.files[::2], args.files[1::2]):
        extracted = Path(ext_path).read_bytes()
        gold = Path(gold_path).read_bytes()
        sidecar = Path(str(gold_path) + ".removed")
        removed = None
        if sidecar.exists():
            removed = [line for line in
                       sidecar.read_text(encoding="utf-8").splitlines()
                       if line.strip()]
        reports.append(evaluate.score(extracted, gold, removed,
                                      name=str(ext_path)))
    corpus = evaluate.aggregate(reports)
    print(evaluate.render_table(corpus))
    if args.json:
        Path(args.json).write_text(evaluate.to_json(corpus), encoding="utf-8")
    return EXIT_OK


def _cmd_sweep_debug(args) -> int:
    thresholds = _resolve_thresholds(args)
    options = pipeline.ExtractOptions(strict=args.strict)
    result = pipeline.extract_paths(args.html, args.css, thresholds, options)
    csv = result.histogram.to_csv()
    if args.output:
        Path(args.output).write_text(csv, encoding="utf-8")
    else:
        sys.stdout.write(csv)
    return EXIT_OK


_COMMANDS = {
    "extract": _cmd_extract,
    "highlight": _cmd_highlight,
    "eval": _cmd_eval,
    "sweep-debug": _cmd_sweep_debug,
}


def main(argv=None) -> int:
    logging.basicConfig(format="%(levelname)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except PipelineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PIPELINE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT


if __name__ == "__main__":
    sys.exit(main())
