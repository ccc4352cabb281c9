"""Command-line entry point: ``toricjets <command> ...``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Sequence, TextIO

from . import corpus, polyfile
from .errors import InvalidParams, ParseError, ToricJetsError, ValidationError
from .report import analyze, render
from .seshadri import DEFAULT_S1_BOUND, DEFAULT_WIDTH_BOUND

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2, which is reserved for theorem violations
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _common(sub: argparse.ArgumentParser, orders: bool = True) -> None:
    if orders:
        sub.add_argument("-k", dest="orders", type=_positive, action="append", help="order k (repeatable)")
        sub.add_argument("--max-k", type=_positive, help="cap for the generic jet order scan")
    sub.add_argument("--width-bound", type=_positive, default=DEFAULT_WIDTH_BOUND)
    sub.add_argument("--s1-bound", type=_positive, default=DEFAULT_S1_BOUND)
    sub.add_argument("--format", choices=("text", "records"), default="text")
    sub.add_argument("--strict-mode", choices=("equal-dim", "project"), default="equal-dim")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="toricjets", description="Jets, Cayley structure and Seshadri data of smooth lattice polytopes.")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized generators (default 0)")
    subs = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, text in (
        ("analyze", "full report: jets, Cayley structure, Seshadri data"),
        ("cayley", "Cayley decompositions of the given orders"),
        ("seshadri", "lattice width, s1 bound and Seshadri constants"),
        ("verify", "evaluate the five equivalent conditions for each order"),
    ):
        sub = subs.add_parser(name, help=text)
        sub.add_argument("path", help="polytope file")
        _common(sub)
        if name == "cayley":
            sub.add_argument("--length", type=_positive, default=2, help="number of slices (default 2)")

    gen = subs.add_parser("gen", help="write a generated polytope, or the whole built-in corpus")
    gen.add_argument("generator", nargs="?", help=f"one of {', '.join(sorted(corpus.GENERATORS))}")
    gen.add_argument("--param", action="append", default=[], metavar="KEY=JSON", help="generator parameter")
    gen.add_argument("-o", "--output", help="output file (default stdout)")
    gen.add_argument("--corpus", metavar="DIR", help="write every built-in corpus member into DIR")
    gen.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="same as the global --seed")

    batch = subs.add_parser("batch", help="verify every *.poly file in a directory")
    batch.add_argument("directory")
    batch.add_argument("--jobs", type=_positive, default=None, help="worker processes (default: CPU count)")
    _common(batch)
    return parser


def _load(path: str):
    try:
        return polyfile.parse(Path(path))
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _report(p, source: str, args, command: str):
    kw = dict(
        source=source,
        orders=args.orders,
        max_k=args.max_k,
        width_bound=args.width_bound,
        s1_bound=args.s1_bound,
        strict_mode=args.strict_mode,
    )
    if command == "analyze":
        return analyze(p, **kw)
    if command == "cayley":
        return analyze(p, jets=False, seshadri=False, length=args.length, **kw)
    if command == "seshadri":
        return analyze(p, cayley=False, **kw)
    return analyze(p, cayley=False, seshadri=False, verify=True, **kw)


def _batch_one(job) -> tuple[str, int]:
    path, args = job
    try:
        p = polyfile.parse(Path(path))
    except (ToricJetsError, OSError) as exc:
        return f"# {path}: skipped ({exc})", EXIT_USAGE
    rep = _report(p, str(path), args, "verify")
    if not rep.smooth:
        rep.notes[:] = ["not smooth: skipped"]
    return render(rep, args.format), EXIT_VIOLATION if rep.violation else EXIT_OK


def _cmd_batch(args, out: TextIO) -> int:
    directory = Path(args.directory)
    if not directory.is_dir():
        raise UsageError(f"not a directory: {directory}")
    files = sorted(directory.glob("*.poly"))
    if not files:
        raise UsageError(f"no .poly files in {directory}")
    jobs = [(str(f), args) for f in files]
    workers = args.jobs or min(len(files), os.cpu_count() or 1)
    if workers == 1:
        results = list(map(_batch_one, jobs))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_batch_one, jobs))
    code = EXIT_OK
    for text, status in results:
        print(text, file=out)
        code = max(code, status)
    return code


def _parse_params(items: Sequence[str]) -> dict:
    params = {}
    for item in items:
        key, sep, raw = item.partition("=")
        if not sep or not key:
            raise UsageError(f"--param expects KEY=VALUE, got {item!r}")
        try:
            params[key] = json.loads(raw)
        except json.JSONDecodeError:
            raise UsageError(f"--param {key}: value is not valid JSON: {raw!r}") from None
    return params


def _cmd_gen(args, out: TextIO) -> int:
    if args.corpus:
        target = Path(args.corpus)
        target.mkdir(parents=True, exist_ok=True)
        for i, (spec, p) in enumerate(corpus.builtin_corpus()):
            polyfile.write(p, target / f"{i:03d}-{spec.name}.poly", comment=spec.label())
        return EXIT_OK
    if not args.generator:
        raise UsageError("gen needs a generator name or --corpus DIR")
    spec = corpus.CorpusSpec(args.generator, _parse_params(args.param), args.seed)
    p = corpus.generate(spec)
    text = polyfile.emit(p, comment=spec.label())
    if args.output:
        Path(args.output).write_text(text, encoding="ascii")
    else:
        out.write(text)
    return EXIT_OK


def main(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "gen":
            return _cmd_gen(args, out)
        if args.command == "batch":
            return _cmd_batch(args, out)
        p = _load(args.path)
        rep = _report(p, args.path, args, args.command)
        print(render(rep, args.format), file=out)
        return EXIT_VIOLATION if rep.violation else EXIT_OK
    except UsageError as exc:
        print(exc, file=err)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=err)
        return EXIT_USAGE
    except (ValidationError, InvalidParams) as exc:
        print(f"invalid input: {exc}", file=err)
        return EXIT_USAGE
    except ToricJetsError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE


run_command = main
