"""Command line: ``intrec <command> [options]``.

Exit status is 0 when no check fails, 1 when one does (or, with
``--strict``, when one is unknown), and 2 for bad arguments or input files.
The default fuel ceiling comes from ``INTREC_FUEL`` when it is set.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from typing import Sequence

from . import __version__, kernel, suites
from .fixtures import parse_probe_spec
from .lindenbaum import ParseError as SexpError, parse_corpus
from .logic import HypothesisFailure
from .report import build_report, checks_from, dumps
from .surface import CompileError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
FUEL_ENV = "INTREC_FUEL"


class UsageError(Exception):
    pass


def _default_fuel() -> int:
    raw = os.environ.get(FUEL_ENV)
    if raw is None:
        return kernel.DEFAULT_FUEL
    if not raw.isdigit() or int(raw) == 0:
        raise UsageError("%s must be a positive integer, got %r" % (FUEL_ENV, raw))
    return int(raw)


def _inputs(text: str) -> list[int]:
    try:
        out = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("inputs are comma-separated naturals: %r" % text) from None
    if not out or min(out) < 0:
        raise argparse.ArgumentTypeError("inputs are comma-separated naturals: %r" % text)
    return out


def _positive(text: str) -> int:
    if not text.isdigit() or int(text) == 0:
        raise argparse.ArgumentTypeError("expected a positive integer, got %r" % text)
    return int(text)


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError("cannot read %s: %s" % (path, e.strerror)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fuel", type=_positive, help="step ceiling per run (default $%s or %d)"
                        % (FUEL_ENV, kernel.DEFAULT_FUEL))
    common.add_argument("--seed", type=int, default=0, help="seed for sampled probes")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--timings", action="store_true", help="add wall-clock timings to the report")
    common.add_argument("--strict", action="store_true", help="treat unknown verdicts as failures")

    p = argparse.ArgumentParser(prog="intrec", description="Exposures, intensional recursion and "
                                "diagonal arguments on a runnable PCA.")
    p.add_argument("--version", action="version", version="intrec " + __version__)
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    laws = sub.add_parser("laws", parents=[common], help="run a law suite")
    laws.add_argument("--suite", required=True, choices=suites.SUITES)
    laws.add_argument("--probes", default="finite:4", help="finite:N, fixtures of size <= N")
    laws.add_argument("--count", type=_positive, default=200, help="random probes per PCA law")

    q = sub.add_parser("quine", parents=[common], help="a program that returns its own code")
    q.add_argument("--inputs", type=_inputs, default=[0, 1, 2, 5, 10])

    s = sub.add_parser("srt", parents=[common], help="second recursion theorem for f e y")
    s.add_argument("--program", required=True, help="file with a program fun e y -> ...")
    s.add_argument("--inputs", type=_inputs, default=list(range(6)))

    f = sub.add_parser("frt", parents=[common], help="first recursion theorem for f self x")
    f.add_argument("--functional", required=True, help="file with a program fun self x -> ...")
    f.add_argument("--inputs", type=_inputs, default=list(range(7)))

    i = sub.add_parser("ifp", parents=[common], help="intensional fixed point of a transformer vs srt")
    i.add_argument("--transformer", required=True, help="file with a program fun self m -> ...")
    i.add_argument("--inputs", type=_inputs, default=list(range(6)))

    r = sub.add_parser("rice", parents=[common], help="refute a decider both ways")
    r.add_argument("--decider", required=True)
    r.add_argument("--pos", required=True)
    r.add_argument("--neg", required=True)
    r.add_argument("--inputs", type=_inputs, default=list(range(6)))

    sub.add_parser("godel", parents=[common], help="the Godel sentence of assemblies")
    sub.add_parser("tarski", parents=[common], help="an extensional fixed point of negation")

    e = sub.add_parser("encode", parents=[common], help="program text to code, or code to term")
    e.add_argument("item", help="program text, or a natural number to decode")

    lc = sub.add_parser("lindenbaum-check", parents=[common], help="Lindenbaum laws on a corpus")
    lc.add_argument("--corpus", required=True, help="s-expressions, one per line")
    return p


def _config(args: argparse.Namespace) -> dict:
    skip = {"format", "timings", "strict"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _dispatch(args: argparse.Namespace) -> tuple[suites.Outcome, list[str]]:
    """Run the command; also returns text lines for human output."""
    cmd = args.command
    if cmd == "laws":
        try:
            size = parse_probe_spec(args.probes)
        except ValueError as e:
            raise UsageError(str(e)) from None
        return suites.run_suite(args.suite, size, args.seed, args.count), []
    if cmd == "quine":
        out = suites.quine(args.inputs)
        lines = ["e = %s" % _code_line(out.data["code"]), "term: %s" % out.data["code"]["term"]]
        lines += ["phi_e(%d) = %s" % (y, v) for y, v in out.data["table"]]
        return out, lines
    if cmd == "srt":
        out = suites.srt_run(_read(args.program), args.inputs)
        return out, ["e = %s" % _code_line(out.data["code"])] + [
            "phi_e(%d) = %s" % (y, v) for y, v in out.data["table"]]
    if cmd == "frt":
        out = suites.frt_run(_read(args.functional), args.inputs)
        return out, ["e = %s" % _code_line(out.data["code"])] + [
            "phi_e(%d) = %s" % (y, v) for y, v in out.data["values"]]
    if cmd == "ifp":
        out = suites.ifp_vs_srt(_read(args.transformer), args.inputs)
        return out, ["y(%d) = %s" % (n, v) for n, v in out.data["values"]]
    if cmd == "rice":
        out = suites.rice(_read(args.decider), _read(args.pos), _read(args.neg), args.inputs)
        lines = []
        for path in ("efp", "srt"):
            d = out.data[path]
            lines.append("[%s] %s: decider says %s, yet the code behaves like %s on %s" % (
                path, d["status"], d["decider_verdict"], d["behaves_like"],
                ", ".join("%s->%s" % (n, v) for n, v in d["evidence"])))
            if d["code"]:
                lines.append("[%s] counterexample %s" % (path, _code_line(d["code"])))
        return out, lines
    if cmd == "godel":
        out = suites.godel()
        d = out.data
        lines = ["classification: %s" % d["classification"],
                 "realizer halted: %s (fuel %d)" % (d["halted"], d["fuel"])] + d["chain"]
        return out, lines
    if cmd == "tarski":
        out = suites.tarski()
        return out, ["fixed point of not: %s (fuel %d)" % (out.data["point"], out.data["fuel"])]
    if cmd == "encode":
        item = args.item.strip()
        data = suites.encode_number(int(item)) if item.isdigit() else suites.encode_text(item)
        if data.get("junk"):
            lines = ["%s is not the code of a term" % data["number"]]
        elif "number" in data:
            lines = ["term: %s" % data["term"], "round trip: %s" % data["round_trip_equal"]]
        else:
            lines = ["code: %s" % _code_line(data["code"]), "term: %s" % data["round_trip"],
                     "round trip: %s" % data["round_trip_equal"]]
        return suites.Outcome([], data), lines
    if cmd == "lindenbaum-check":
        corpus = parse_corpus(_read(args.corpus))
        out = suites.lindenbaum_check(corpus)
        lines = ["%d items; %d corpus points of A name no predicate" % (
            out.data["items"], len(out.data["not_predicate_numbers"]))]
        return out, lines
    raise UsageError("unknown command %r" % cmd)


def _code_line(c: dict) -> str:
    if c.get("junk"):
        return "junk %s" % c["value"]
    size = c["value"] if "value" in c else "2^%s" % c["log2_value"]
    return "%s (nodes %d, depth %d, sha256 %s)" % (size, c["nodes"], c["depth"], c["sha256"][:16])


def _render_text(report: dict, lines: Sequence[str]) -> str:
    out = ["intrec %s: %s" % (report["command"], report["verdict"].upper())]
    for c in report["checks"]:
        extra = " (%d unknown)" % c["unknown"] if c["unknown"] else ""
        out.append("  %-7s %-40s %d checked%s  [%s]" % (
            c["verdict"].upper(), c["name"], c["checked"], extra, c["anchor"]))
        if c["verdict"] == "fail":
            for w in c["witnesses"]:
                out.append("          witness: %s" % w)
    out.extend(lines)
    return "\n".join(out)


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        fuel = args.fuel or _default_fuel()
        args.fuel = fuel
        started = time.perf_counter()
        with kernel.fuel(fuel):
            outcome, lines = _dispatch(args)
        elapsed = time.perf_counter() - started
    except (UsageError, CompileError, SexpError, ValueError) as e:
        print("intrec: error: %s" % e, file=stderr)
        return EXIT_USAGE
    except HypothesisFailure as e:
        print("intrec: the inputs do not meet the construction's hypotheses: %s" % e, file=stderr)
        return EXIT_USAGE
    timings = {"seconds": round(elapsed, 3)} if args.timings else None
    report = build_report(args.command, _config(args), checks_from(*outcome.reports), outcome.data, timings)
    if args.command == "encode" and not outcome.reports:
        report["verdict"] = "pass"
    if args.format == "json":
        print(dumps(report), file=stdout)
    else:
        print(_render_text(report, lines), file=stdout)
    if report["verdict"] == "fail" or (args.strict and report["verdict"] == "unknown"):
        return EXIT_FAIL
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
