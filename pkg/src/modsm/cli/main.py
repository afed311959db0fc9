"""
Command Line
------------
Single ``modsm`` command with one subcommand per tool:

    split        decompose a module into a stream (or directory) of modules
    cat          join a stream of modules back into one module
    solve        enumerate stable models
    eq           weak, visible or modular equivalence of two modules
    check        validate a module, or diagnose the composition of two
    eva          test the enough-visible-atoms property
    completion   completion and loop formulas as text
    graph        dependency graph in DOT
    translate    normal-program translation
    bench        decomposition benchmark report

Exit codes: 0 success (or "yes"), 1 a negative answer, 2 an error.
``-`` reads stdin or writes stdout.

Usage:
    modsm solve program.lp
    modsm split --mode pos-hidden program.lp | modsm cat -
    python -m modsm.cli eq --kind modular p.lp q.lp
"""

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from modsm.algebra.compose import compose
from modsm.algebra.join import check_semantical_join, join
from modsm.completion.clark import completion_text
from modsm.config import setup_logging
from modsm.core.atoms import format_atoms
from modsm.core.module import Module, validate_module
from modsm.decompose.modlist import DecompositionMode, decompose, recompose
from modsm.decompose.report import benchmark, export_report
from modsm.equivalence.checks import (
    EquivalenceKind,
    ModularMethod,
    eva,
    modular_eq,
    visible_eq,
    weak_eq,
)
from modsm.errors import CompositionUndefined, ModsmError
from modsm.formats.smodels import decode_smodels, encode_smodels
from modsm.formats.stream import (
    Format,
    read_directory,
    stream_modules,
    write_directory,
    write_stream,
)
from modsm.formats.text import parse_text, print_text
from modsm.graphs.dependency import DependencyMode, dep_graph, to_dot
from modsm.semantics.stable import Strategy, iter_stable_models
from modsm.synthetic import (
    hamiltonian_module,
    hamiltonian_reachability_module,
    layered_program,
    reachability_module,
)
from modsm.translate.nlp import tr_nlp

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NO = 1
EXIT_ERROR = 2


# ── Input / output ───────────────────────────────────────────────────────────


def _read_bytes(source: str) -> bytes:
    if source == "-":
        return sys.stdin.buffer.read()
    return Path(source).read_bytes()


def _read_module(source: str, fmt: Format, validate: bool = True) -> Module:
    data = _read_bytes(source)
    if fmt is Format.SMODELS:
        return decode_smodels(data)
    return parse_text(data, validate=validate)


def _encode(m: Module, fmt: Format) -> bytes:
    return encode_smodels(m) if fmt is Format.SMODELS else print_text(m)


def _emit(args: argparse.Namespace, data: bytes | str) -> None:
    if isinstance(data, str):
        data = data.encode("utf-8")
    if args.output == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        Path(args.output).write_bytes(data)
        logger.info(f"Wrote {len(data)} bytes to {args.output}")


def _answer(args: argparse.Namespace, label: str, value: bool) -> int:
    _emit(args, f"{label}: {'yes' if value else 'no'}\n")
    return EXIT_OK if value else EXIT_NO


# ── Subcommands ──────────────────────────────────────────────────────────────


def cmd_split(args: argparse.Namespace) -> int:
    m = _read_module(args.input, args.format)
    parts = decompose(m, args.mode)
    if args.dir:
        write_directory(parts.modules, Path(args.dir), args.format)
    else:
        _emit(args, write_stream(parts.modules, args.format))
    return EXIT_OK


def cmd_cat(args: argparse.Namespace) -> int:
    modules: list[Module] = []
    for source in args.inputs:
        path = Path(source)
        if source != "-" and path.is_dir():
            modules.extend(read_directory(path, args.format))
        else:
            modules.extend(stream_modules(_read_bytes(source), args.format))
    joined = recompose(modules)
    logger.info(f"Joined {len(modules)} modules into {len(joined.rules)} rules")
    _emit(args, _encode(joined, args.format))
    if args.check_rules is not None and len(joined.rules) != args.check_rules:
        print(
            f"rule count mismatch: expected {args.check_rules}, got {len(joined.rules)}",
            file=sys.stderr,
        )
        return EXIT_NO
    return EXIT_OK


def cmd_solve(args: argparse.Namespace) -> int:
    m = _read_module(args.input, args.format)
    lines = []
    for model in iter_stable_models(m, args.strategy, args.cap, args.workers):
        if args.max_models is not None and len(lines) >= args.max_models:
            break
        lines.append(format_atoms(model))
    logger.info(f"Found {len(lines)} stable models")
    _emit(args, "".join(f"{line}\n" for line in lines))
    return EXIT_OK


def cmd_eq(args: argparse.Namespace) -> int:
    p = _read_module(args.left, args.format)
    q = _read_module(args.right, args.format)
    match EquivalenceKind(args.kind):
        case EquivalenceKind.WEAK:
            result = weak_eq(p, q, args.cap)
        case EquivalenceKind.VISIBLE:
            result = visible_eq(p, q, args.cap)
        case EquivalenceKind.MODULAR:
            result = modular_eq(p, q, args.method, args.cap)
    return _answer(args, f"{args.kind} equivalent", result)


def _check_pair(args: argparse.Namespace, p: Module, q: Module) -> int:
    lines = []
    try:
        compose(p, q)
        lines.append("composition: defined")
    except CompositionUndefined as e:
        lines.append(f"composition: {e}")
        _emit(args, "\n".join(lines) + "\n")
        return EXIT_NO

    try:
        join(p, q)
        lines.append("join: defined")
        joined = True
    except CompositionUndefined as e:
        lines.append(f"join: {e}")
        joined = False

    report = check_semantical_join(p, q, args.cap)
    lines.append(f"semantical join: {'defined' if report.defined else 'undefined'}")
    lines.extend(f"  {witness}" for witness in report.witnesses)
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if joined else EXIT_NO


def cmd_check(args: argparse.Namespace) -> int:
    if args.pair:
        if len(args.inputs) != 2:
            raise ModsmError("--pair needs exactly two modules")
        p, q = (_read_module(source, args.format) for source in args.inputs)
        return _check_pair(args, p, q)

    status = EXIT_OK
    lines = []
    for source in args.inputs:
        m = _read_module(source, args.format, validate=False)
        violations = validate_module(m)
        lines.append(f"{source}: {'valid' if not violations else 'invalid'}")
        lines.extend(f"  {v}" for v in violations)
        if violations:
            status = EXIT_NO
    _emit(args, "\n".join(lines) + "\n")
    return status


def cmd_eva(args: argparse.Namespace) -> int:
    m = _read_module(args.input, args.format)
    return _answer(args, "eva", eva(m, args.strict, args.cap))


def cmd_completion(args: argparse.Namespace) -> int:
    m = _read_module(args.input, args.format)
    _emit(args, completion_text(m, args.cap))
    return EXIT_OK


def cmd_graph(args: argparse.Namespace) -> int:
    m = _read_module(args.input, args.format)
    mode = DependencyMode.POSITIVE_NEGATIVE if args.negative else DependencyMode.POSITIVE
    _emit(args, to_dot(dep_graph(m, mode)))
    return EXIT_OK


def cmd_translate(args: argparse.Namespace) -> int:
    m = _read_module(args.input, args.format)
    _emit(args, _encode(tr_nlp(m, args.minimal), args.format))
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    instances: dict[str, Module] = {}
    for n in args.sizes:
        instances[f"hr{n}"] = hamiltonian_reachability_module(n)
        h = hamiltonian_module(n)
        instances[f"h{n}+r{n}"] = join(h, reachability_module(n, h.symbols))
    if args.layered:
        rng = np.random.default_rng(args.seed)
        instances[f"layered{args.layered}"] = layered_program(rng, args.layered)

    summary, sizes = benchmark(instances, args.modes)
    _emit(args, summary.to_string(index=False) + "\n\n" + sizes.to_string() + "\n")
    if args.report:
        export_report(summary, args.report)
    return EXIT_OK


# ── Parser ───────────────────────────────────────────────────────────────────


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", type=Format, choices=list(Format), default=Format.TEXT)
    common.add_argument("--cap", type=int, default=None, help="Enumeration cap (MODSM_CAP)")
    common.add_argument("--log-level", default=None, help="Log level (MODSM_LOG_LEVEL)")
    common.add_argument("-o", "--output", default="-", help="Output file, - for stdout")

    parser = argparse.ArgumentParser(prog="modsm", description="Toolkit for smodels modules")
    sub = parser.add_subparsers(dest="command", required=True)

    split = sub.add_parser("split", parents=[common], help="Decompose a module")
    split.add_argument("input")
    split.add_argument(
        "--mode",
        type=DecompositionMode,
        choices=list(DecompositionMode),
        default=DecompositionMode.POS_HIDDEN,
    )
    split.add_argument("--dir", default=None, help="Write mod-<i>.lp files here instead")
    split.set_defaults(handler=cmd_split)

    cat = sub.add_parser("cat", parents=[common], help="Join a stream of modules")
    cat.add_argument("inputs", nargs="+")
    cat.add_argument("--check-rules", type=int, default=None, metavar="N")
    cat.set_defaults(handler=cmd_cat)

    solve = sub.add_parser("solve", parents=[common], help="Enumerate stable models")
    solve.add_argument("input")
    solve.add_argument("--max-models", type=int, default=None, metavar="K")
    solve.add_argument(
        "--strategy", type=Strategy, choices=list(Strategy), default=Strategy.BRUTE
    )
    solve.add_argument("--workers", type=int, default=None, help="Threads (MODSM_WORKERS)")
    solve.set_defaults(handler=cmd_solve)

    eq = sub.add_parser("eq", parents=[common], help="Compare two modules")
    eq.add_argument("left")
    eq.add_argument("right")
    eq.add_argument(
        "--kind", choices=list(EquivalenceKind), default=EquivalenceKind.MODULAR.value
    )
    eq.add_argument("--method", choices=list(ModularMethod), default=ModularMethod.DIRECT.value)
    eq.set_defaults(handler=cmd_eq)

    check = sub.add_parser("check", parents=[common], help="Validate modules")
    check.add_argument("inputs", nargs="+")
    check.add_argument("--pair", action="store_true", help="Diagnose composing two modules")
    check.set_defaults(handler=cmd_check)

    eva_cmd = sub.add_parser("eva", parents=[common], help="Enough visible atoms")
    eva_cmd.add_argument("input")
    eva_cmd.add_argument("--strict", action="store_true")
    eva_cmd.set_defaults(handler=cmd_eva)

    comp = sub.add_parser("completion", parents=[common], help="Completion and loop formulas")
    comp.add_argument("input")
    comp.set_defaults(handler=cmd_completion)

    graph = sub.add_parser("graph", parents=[common], help="Dependency graph as DOT")
    graph.add_argument("input")
    graph.add_argument("--negative", action="store_true", help="Include negative edges")
    graph.set_defaults(handler=cmd_graph)

    translate = sub.add_parser("translate", parents=[common], help="Translate to normal rules")
    translate.add_argument("input")
    translate.add_argument("--minimal", action="store_true")
    translate.set_defaults(handler=cmd_translate)

    bench = sub.add_parser("bench", parents=[common], help="Decomposition benchmark")
    bench.add_argument("--sizes", type=int, nargs="*", default=[3, 4])
    bench.add_argument("--layered", type=int, default=0, metavar="RULES")
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument(
        "--modes", type=DecompositionMode, nargs="+", default=list(DecompositionMode)
    )
    bench.add_argument("--report", default=None, help="Export summary (.parquet or .csv)")
    bench.set_defaults(handler=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        setup_logging(args.log_level)
        return args.handler(args)
    except (ModsmError, OSError) as e:
        print(f"modsm {args.command}: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
