"""
Self-Similar Forge CLI entrypoint.

Loads triple documents or Katsura matrix pairs, runs the requested decision
procedure and prints the result as text or as machine-readable JSON.

Usage:
    python -m src.orchestration.runner analyze examples/swap.json
    python -m src.orchestration.runner katsura --A examples/matrices/k15_A.txt --B examples/matrices/k15_B.txt --ktheory

Exit status:
    0 success / YES, 1 NO (predicate subcommands), 2 input error,
    3 UNKNOWN, 4 internal error, 130 interrupted
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from ..models.errors import NotEventuallyPeriodicWithinBound
from ..models.report_models import Decision, MinFixedKind, RelationReport, Report
from ..utils.settings import Settings, load_settings


EXIT_OK = 0
EXIT_NO = 1
EXIT_INPUT = 2
EXIT_UNKNOWN = 3
EXIT_INTERNAL = 4
EXIT_INTERRUPTED = 130

PACKAGE_LOGGER = __package__.split(".")[0]

logger = logging.getLogger(f"{__package__}.runner")


def build_parser() -> argparse.ArgumentParser:
    """
    Build the argument parser with one subparser per subcommand.

    Returns:
        Configured ArgumentParser
    """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bound", type=int, default=None, help="State budget for bounded searches")
    common.add_argument("--format", choices=["text", "machine"], default=None, help="Output format")
    common.add_argument(
        "--log-level",
        type=str,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        default=None,
        help="Logging level",
    )
    common.add_argument("--verbose", action="store_true", help="Enable debug logging for the package")

    parser = argparse.ArgumentParser(
        prog="selfsim-forge",
        description="Self-Similar Forge - decide structural properties of self-similar graph actions",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
    python -m src.orchestration.runner validate examples/swap.json
    python -m src.orchestration.runner analyze examples/swap.json --format machine
    python -m src.orchestration.runner katsura --A examples/matrices/k15_A.txt --B examples/matrices/k15_B.txt --ktheory
    python -m src.orchestration.runner katsura --dir examples/matrices/
    python -m src.orchestration.runner semigroup mul examples/swap.json "(a; s; a)" "(a; 1; a a)"
    python -m src.orchestration.runner germ lag examples/od.json "[e:1:1:1, 0, 1; e:1:1:1|e:1:1:0]"
        """,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="Check a triple document")
    p.add_argument("file")

    p = sub.add_parser("analyze", parents=[common], help="Full structural report")
    p.add_argument("file")

    p = sub.add_parser("katsura", parents=[common], help="Report for a Katsura matrix pair")
    p.add_argument("--A", dest="a_file", help="File with the matrix A")
    p.add_argument("--B", dest="b_file", help="File with the matrix B")
    p.add_argument("--dir", "--batch", dest="directory", help="Directory of NAME_A.txt / NAME_B.txt pairs")
    p.add_argument("--ktheory", action="store_true", help="Print only the K-groups")

    p = sub.add_parser("fixed-paths", parents=[common], help="Minimal strongly fixed paths of g")
    p.add_argument("file")
    p.add_argument("--g", required=True, help="Group element")

    p = sub.add_parser("slack", parents=[common], help="Whether g is slack at a vertex")
    p.add_argument("file")
    p.add_argument("--g", required=True, help="Group element")
    p.add_argument("--x", required=True, help="Vertex")

    p = sub.add_parser("topfree", parents=[common], help="Topological freeness of the path-space action")
    p.add_argument("file")

    p = sub.add_parser("semigroup", parents=[common], help="Inverse semigroup arithmetic")
    p.add_argument("op", choices=["mul", "star", "leq", "cover", "fixed"])
    p.add_argument("file")
    p.add_argument("literals", nargs="+", help="Elements written as '(alpha; g; beta)' or '0'")

    p = sub.add_parser("germ", parents=[common], help="Germ arithmetic (pseudo free triples)")
    p.add_argument("op", choices=["eq", "lag", "member", "compose", "invert", "normalize", "fmap"])
    p.add_argument("file")
    p.add_argument("literals", nargs="+", help="Germs written as '[alpha, g, beta; prefix|cycle]'")
    p.add_argument("--side", choices=["beta", "alpha"], default="beta", help="Side fixed by normalize")

    p = sub.add_parser("correspondence", parents=[common], help="Correspondence model checks")
    p.add_argument("op", choices=["verify"])
    p.add_argument("file")

    p = sub.add_parser("orbits", parents=[common], help="Vertex and edge orbits")
    p.add_argument("file")
    return parser


def setup_logging(log_level: str, verbose: bool) -> logging.Logger:
    """
    Configure logging for the CLI.

    Args:
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR)
        verbose: Whether to enable debug output for the package

    Returns:
        The CLI logger, a child of the package logger
    """
    logging.basicConfig(
        level=getattr(logging, log_level),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    if verbose:
        logging.getLogger(PACKAGE_LOGGER).setLevel(logging.DEBUG)

    return logger


def exit_for(decision: Decision) -> int:
    if decision.is_yes:
        return EXIT_OK
    if decision.is_no:
        return EXIT_NO
    return EXIT_UNKNOWN


def exit_for_report(report: Report) -> int:
    """A report exits 0 once every verdict is decided, 3 otherwise."""
    undecided = report.undecided()
    if undecided:
        logger.info(f"{report.name}: undecided {', '.join(undecided)}")
        return EXIT_UNKNOWN
    return EXIT_OK


def emit(settings: Settings, data: Dict[str, Any], text: str) -> None:
    if settings.report_format == "machine":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


def decision_line(label: str, decision: Decision) -> str:
    line = f"{label}: {decision}"
    if decision.reason:
        line += f" - {decision.reason}"
    if decision.witness:
        line += f" [witness {decision.witness}]"
    return line


def format_report(report: Report) -> str:
    """Plain-text rendering of a Report."""
    yes_no = {True: "YES", False: "NO"}
    lines = [
        "=" * 60,
        f"REPORT: {report.name} ({report.group_kind})",
        "=" * 60,
        decision_line("pseudo free", report.pseudo_free),
        decision_line("Hausdorff", report.hausdorff),
        f"minimal (weakly G-transitive): {yes_no[report.weakly_g_transitive]}",
        f"G-transitive: {yes_no[report.g_transitive]}",
        f"condition (L) / locally contracting: {yes_no[report.condition_l]}",
        decision_line("topologically free", report.topologically_free),
        decision_line("essentially principal", report.essentially_principal),
        decision_line("simple", report.simple),
        decision_line("purely infinite simple", report.purely_infinite_simple),
    ]
    if report.group_fixed_cylinders:
        lines.append(f"cylinders fixed by the whole group: {', '.join(report.group_fixed_cylinders)}")
    lines.append("vertex classes: " + " > ".join("{" + ", ".join(c) + "}" for c in report.vertex_classes))
    if report.sinks:
        lines.append(f"sinks: {', '.join(report.sinks)}")
    lines.append(f"note: {report.nuclear_note}")
    if report.ideal_note:
        lines.append(f"note: {report.ideal_note}")
    if report.katsura is not None:
        note = report.katsura
        lines.append(f"K0 = {note.k0}, K1 = {note.k1}")
        lines.append(f"classical sufficient condition: {yes_no[note.classical_condition]}")
        lines.append(f"contraction criterion for essential principality: {yes_no[note.sufficient_ep]}")
        if note.disagreements:
            lines.append(f"matrix criteria disagree on: {', '.join(note.disagreements)}")
    return "\n".join(lines)


def format_relations(report: RelationReport) -> str:
    lines = []
    for check in report.checks:
        status = "PASS" if check.passed else "FAIL"
        detail = f" at {check.witness}" if check.witness else ""
        lines.append(f"{status} {check.name} ({check.instances} instances){detail}")
    lines.append(report.summary)
    return "\n".join(lines)


# Subcommands

def cmd_validate(args: argparse.Namespace, settings: Settings) -> int:
    from .document_loader import load_document

    triple = load_document(args.file)
    graph = triple.graph
    data = {
        "name": triple.name,
        "group_kind": triple.group.kind.value,
        "vertices": len(graph.vertices),
        "edges": len(graph.edges),
        "valid": True,
    }
    emit(settings, data, f"valid: {triple.name} ({triple.group.kind.value}, "
                         f"{len(graph.vertices)} vertices, {len(graph.edges)} edges)")
    return EXIT_OK


def cmd_analyze(args: argparse.Namespace, settings: Settings) -> int:
    from .document_loader import load_document
    from .pipeline import AnalysisOptions, analyze, analyze_katsura

    triple = load_document(args.file)
    options = AnalysisOptions(settings.bound, settings.max_cycle_enumeration)
    katsura = getattr(triple, "katsura", None)
    if katsura is not None:
        _, report = analyze_katsura(katsura, triple.name, options)
    else:
        report = analyze(triple, options)
    emit(settings, report.to_dict(), format_report(report))
    return exit_for_report(report)


def cmd_katsura(args: argparse.Namespace, settings: Settings) -> int:
    from .pipeline import AnalysisOptions, analyze_katsura_directory, analyze_katsura_files

    options = AnalysisOptions(settings.bound, settings.max_cycle_enumeration)
    if args.directory:
        results = analyze_katsura_directory(Path(args.directory), options)
    elif args.a_file and args.b_file:
        _, report = analyze_katsura_files(Path(args.a_file), Path(args.b_file), options=options)
        results = [(report.name, report)]
    else:
        raise ValueError("katsura needs --A and --B, or --dir")

    if args.ktheory:
        data = {name: {"K0": r.katsura.k0.to_dict(), "K1": r.katsura.k1.to_dict()} for name, r in results}
        text = "\n".join(f"{name}: K0 = {r.katsura.k0}, K1 = {r.katsura.k1}" for name, r in results)
    else:
        data = {name: r.to_dict() for name, r in results}
        text = "\n\n".join(format_report(r) for _, r in results)
    if len(results) == 1 and not args.directory:
        data = next(iter(data.values()))
    emit(settings, data, text)
    if args.ktheory:
        return EXIT_OK
    return max((exit_for_report(r) for _, r in results), default=EXIT_OK)


def cmd_fixed_paths(args: argparse.Namespace, settings: Settings) -> int:
    from .document_loader import load_document
    from ..tools.fixed_path_tool import minimal_strongly_fixed_paths
    from ..tools.literal_parser_tool import parse_group_element

    triple = load_document(args.file)
    g = parse_group_element(triple, args.g)
    found = minimal_strongly_fixed_paths(triple, g, settings.bound)
    data: Dict[str, Any] = {"g": str(g), "kind": found.kind.value, "paths": [str(p) for p in found.paths]}
    lines = [f"M_{g}: {found.kind.value}"] + [f"  {p}" for p in found.paths]
    if found.witness is not None:
        data["witness"] = str(found.witness)
        lines.append(f"pumping witness: {found.witness}")
    if found.kind == MinFixedKind.UNKNOWN:
        data["bound"] = found.bound
        lines.append(f"search bound {found.bound} reached")
    emit(settings, data, "\n".join(lines))
    return EXIT_UNKNOWN if found.kind == MinFixedKind.UNKNOWN else EXIT_OK


def cmd_slack(args: argparse.Namespace, settings: Settings) -> int:
    from .document_loader import load_document
    from ..tools.freeness_tool import is_slack
    from ..tools.literal_parser_tool import parse_group_element

    triple = load_document(args.file)
    if not triple.graph.is_vertex(args.x):
        raise ValueError(f"'{args.x}' is not a vertex")
    g = parse_group_element(triple, args.g)
    decision, n = is_slack(triple, g, args.x, settings.bound)
    data = decision.to_dict()
    if n is not None:
        data["length"] = n
    suffix = f" (from length {n})" if n is not None else ""
    emit(settings, data, decision_line(f"{g} slack at {args.x}", decision) + suffix)
    return exit_for(decision)


def cmd_topfree(args: argparse.Namespace, settings: Settings) -> int:
    from .document_loader import load_document
    from ..tools.freeness_tool import is_topologically_free

    triple = load_document(args.file)
    decision = is_topologically_free(triple, settings.bound, settings.max_cycle_enumeration)
    emit(settings, decision.to_dict(), decision_line("topologically free", decision))
    return exit_for(decision)


def _arity(op: str, literals: List[str], count: int) -> None:
    if len(literals) != count:
        raise ValueError(f"{op} takes {count} literal(s), got {len(literals)}")


def cmd_semigroup(args: argparse.Namespace, settings: Settings) -> int:
    from .document_loader import load_document
    from ..tools import semigroup_tool
    from ..tools.freeness_tool import fixed_points_of
    from ..tools.literal_parser_tool import parse_element

    triple = load_document(args.file)
    elements = [parse_element(triple, text) for text in args.literals]
    op = args.op
    if op == "mul":
        _arity(op, elements, 2)
        result = semigroup_tool.mul(triple, elements[0], elements[1])
        emit(settings, {"result": str(result)}, str(result))
        return EXIT_OK
    if op == "star":
        _arity(op, elements, 1)
        result = semigroup_tool.star(triple, elements[0])
        emit(settings, {"result": str(result)}, str(result))
        return EXIT_OK
    if op == "fixed":
        _arity(op, elements, 1)
        points = fixed_points_of(triple, elements[0], settings.bound)
        emit(settings, points.to_dict(), points.description + (f": {points.point}" if points.point else ""))
        return EXIT_OK
    if op == "leq":
        _arity(op, elements, 2)
        decision = Decision.of_bool(semigroup_tool.leq(triple, elements[0], elements[1]))
        emit(settings, decision.to_dict(), f"{elements[0]} <= {elements[1]}: {decision}")
        return exit_for(decision)
    # cover: the first literal is the idempotent, the rest are the candidate cover
    if len(elements) < 2:
        raise ValueError("cover takes an idempotent followed by at least one element")
    decision = Decision.of_bool(semigroup_tool.is_cover(triple, elements[1:], elements[0]))
    emit(settings, decision.to_dict(), f"cover of {elements[0]}: {decision}")
    return exit_for(decision)


def cmd_germ(args: argparse.Namespace, settings: Settings) -> int:
    from .document_loader import load_document
    from ..tools import groupoid_tool
    from ..tools.literal_parser_tool import parse_germ, parse_infinite_path, parse_stream

    triple = load_document(args.file)
    op, literals, bound = args.op, args.literals, settings.stream_bound

    if op == "member":
        _arity(op, literals, 5)
        eta = parse_infinite_path(triple, literals[0])
        stream = parse_stream(triple, literals[1])
        try:
            p, q = int(literals[2]), int(literals[3])
        except ValueError:
            raise ValueError("member takes integer p and q") from None
        zeta = parse_infinite_path(triple, literals[4])
        decision = Decision.of_bool(groupoid_tool.is_groupoid_element(triple, eta, stream, p, q, zeta))
        emit(settings, decision.to_dict(), f"member: {decision}")
        return exit_for(decision)

    if op == "normalize":
        _arity(op, literals, 2)
        germ = parse_germ(triple, literals[0])
        try:
            n = int(literals[1])
        except ValueError:
            raise ValueError("normalize takes an integer length") from None
        result = groupoid_tool.normalize_germ(triple, germ, n, side=args.side)
        emit(settings, {"result": str(result)}, str(result))
        return EXIT_OK

    germs = [parse_germ(triple, text) for text in literals]
    if op == "eq":
        _arity(op, germs, 2)
        decision = Decision.of_bool(groupoid_tool.germ_eq(triple, germs[0], germs[1]))
        emit(settings, decision.to_dict(), f"equal: {decision}")
        return exit_for(decision)
    if op == "compose":
        _arity(op, germs, 2)
        result = groupoid_tool.compose_germs(triple, germs[0], germs[1], bound)
        emit(settings, {"result": str(result)}, str(result))
        return EXIT_OK
    _arity(op, germs, 1)
    if op == "invert":
        result = groupoid_tool.invert_germ(triple, germs[0], bound)
        emit(settings, {"result": str(result)}, str(result))
    elif op == "lag":
        value = groupoid_tool.lag(triple, germs[0], bound)
        emit(settings, {"corona": [str(v) for v in value.corona.residues], "shift": value.shift}, str(value))
    else:
        rng, value, dom = groupoid_tool.f_map(triple, germs[0], bound)
        emit(
            settings,
            {"range": str(rng), "lag": str(value), "domain": str(dom)},
            f"F = ({rng}, {value}, {dom})",
        )
    return EXIT_OK


def cmd_correspondence(args: argparse.Namespace, settings: Settings) -> int:
    from .document_loader import load_document
    from ..tools.correspondence_tool import verify_relations

    triple = load_document(args.file)
    report = verify_relations(triple)
    data = {
        "checks": [
            {"name": c.name, "passed": c.passed, "witness": c.witness, "instances": c.instances}
            for c in report.checks
        ],
        "full_module": report.full_module,
        "sinks": report.sinks,
    }
    emit(settings, data, format_relations(report))
    return EXIT_NO if report.has_failures() else EXIT_OK


def cmd_orbits(args: argparse.Namespace, settings: Settings) -> int:
    from .document_loader import load_document
    from .pipeline import orbit_summary

    triple = load_document(args.file)
    summary = orbit_summary(triple)
    text = "\n".join(
        [f"vertex orbit: {' '.join(o)}" for o in summary["vertex_orbits"]]
        + [f"edge orbit: {' '.join(o)}" for o in summary["edge_orbits"]]
    )
    emit(settings, summary, text)
    return EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "analyze": cmd_analyze,
    "katsura": cmd_katsura,
    "fixed-paths": cmd_fixed_paths,
    "slack": cmd_slack,
    "topfree": cmd_topfree,
    "semigroup": cmd_semigroup,
    "germ": cmd_germ,
    "correspondence": cmd_correspondence,
    "orbits": cmd_orbits,
}


def main(argv: Optional[List[str]] = None) -> int:
    """
    Main CLI entrypoint for Self-Similar Forge.

    Settings come from defaults.yaml, then the environment, then the flags.
    Every domain error is a ValueError and maps to exit status 2.
    """
    args = build_parser().parse_args(argv)

    settings = load_settings()
    if args.bound is not None:
        settings.bound = args.bound
    if args.format is not None:
        settings.report_format = args.format
    if args.log_level is not None:
        settings.log_level = args.log_level
    if settings.bound < 1:
        print("Input error: --bound must be positive", file=sys.stderr)
        return EXIT_INPUT

    setup_logging(settings.log_level, args.verbose)
    logger.debug(f"Running '{args.command}' with bound {settings.bound}")

    try:
        return COMMANDS[args.command](args, settings)
    except KeyboardInterrupt:
        logger.warning("Interrupted by user")
        print("\nInterrupted by user.", file=sys.stderr)
        return EXIT_INTERRUPTED
    except NotEventuallyPeriodicWithinBound as e:
        logger.warning(str(e))
        print(f"UNKNOWN: {e}", file=sys.stderr)
        return EXIT_UNKNOWN
    except ValueError as e:
        logger.error(f"Input error: {e}")
        print(f"Input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except FileNotFoundError as e:
        logger.error(f"File not found: {e}")
        print(f"File error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except PermissionError as e:
        logger.error(f"Permission error: {e}")
        print(f"Permission error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as e:
        logger.error(f"Unexpected error: {e}", exc_info=True)
        print(f"Internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
