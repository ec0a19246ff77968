"""
coxrel command-line interface

    coxrel decide chain4:7
    coxrel relhyp-verify chain4:7 --types '[["s1","s2","s3","s5","s6","s7"],["s2","s3","s4"]]'
    coxrel classify matrix.json --subset s2,s3,s4 --json
    coxrel dot examples.txt | dot -Tsvg > diagram.svg

The source is a named family, a JSON/TXT file, or '-' for standard input.
Exit status: 0 when the command computed a result, 2 on input errors,
3 when an instance exceeds a capacity bound.
"""

import argparse
import json
import logging
import sys
import time
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field
from pydantic import ValidationError as PydanticValidationError

from . import reports
from .classify import (
    classify_subset,
    irreducible_affine_subsets,
    is_spherical,
    maximal_euclidean_subsets,
    minimal_hyperbolic_subsets,
)
from .config import LOG_FORMAT, Settings, get_settings
from .decorators import (
    EXIT_INPUT_ERROR,
    EXIT_OK,
    error_payload,
    exit_status,
    format_duration,
    handle_exceptions,
)
from .diagram import INFINITY, CoxeterMatrix, perp
from .errors import CoxrelError, ParseError, ValidationError
from .inputs import InputDocument, parse_family, parse_input
from .racg import SimpleGraph, condition_ii_graph, enumerate_iaff, gamma_structure
from .relhyp import (
    decide,
    isolated_flats,
    lemma_aff_equivalence,
    maxparab,
    minimal_family,
    moussong_hyperbolic,
    verify_family,
)

logger = logging.getLogger("coxrel.cli")

COMMANDS = (
    "classify",
    "perp",
    "moussong",
    "relhyp-verify",
    "relhyp-minimal",
    "decide",
    "maxparab",
    "isolated-flats",
    "racg",
    "dot",
)


class RunOptions(BaseModel):
    """Options shared by all commands; each command reads the ones it needs"""
    json_output: bool = False
    subset: Optional[List[str]] = None
    types: Optional[List[List[str]]] = None
    s0: Optional[str] = None
    min_pairs: int = Field(default=2, ge=1)


# ============================================================================
# Sources
# ============================================================================

def load_source(source: str, format: Optional[str] = None) -> InputDocument:
    """Read a named family, a file (format from the extension) or '-' for stdin"""
    if source == "-":
        return parse_input(sys.stdin.buffer.read(), format or "json")
    path = Path(source)
    if path.is_file():
        chosen = format or ("json" if path.suffix.lower() == ".json" else "txt")
        return parse_input(path.read_bytes(), chosen)
    if format and format != "family":
        raise ParseError(f"No such file: {source}")
    return parse_family(source)


def _graph_of(document: InputDocument, matrix: CoxeterMatrix) -> SimpleGraph:
    graph = document.to_graph()
    if graph is not None:
        return graph
    if not matrix.is_right_angled():
        raise ValidationError("racg needs a graph or a right-angled matrix (orders 2 and infinity)")
    edges = [
        (i, j)
        for i in range(matrix.n)
        for j in range(i + 1, matrix.n)
        if matrix.label(i, j) != INFINITY
    ]
    return SimpleGraph.from_edge_list(matrix.n, edges, matrix.names)


# ============================================================================
# Commands
# ============================================================================

Handler = Callable[[InputDocument, CoxeterMatrix, RunOptions], Tuple[reports.Report, Callable]]


def _classify(document, matrix, options):
    if options.subset:
        subset = matrix.subset_from_names(options.subset)
        report = reports.classification_report(matrix, classify_subset(matrix, subset))
    else:
        families = {
            "irreducible_affine_subsets": irreducible_affine_subsets(matrix),
            "maximal_euclidean_subsets": maximal_euclidean_subsets(matrix),
            "minimal_hyperbolic_subsets": minimal_hyperbolic_subsets(matrix),
        }
        report = reports.classification_report(
            matrix, classify_subset(matrix, matrix.full_set()), families
        )
    return report, reports.classification_text


def _perp(document, matrix, options):
    if not options.subset:
        raise ValidationError("perp needs --subset")
    subset = matrix.subset_from_names(options.subset)
    orthogonal = perp(matrix, subset)
    report = reports.perp_report(matrix, subset, orthogonal, is_spherical(matrix, orthogonal))
    return report, reports.perp_text


def _moussong(document, matrix, options):
    return reports.moussong_report(moussong_hyperbolic(matrix)), reports.moussong_text


def _verify(document, matrix, options):
    if options.types is None:
        raise ValidationError("relhyp-verify needs --types")
    classes = [matrix.subset_from_names(names) for names in options.types]
    return reports.family_report(matrix, verify_family(matrix, classes)), reports.family_text


def _minimal(document, matrix, options):
    return reports.family_report(matrix, minimal_family(matrix)), reports.family_text


def _decide(document, matrix, options):
    return reports.decision_report(matrix, decide(matrix)), reports.decision_text


def _maxparab(document, matrix, options):
    if options.s0 is None:
        raise ValidationError("maxparab needs --s0")
    family = maxparab(matrix, matrix.index_of(options.s0))
    return reports.family_report(matrix, family), reports.family_text


def _isolated_flats(document, matrix, options):
    report = reports.isolated_flats_report(
        matrix, isolated_flats(matrix), lemma_aff_equivalence(matrix)
    )
    return report, reports.isolated_flats_text


def _racg(document, matrix, options):
    graph = _graph_of(document, matrix)
    join_sets = enumerate_iaff(graph, options.min_pairs)
    structures = [gamma_structure(graph, join) for join in join_sets]
    report = reports.racg_report(graph, condition_ii_graph(graph), join_sets, structures)
    return report, reports.racg_text


def _dot(document, matrix, options):
    text = reports.render_dot(matrix)
    return {"dot": text}, lambda report: report["dot"]


HANDLERS: Dict[str, Handler] = {
    "classify": _classify,
    "perp": _perp,
    "moussong": _moussong,
    "relhyp-verify": _verify,
    "relhyp-minimal": _minimal,
    "decide": _decide,
    "maxparab": _maxparab,
    "isolated-flats": _isolated_flats,
    "racg": _racg,
    "dot": _dot,
}


def execute(command: str, document: InputDocument, options: Optional[RunOptions] = None) -> str:
    """Run one command and render its report; errors propagate"""
    if command not in HANDLERS:
        raise ValidationError(f"Unknown command: {command}")
    options = options or RunOptions()
    matrix = document.to_matrix()
    started = time.perf_counter()
    report, render_text = HANDLERS[command](document, matrix, options)
    logger.info(f"{command} finished in {format_duration(time.perf_counter() - started)}")
    return reports.to_json(report) if options.json_output else render_text(report)


def run(
    command: str,
    document: InputDocument,
    options: Optional[RunOptions] = None,
) -> Tuple[int, str]:
    """Exit status and rendered output; failures are rendered, not raised"""
    try:
        return EXIT_OK, execute(command, document, options)
    except CoxrelError as e:
        status = exit_status(e)
        if options is not None and options.json_output:
            return status, reports.to_json(error_payload(status, str(e)))
        return status, f"error: {e}\n"


# ============================================================================
# Entry point
# ============================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coxrel",
        description="Decide hyperbolicity, relative hyperbolicity and isolated flats "
                    "of Coxeter groups from their Coxeter matrix.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("source", help="named family (e.g. chain4:7), input file, or '-' for stdin")
    parser.add_argument("--format", choices=("json", "txt", "family"), default=None,
                        help="input format (default: from the file extension)")
    parser.add_argument("--json", action="store_true", dest="json_output",
                        help="emit the machine-readable JSON report")
    parser.add_argument("--subset", default=None,
                        help="comma-separated generator names (classify, perp)")
    parser.add_argument("--types", default=None,
                        help='JSON list of name lists, e.g. \'[["s1","s2"],["s3"]]\' (relhyp-verify)')
    parser.add_argument("--s0", default=None, help="generator name (maxparab)")
    parser.add_argument("--min-pairs", type=int, default=2, dest="min_pairs",
                        help="smallest number of non-edges per join set (racg)")
    parser.add_argument("--log-level", default=None, help="overrides COXREL_LOG_LEVEL")
    return parser


def options_from_args(args: argparse.Namespace) -> RunOptions:
    types = None
    if args.types is not None:
        try:
            types = json.loads(args.types)
        except json.JSONDecodeError as e:
            raise ParseError(f"--types: {e.msg}", e.lineno, e.colno) from None
    subset = [s.strip() for s in args.subset.split(",") if s.strip()] if args.subset else None
    try:
        return RunOptions(
            json_output=args.json_output,
            subset=subset,
            types=types,
            s0=args.s0,
            min_pairs=args.min_pairs,
        )
    except PydanticValidationError as e:
        raise ParseError(f"invalid options: {e.errors()[0]['msg']}") from None


@handle_exceptions
def _main(args: argparse.Namespace) -> int:
    options = options_from_args(args)
    try:
        document = load_source(args.source, args.format)
    except CoxrelError as e:
        if not options.json_output:
            raise
        sys.stdout.write(reports.to_json(error_payload(exit_status(e), str(e))))
        return exit_status(e)
    status, output = run(args.command, document, options)
    stream = sys.stdout if status == EXIT_OK or options.json_output else sys.stderr
    stream.write(output)
    return status


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        settings = get_settings()
    except PydanticValidationError as e:
        sys.stderr.write(f"error: invalid COXREL_* configuration: {e.errors()[0]['msg']}\n")
        return EXIT_INPUT_ERROR
    if args.log_level is not None:
        try:
            settings = Settings(**dict(settings.model_dump(), log_level=args.log_level))
        except PydanticValidationError as e:
            sys.stderr.write(f"error: invalid --log-level: {e.errors()[0]['msg']}\n")
            return EXIT_INPUT_ERROR
    logging.basicConfig(level=settings.log_level, format=LOG_FORMAT)
    return _main(args)


if __name__ == "__main__":
    sys.exit(main())
