"""The ``gsokit`` command line.

Each subcommand reads model documents (see :mod:`gsokit.io.documents`),
runs one library operation and writes its result to standard output.
Diagnostics and logs go to standard error.

Exit codes: 0 success or valid, 1 invalid model (axiom violations), 2
input or usage error, 3 resource limit.
"""
from __future__ import annotations

import argparse
import logging
import sys
from typing import Callable, List, Optional, Sequence

from gsokit import __version__
from gsokit.core.spec import GsoSpec, validate_spec
from gsokit.errors import (
    CarrierMismatch,
    CarrierTooLarge,
    ConfigError,
    CyclicInput,
    DocumentError,
    DuplicateOccurrence,
    EmptyFamily,
    GsoError,
    MalformedGraph,
    ParseError,
    SizeLimit,
    UnknownObservation,
)
from gsokit.graph import relgraph
from gsokit.graph.dot import to_dot, to_undirected_dot
from gsokit.io.documents import ObservationFamily, dump_document, load_document
from gsokit.model.checker import GsoModel, Theory, check_axioms
from gsokit.model.classification import build_model, classify
from gsokit.model.witness import witness_model
from gsokit.order.extensions import enumerate_extensions, minimal_reconstructing_subsets, reconstruct
from gsokit.order.observations import RankingStructure, from_ranking, render_steps
from gsokit.psl.interpretation import PslCoreModel, check_psl_model, translate

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_INPUT = 2
EXIT_LIMIT = 3

_INPUT_ERRORS = (
    CarrierMismatch,
    ConfigError,
    DocumentError,
    DuplicateOccurrence,
    EmptyFamily,
    MalformedGraph,
    ParseError,
    UnknownObservation,
)
_LIMIT_ERRORS = (CarrierTooLarge, SizeLimit)


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _emit_report(report) -> int:
    for line in report.lines():
        _emit(line)
    for axiom, count in report.counts:
        shown = len(report.witnesses(axiom))
        if count > shown:
            _emit(f"{axiom} ... {count - shown} more")
    return EXIT_OK if report.ok else EXIT_INVALID


def _require_valid(spec: GsoSpec) -> Optional[int]:
    report = validate_spec(spec)
    if report.ok:
        return None
    logger.error("specification is not valid")
    return _emit_report(report)


def cmd_validate(args: argparse.Namespace) -> int:
    doc = load_document(args.file, ("spec", "gso-model", "psl-model"))
    if isinstance(doc, PslCoreModel):
        report = check_psl_model(doc)
    elif isinstance(doc, GsoSpec):
        if args.theory not in (None, Theory.SPEC.value):
            raise DocumentError(f"a spec document can only be checked against 'spec', not {args.theory!r}")
        report = validate_spec(doc)
    else:
        report = check_axioms(doc, Theory(args.theory or Theory.GSO.value))
    logger.info("%s: %s", args.file, "valid" if report.ok else f"{len(report.axioms())} axioms fail")
    return _emit_report(report)


def cmd_extensions(args: argparse.Namespace) -> int:
    spec = load_document(args.file, ("spec",))
    invalid = _require_valid(spec)
    if invalid is not None:
        return invalid
    members = list(enumerate_extensions(spec))
    shown = members if args.limit is None else members[: args.limit]
    if args.format == "json":
        named = {f"s{i}": r for i, r in enumerate(shown, start=1)}
        _emit(dump_document(ObservationFamily(spec.occurrences, named)))
    else:
        for ranking in shown:
            _emit(render_steps(ranking))
    if len(shown) < len(members):
        logger.error("%d extensions exceed the listing limit %d", len(members), args.limit)
        return EXIT_LIMIT
    return EXIT_OK


def _family_members(paths: Sequence[str]) -> List[RankingStructure]:
    members: List[RankingStructure] = []
    for path in paths:
        family = load_document(path, ("observation-family",))
        members.extend(family.observations[name] for name in sorted(family.observations))
    return members


def cmd_reconstruct(args: argparse.Namespace) -> int:
    members = _family_members(args.files)
    if args.carrier is not None:
        carrier_doc = load_document(args.carrier, ("spec", "observation-family", "gso-model"))
        if isinstance(carrier_doc, GsoModel):
            carrier = carrier_doc.universe.occurrences
        else:
            carrier = carrier_doc.occurrences
    elif members:
        carrier = members[0].carrier
    else:
        raise EmptyFamily("no observations given")
    ns, nlt, et = reconstruct(carrier, members)
    logger.info("reconstructed from %d observations", len(members))
    _emit(dump_document(GsoSpec(frozenset(carrier), et.edges, nlt.edges, ns.edges)))
    return EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    model = load_document(args.file, ("gso-model",))
    _emit(dump_document(classify(model)))
    return EXIT_OK


def cmd_build_model(args: argparse.Namespace) -> int:
    data = load_document(args.file, ("classification",))
    _emit(dump_document(build_model(data)))
    return EXIT_OK


def cmd_translate_psl(args: argparse.Namespace) -> int:
    psl = load_document(args.file, ("psl-model",))
    result = translate(psl)
    logger.info("%d observers found", len(result.observer_map))
    _emit(dump_document(result.model))
    return EXIT_OK


def _observation_dot(family: ObservationFamily, name: Optional[str]) -> str:
    if name is None:
        if len(family.observations) != 1:
            raise UnknownObservation("the family has several observations; choose one with --observation")
        name = next(iter(family.observations))
    if name not in family.observations:
        raise UnknownObservation(f"no observation named {name!r}")
    order = from_ranking(family.observations[name]).graph
    return to_dot(relgraph.transitive_reduction(order), name=name)


def cmd_export_dot(args: argparse.Namespace) -> int:
    doc = load_document(args.file, ("spec", "gso-model", "observation-family"))
    if isinstance(doc, ObservationFamily):
        _emit(_observation_dot(doc, args.observation))
        return EXIT_OK
    spec = doc.spec if isinstance(doc, GsoModel) else doc
    if args.graph in ("et", "nlt"):
        base = spec.et
        if args.reduce:
            base = relgraph.transitive_reduction(base)
        residual = relgraph.difference(spec.nlt, spec.et) if args.graph == "nlt" else None
        _emit(to_dot(base, residual, name=args.graph))
    elif args.graph == "ns":
        _emit(to_undirected_dot(spec.ns, name="ns"))
    else:
        _emit(to_undirected_dot(relgraph.complement(spec.ns), name="ns_complement"))
    return EXIT_OK


def cmd_minimal_subsets(args: argparse.Namespace) -> int:
    spec = load_document(args.file, ("spec",))
    invalid = _require_valid(spec)
    if invalid is not None:
        return invalid
    subsets = minimal_reconstructing_subsets(spec)
    lines = sorted(
        " ".join(render_steps(r) for r in sorted(subset, key=RankingStructure.sort_key)) for subset in subsets
    )
    for line in lines:
        _emit(line)
    return EXIT_OK


def cmd_witness(args: argparse.Namespace) -> int:
    _emit(dump_document(witness_model()))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gsokit", description="Generalized stratified order structures.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug logs")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a document against its axioms")
    p.add_argument("file")
    p.add_argument("--theory", choices=[t.value for t in Theory], default=None)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("extensions", help="list every stratified-order extension of a spec")
    p.add_argument("file")
    p.add_argument("--format", choices=["steps", "json"], default="steps")
    p.add_argument("--limit", type=int, default=None, help="list at most N extensions; exit 3 if there are more")
    p.set_defaults(func=cmd_extensions)

    p = sub.add_parser("reconstruct", help="rebuild a spec from observation families")
    p.add_argument("files", nargs="+")
    p.add_argument("--carrier", default=None, help="document whose occurrences form the carrier")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("classify", help="classification data of a model")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("build-model", help="model of a classification document")
    p.add_argument("file")
    p.set_defaults(func=cmd_build_model)

    p = sub.add_parser("translate-psl", help="interpret a PSL-core model")
    p.add_argument("file")
    p.set_defaults(func=cmd_translate_psl)

    p = sub.add_parser("export-dot", help="Graphviz DOT text of a spec graph or an observation")
    p.add_argument("file")
    p.add_argument("--graph", choices=["et", "nlt", "ns", "ns-complement"], default="et")
    p.add_argument("--reduce", action="store_true", help="draw the transitive reduction of earlier-than")
    p.add_argument("--observation", default=None, help="observation to draw from an observation family")
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("minimal-subsets", help="minimal sets of extensions that reconstruct a spec")
    p.add_argument("file")
    p.set_defaults(func=cmd_minimal_subsets)

    p = sub.add_parser("witness", help="print the consistency witness model")
    p.set_defaults(func=cmd_witness)
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s", force=True)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the command line and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    _configure_logging(args.verbose)
    func: Callable[[argparse.Namespace], int] = args.func
    try:
        return func(args)
    except _LIMIT_ERRORS as exc:
        logger.error("%s", exc)
        return EXIT_LIMIT
    except _INPUT_ERRORS as exc:
        logger.error("%s", exc)
        return EXIT_INPUT
    except CyclicInput as exc:
        logger.error("%s", exc)
        return EXIT_INVALID
    except GsoError as exc:
        logger.error("%s", exc)
        report = getattr(exc, "report", None)
        if report is not None:
            _emit_report(report)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
