"""Self-describing JSON model documents.

Every document is a JSON object with a ``kind`` tag:

- ``spec``: ``occurrences``, ``earlier_than``, ``not_later_than``,
  ``nonsimultaneous`` (unordered pairs, symmetrised on load);
- ``gso-model``: ``events``, ``occurrences``, ``observations``, optional
  ``others``, ``occurrence_of`` as ``[occurrence, event]``, the three
  specification relations, and ``observed_before`` / ``observed_simult``
  as ``[a, b, observation]`` triples. Observations may instead be given as
  a ``steps`` object mapping each observation to a step sequence;
- ``psl-model``: ``activities``, ``activity_occurrences``, ``timepoints``,
  ``objects``, ``occurrence_of``, ``participates_in``, ``before``,
  ``exists_at``;
- ``observation-family``: optional ``occurrences`` and ``observations``,
  either an object of named step sequences or a list of them;
- ``classification``: ``occurrences``, ``event_partition``, ``base``,
  ``residual``, ``slack`` and ``ranking_family``.

A step sequence is either the text form ``{o1}{o2,o3}`` or an array of
arrays of ids. Every id must match ``[A-Za-z0-9_]+`` so that it survives the
text form. Output is canonical: keys sorted, every list sorted, step
sequences written as text, so equal values always dump to equal bytes.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, FrozenSet, Iterable, List, Mapping, Tuple, Union

from gsokit.core.spec import GsoSpec, SpecDecomposition
from gsokit.core.universe import Universe
from gsokit.errors import DocumentError, MalformedGraph, MalformedRanking, ParseError
from gsokit.graph.relgraph import Digraph, UGraph
from gsokit.model.checker import GsoModel
from gsokit.model.classification import ClassificationData
from gsokit.order.observations import (
    OCCURRENCE_ID,
    RankingStructure,
    from_ranking,
    parse_steps,
    render_steps,
    step_graph,
)
from gsokit.psl.interpretation import PslCoreModel

KINDS = ("spec", "gso-model", "psl-model", "observation-family", "classification")


@dataclass(frozen=True)
class ObservationFamily:
    """Named observations over a common set of occurrences."""

    occurrences: FrozenSet[str]
    observations: Mapping[str, RankingStructure] = field(default_factory=dict)

    @classmethod
    def of(cls, observations: Mapping[str, RankingStructure], occurrences: Iterable[str] = ()) -> "ObservationFamily":
        carrier = frozenset(occurrences)
        if not carrier:
            carrier = frozenset(x for r in observations.values() for x in r.carrier)
        return cls(carrier, dict(observations))


Document = Union[GsoSpec, GsoModel, PslCoreModel, ObservationFamily, ClassificationData]


def _check_id(name: str, key: str) -> None:
    match = OCCURRENCE_ID.match(name)
    if match is None or match.end() != len(name):
        position = 0 if match is None else match.end()
        raise ParseError(f"invalid id {name!r} in {key!r}", position)


def _ids(data: Mapping[str, Any], key: str) -> FrozenSet[str]:
    raw = data.get(key, [])
    if not isinstance(raw, list) or not all(isinstance(x, str) and x for x in raw):
        raise DocumentError(f"{key!r} must be a list of nonempty strings")
    for x in raw:
        _check_id(x, key)
    return frozenset(raw)


def _rows(data: Mapping[str, Any], key: str, arity: int, declared: FrozenSet[str]) -> FrozenSet[Tuple[str, ...]]:
    raw = data.get(key, [])
    if not isinstance(raw, list):
        raise DocumentError(f"{key!r} must be a list")
    rows = set()
    for row in raw:
        if not isinstance(row, list) or len(row) != arity or not all(isinstance(x, str) for x in row):
            raise DocumentError(f"{key!r} entries must be lists of {arity} ids, got {row!r}")
        for x in row:
            if x not in declared:
                raise DocumentError(f"{key!r} refers to undeclared id {x!r}")
        rows.add(tuple(row))
    return frozenset(rows)


def _symmetric(pairs: FrozenSet[Tuple[str, ...]]) -> FrozenSet[Tuple[str, str]]:
    return frozenset(pairs | {(b, a) for a, b in pairs})


def _steps(value: Any) -> RankingStructure:
    if isinstance(value, str):
        return parse_steps(value)
    if isinstance(value, list) and all(isinstance(b, list) for b in value):
        for block in value:
            for x in block:
                if not isinstance(x, str):
                    raise DocumentError(f"step members must be ids, got {x!r}")
                _check_id(x, "steps")
        try:
            return RankingStructure(tuple(frozenset(b) for b in value))
        except MalformedRanking as exc:
            raise DocumentError(str(exc)) from exc
    raise DocumentError(f"a step sequence must be a string or a list of lists, got {value!r}")


def _named_steps(raw: Any, key: str) -> Dict[str, RankingStructure]:
    if isinstance(raw, Mapping):
        return {str(name): _steps(value) for name, value in raw.items()}
    if isinstance(raw, list):
        return {f"s{i}": _steps(value) for i, value in enumerate(raw, start=1)}
    raise DocumentError(f"{key!r} must be an object or a list of step sequences")


def _load_spec(data: Mapping[str, Any]) -> GsoSpec:
    occurrences = _ids(data, "occurrences")
    return GsoSpec(
        occurrences,
        _rows(data, "earlier_than", 2, occurrences),
        _rows(data, "not_later_than", 2, occurrences),
        _symmetric(_rows(data, "nonsimultaneous", 2, occurrences)),
    )


def _load_model(data: Mapping[str, Any]) -> GsoModel:
    events, occurrences = _ids(data, "events"), _ids(data, "occurrences")
    observations, others = _ids(data, "observations"), _ids(data, "others")
    declared = events | occurrences | observations | others
    universe = Universe(events, occurrences, observations, _rows(data, "occurrence_of", 2, declared), others)
    before = set(_rows(data, "observed_before", 3, declared))
    simult = set(_rows(data, "observed_simult", 3, declared))
    for obs, ranking in sorted(_named_steps(data.get("steps", {}), "steps").items()):
        if obs not in observations:
            raise DocumentError(f"'steps' refers to undeclared observation {obs!r}")
        before.update((a, b, obs) for a, b in from_ranking(ranking).order)
        simult.update((a, b, obs) for a, b in step_graph(ranking).edges)
    spec = GsoSpec(
        occurrences,
        _rows(data, "earlier_than", 2, declared),
        _rows(data, "not_later_than", 2, declared),
        _symmetric(_rows(data, "nonsimultaneous", 2, declared)),
    )
    return GsoModel(universe, spec, frozenset(before), frozenset(simult))


def _load_psl(data: Mapping[str, Any]) -> PslCoreModel:
    activities, occurrences = _ids(data, "activities"), _ids(data, "activity_occurrences")
    timepoints, objects = _ids(data, "timepoints"), _ids(data, "objects")
    declared = activities | occurrences | timepoints | objects
    return PslCoreModel(
        activities,
        occurrences,
        timepoints,
        objects,
        _rows(data, "occurrence_of", 2, declared),
        _rows(data, "participates_in", 3, declared),
        _rows(data, "before", 2, declared),
        _rows(data, "exists_at", 2, declared),
    )


def _load_family(data: Mapping[str, Any]) -> ObservationFamily:
    return ObservationFamily.of(
        _named_steps(data.get("observations", {}), "observations"), _ids(data, "occurrences")
    )


def _load_classification(data: Mapping[str, Any]) -> ClassificationData:
    occurrences = _ids(data, "occurrences")
    raw = data.get("event_partition", [])
    if not isinstance(raw, list) or not all(isinstance(b, list) for b in raw):
        raise DocumentError("'event_partition' must be a list of lists of ids")
    for block in raw:
        for x in block:
            if not isinstance(x, str):
                raise DocumentError(f"'event_partition' members must be ids, got {x!r}")
            _check_id(x, "event_partition")
    partition = frozenset(frozenset(b) for b in raw)
    try:
        decomposition = SpecDecomposition(
            Digraph(occurrences, _rows(data, "base", 2, occurrences)),
            Digraph(occurrences, _rows(data, "residual", 2, occurrences)),
            UGraph(occurrences, _symmetric(_rows(data, "slack", 2, occurrences))),
        )
    except MalformedGraph as exc:
        raise DocumentError(str(exc)) from exc
    family = _named_steps(data.get("ranking_family", {}), "ranking_family")
    return ClassificationData(partition, decomposition, family)


_LOADERS: Dict[str, Callable[[Mapping[str, Any]], Document]] = {
    "spec": _load_spec,
    "gso-model": _load_model,
    "psl-model": _load_psl,
    "observation-family": _load_family,
    "classification": _load_classification,
}


def parse_document(data: Any, expect: Iterable[str] = KINDS) -> Document:
    """Build the value a decoded document describes.

    Args:
        data: The decoded JSON value.
        expect: The kinds the caller accepts.

    Raises:
        DocumentError: If the document is malformed or of another kind.
        ParseError: If a step sequence is malformed.
        DuplicateOccurrence: If a step sequence repeats an id.
    """
    if not isinstance(data, Mapping):
        raise DocumentError("a document must be a JSON object")
    kind = data.get("kind")
    expect = tuple(expect)
    if kind not in _LOADERS:
        raise DocumentError(f"unknown document kind {kind!r}")
    if kind not in expect:
        raise DocumentError(f"expected a {' or '.join(expect)} document, got {kind!r}")
    return _LOADERS[kind](data)


def load_document(path: Union[str, Path], expect: Iterable[str] = KINDS) -> Document:
    """Read and parse the document at ``path``."""
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}") from exc
    return parse_document(data, expect)


def _sorted_rows(rows: Iterable[Tuple[str, ...]]) -> List[List[str]]:
    return [list(row) for row in sorted(rows)]


def _unordered(pairs: Iterable[Tuple[str, str]]) -> List[List[str]]:
    return [list(p) for p in sorted({tuple(sorted(p)) for p in pairs})]


def _steps_map(family: Mapping[str, RankingStructure]) -> Dict[str, str]:
    return {name: render_steps(r) for name, r in family.items()}


def document_of(value: Document) -> Dict[str, Any]:
    """The canonical JSON-ready document of a value."""
    if isinstance(value, GsoSpec):
        return {
            "kind": "spec",
            "occurrences": sorted(value.occurrences),
            "earlier_than": _sorted_rows(value.earlier_than),
            "not_later_than": _sorted_rows(value.not_later_than),
            "nonsimultaneous": _unordered(value.nonsimultaneous),
        }
    if isinstance(value, GsoModel):
        u, s = value.universe, value.spec
        doc = {
            "kind": "gso-model",
            "events": sorted(u.events),
            "occurrences": sorted(u.occurrences),
            "observations": sorted(u.observations),
            "occurrence_of": _sorted_rows(u.occurrence_of),
            "earlier_than": _sorted_rows(s.earlier_than),
            "not_later_than": _sorted_rows(s.not_later_than),
            "nonsimultaneous": _unordered(s.nonsimultaneous),
            "observed_before": _sorted_rows(value.observed_before),
            "observed_simult": _sorted_rows(value.observed_simult),
        }
        if u.others:
            doc["others"] = sorted(u.others)
        return doc
    if isinstance(value, PslCoreModel):
        return {
            "kind": "psl-model",
            "activities": sorted(value.activities),
            "activity_occurrences": sorted(value.activity_occurrences),
            "timepoints": sorted(value.timepoints),
            "objects": sorted(value.objects),
            "occurrence_of": _sorted_rows(value.occurrence_of),
            "participates_in": _sorted_rows(value.participates_in),
            "before": _sorted_rows(value.before),
            "exists_at": _sorted_rows(value.exists_at),
        }
    if isinstance(value, ObservationFamily):
        return {
            "kind": "observation-family",
            "occurrences": sorted(value.occurrences),
            "observations": _steps_map(value.observations),
        }
    if isinstance(value, ClassificationData):
        d = value.decomposition
        return {
            "kind": "classification",
            "occurrences": sorted(value.occurrences),
            "event_partition": sorted(sorted(block) for block in value.event_partition),
            "base": _sorted_rows(d.base.edges),
            "residual": _sorted_rows(d.residual.edges),
            "slack": _unordered(d.slack.edges),
            "ranking_family": _steps_map(value.ranking_family),
        }
    raise TypeError(f"cannot serialise {type(value).__name__}")


def dump_document(value: Document) -> str:
    """Serialise a value as canonical, newline-terminated JSON."""
    return json.dumps(document_of(value), sort_keys=True, indent=2) + "\n"
