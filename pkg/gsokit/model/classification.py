"""Classification of finite models.

Every finite model of the full theory is determined, up to the names of
its events, by three pieces of data:

- the partition of the event occurrences into events;
- the graph decomposition of its specification;
- one ranking structure per observation.

:func:`classify` extracts that data from a model and :func:`build_model`
builds the model back. The data must satisfy two intersection conditions:
the not-later-than graph is the intersection of the step-completed graphs
of the rankings, and the nonsimultaneous graph is the intersection of
their comparability graphs.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Mapping

from gsokit.core.report import ReportBuilder, ValidationReport
from gsokit.core.spec import GsoSpec, SpecDecomposition, check_decomposition, compose_spec, decompose_spec
from gsokit.core.universe import check_partition, event_partition, universe_from_partition
from gsokit.errors import InvalidClassificationData, NotAModel
from gsokit.graph import relgraph
from gsokit.model.checker import GsoModel, Theory, check_axioms, project_observation
from gsokit.order.observations import RankingStructure, from_ranking, graph_gi, step_graph, to_ranking

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClassificationData:
    """Events, specification graphs and observations of a model.

    Attributes:
        event_partition: Disjoint nonempty blocks covering the occurrences.
        decomposition: Base, residual and slack graphs of the specification.
        ranking_family: The ranking structure of each observation.
    """

    event_partition: FrozenSet[FrozenSet[str]]
    decomposition: SpecDecomposition
    ranking_family: Mapping[str, RankingStructure] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "event_partition", frozenset(frozenset(b) for b in self.event_partition))
        object.__setattr__(self, "ranking_family", dict(self.ranking_family))

    @property
    def occurrences(self) -> FrozenSet[str]:
        return self.decomposition.occurrences

    @property
    def observations(self) -> FrozenSet[str]:
        return frozenset(self.ranking_family)


def _graph_mismatch(builder: ReportBuilder, condition: str, expected, actual) -> None:
    for pair in sorted(expected.edges ^ actual.edges):
        builder.add(condition, *pair)


def check_classification(d: ClassificationData) -> ValidationReport:
    """Report every violated classification condition by name.

    Partition conditions are named ``PARTITION_*``, decomposition conditions
    as in :func:`gsokit.core.spec.check_decomposition`. ``SORTS_DISJOINT``
    flags an observation id that is also an occurrence, ``RANKING_CARRIER``
    a ranking over the wrong occurrences. ``CLASS3_NLT`` and ``CLASS3_NS``
    list the pairs on which an intersection condition fails.
    """
    builder = ReportBuilder()
    occurrences = d.occurrences
    builder.extend(check_partition(d.event_partition, occurrences))
    decomposition = check_decomposition(d.decomposition)
    builder.extend(decomposition)
    for o in sorted(d.observations & occurrences):
        builder.add("SORTS_DISJOINT", o)
    carriers_ok = True
    for o in sorted(d.ranking_family):
        if d.ranking_family[o].carrier != occurrences:
            builder.add("RANKING_CARRIER", o)
            carriers_ok = False
    if carriers_ok and "VERTEX_MISMATCH" not in decomposition.axioms():
        rankings = list(d.ranking_family.values())
        base, residual, slack = d.decomposition.base, d.decomposition.residual, d.decomposition.slack
        nlt = relgraph.union(base, residual)
        ns = relgraph.union(relgraph.comparability(base), slack)
        _graph_mismatch(
            builder, "CLASS3_NLT", nlt, relgraph.intersect_all((graph_gi(r) for r in rankings), occurrences)
        )
        observed_apart = (relgraph.comparability(from_ranking(r).graph) for r in rankings)
        _graph_mismatch(builder, "CLASS3_NS", ns, relgraph.intersect_all(observed_apart, occurrences))
    return builder.build()


def classify(m: GsoModel) -> ClassificationData:
    """Extract the classification data of a model of the full theory.

    Events without occurrences are dropped from the partition.

    Raises:
        NotAModel: Naming the first failing axiom.
    """
    report = check_axioms(m, Theory.GSO)
    if not report.ok:
        raise NotAModel(report.axioms()[0], report)
    family: Dict[str, RankingStructure] = {
        o: to_ranking(project_observation(m, o)) for o in sorted(m.universe.observations)
    }
    logger.debug("classified model with %d observations", len(family))
    return ClassificationData(event_partition(m.universe), decompose_spec(m.spec), family)


def build_model(d: ClassificationData) -> GsoModel:
    """Build the model described by classification data.

    Events get fresh ids ``e_<least occurrence>``. An observation observes
    ``x`` before ``y`` when ``x`` is in an earlier step, and observes them
    simultaneously when they share a step.

    Raises:
        InvalidClassificationData: Naming the first violated condition.
    """
    report = check_classification(d)
    if not report.ok:
        raise InvalidClassificationData(report.axioms()[0], report)
    universe = universe_from_partition(d.event_partition, d.observations)
    composed = compose_spec(d.decomposition)
    spec = GsoSpec(universe.occurrences, composed.earlier_than, composed.not_later_than, composed.nonsimultaneous)
    before = set()
    simult = set()
    for o, ranking in d.ranking_family.items():
        before.update((a, b, o) for a, b in from_ranking(ranking).order)
        simult.update((a, b, o) for a, b in step_graph(ranking).edges)
    return GsoModel(universe, spec, frozenset(before), frozenset(simult))
