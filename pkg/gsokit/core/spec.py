"""The specification level: gso-structures and their graph decomposition.

A specification relates event occurrences by three relations:

- ``earlier_than``: the first must occur earlier than the second;
- ``not_later_than``: the first must occur not later than the second;
- ``nonsimultaneous``: the two must not occur simultaneously.

The relations are stored as raw pair sets so that any relation triple can
be represented and validated against axioms GSO1 to GSO9. A valid
specification decomposes into three graphs (:class:`SpecDecomposition`):
the acyclic transitive earlier-than graph, the residual not-later-than
edges that are not earlier-than edges, and the slack nonsimultaneous pairs
that the earlier-than graph does not already order. The decomposition and
composition are mutually inverse.
"""
from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass
from itertools import permutations
from typing import Dict, FrozenSet, Iterable, Optional, Set, Tuple

from gsokit.config import resolve
from gsokit.core.report import AxiomId, ReportBuilder, ValidationReport
from gsokit.errors import InvalidDecomposition, InvalidSpec
from gsokit.graph import relgraph
from gsokit.graph.relgraph import Digraph, UGraph

logger = logging.getLogger(__name__)

Pair = Tuple[str, str]
Relation = FrozenSet[Pair]


@dataclass(frozen=True)
class GsoSpec:
    """A specification-level structure on a set of event occurrences.

    Attributes:
        occurrences: The event occurrences.
        earlier_than: Pairs ``(a, b)``: ``a`` must occur earlier than ``b``.
        not_later_than: Pairs ``(a, b)``: ``a`` must occur not later than ``b``.
        nonsimultaneous: Pairs that must not occur simultaneously.
    """

    occurrences: FrozenSet[str]
    earlier_than: Relation = frozenset()
    not_later_than: Relation = frozenset()
    nonsimultaneous: Relation = frozenset()

    @classmethod
    def build(
        cls,
        occurrences: Iterable[str],
        earlier_than: Iterable[Pair] = (),
        not_later_than: Iterable[Pair] = (),
        nonsimultaneous: Iterable[Pair] = (),
    ) -> "GsoSpec":
        return cls(
            frozenset(occurrences),
            frozenset(tuple(p) for p in earlier_than),
            frozenset(tuple(p) for p in not_later_than),
            frozenset(tuple(p) for p in nonsimultaneous),
        )

    @classmethod
    def from_graphs(cls, earlier_than: Digraph, not_later_than: Digraph, nonsimultaneous: Digraph) -> "GsoSpec":
        vertices = earlier_than.vertices | not_later_than.vertices | nonsimultaneous.vertices
        return cls(vertices, earlier_than.edges, not_later_than.edges, nonsimultaneous.edges)

    def graph(self, relation: str) -> Digraph:
        """The named relation as a digraph on the occurrences.

        Raises:
            MalformedGraph: If the relation has self-loops or foreign endpoints.
        """
        return Digraph(self.occurrences, getattr(self, relation))

    @property
    def et(self) -> Digraph:
        return self.graph("earlier_than")

    @property
    def nlt(self) -> Digraph:
        return self.graph("not_later_than")

    @property
    def ns(self) -> UGraph:
        g = self.graph("nonsimultaneous")
        return UGraph(g.vertices, g.edges)

    @property
    def domain(self) -> FrozenSet[str]:
        mentioned = {x for rel in (self.earlier_than, self.not_later_than, self.nonsimultaneous) for p in rel for x in p}
        return self.occurrences | frozenset(mentioned)

    def relations(self) -> Tuple[Relation, Relation, Relation]:
        """``(nonsimultaneous, not_later_than, earlier_than)``."""
        return self.nonsimultaneous, self.not_later_than, self.earlier_than


def _successors(rel: Iterable[Pair]) -> Dict[str, Set[str]]:
    out: Dict[str, Set[str]] = defaultdict(set)
    for a, b in rel:
        out[a].add(b)
    return out


def check_spec_axioms(
    occurrences: FrozenSet[str],
    earlier_than: Relation,
    not_later_than: Relation,
    nonsimultaneous: Relation,
    builder: ReportBuilder,
) -> None:
    """Add every falsified instance of GSO1 to GSO9 to ``builder``.

    ``occurrences`` is the event-occurrence sort the fields are checked
    against; in a full model that is the universe's occurrence sort.
    """
    et, nlt, ns = earlier_than, not_later_than, nonsimultaneous
    for axiom, rel in ((AxiomId.GSO1, et), (AxiomId.GSO2, nlt), (AxiomId.GSO3, ns)):
        for a, b in sorted(rel):
            if a not in occurrences or b not in occurrences:
                builder.add(axiom, a, b)
    for a, b in sorted(ns):
        if a == b:
            builder.add(AxiomId.GSO4, a)
    for a, b in sorted(ns):
        if (b, a) not in ns:
            builder.add(AxiomId.GSO5, a, b)
    for a, b in sorted((nlt & ns) ^ et):
        builder.add(AxiomId.GSO6, a, b)
    for a, b in sorted(nlt):
        if a == b:
            builder.add(AxiomId.GSO7, a)
    nlt_next = _successors(nlt)
    for a, b in sorted(nlt):
        for c in sorted(nlt_next.get(b, ())):
            if a != c and (a, c) not in nlt:
                builder.add(AxiomId.GSO8, a, b, c)
    et_next = _successors(et)
    gso9 = set()
    for a, b in nlt:
        for c in et_next.get(b, ()):
            if (a, c) not in et:
                gso9.add((a, b, c))
    for a, b in et:
        for c in nlt_next.get(b, ()):
            if (a, c) not in et:
                gso9.add((a, b, c))
    for witness in sorted(gso9):
        builder.add(AxiomId.GSO9, *witness)


def validate_spec(s: GsoSpec, cap: Optional[int] = None) -> ValidationReport:
    """Check axioms GSO1 to GSO9 on ``s``.

    Args:
        s: The specification.
        cap: Witness cap; None uses the configured default.

    Returns:
        One violation per falsified axiom instance; empty iff ``s`` is valid.
    """
    builder = ReportBuilder(cap=resolve(cap, "witness_cap"))
    check_spec_axioms(s.occurrences, s.earlier_than, s.not_later_than, s.nonsimultaneous, builder)
    return builder.build()


def derive_earlier_than(nlt: Digraph, ns: Digraph) -> Digraph:
    """Earlier-than as the intersection of not-later-than and nonsimultaneous."""
    return relgraph.intersection(nlt, ns)


def check_derived_propositions(s: GsoSpec) -> ValidationReport:
    """Check the consequences every valid specification satisfies.

    ``PROP1``: earlier-than is irreflexive and transitive. ``PROP2``: pairs
    not later than each other are not nonsimultaneous. ``PROP3``: if ``a`` is
    earlier than ``b`` then ``b`` is not not-later-than ``a``.
    """
    et, nlt, ns = s.earlier_than, s.not_later_than, s.nonsimultaneous
    builder = ReportBuilder()
    for a, b in sorted(et):
        if a == b:
            builder.add("PROP1", a)
    et_next = _successors(et)
    for a, b in sorted(et):
        for c in sorted(et_next.get(b, ())):
            if (a, c) not in et:
                builder.add("PROP1", a, b, c)
    for a, b in sorted(nlt):
        if (b, a) in nlt and (a, b) in ns:
            builder.add("PROP2", a, b)
    for a, b in sorted(et):
        if (b, a) in nlt:
            builder.add("PROP3", a, b)
    return builder.build()


@dataclass(frozen=True)
class SpecDecomposition:
    """The graph decomposition of a specification.

    Attributes:
        base: The earlier-than graph, acyclic and transitive.
        residual: Not-later-than edges outside the base.
        slack: Nonsimultaneous pairs the base leaves incomparable.
    """

    base: Digraph
    residual: Digraph
    slack: UGraph

    @property
    def occurrences(self) -> FrozenSet[str]:
        return self.base.vertices


def check_decomposition(d: SpecDecomposition) -> ValidationReport:
    """Report every violated decomposition condition by name."""
    builder = ReportBuilder()
    if not (d.base.vertices == d.residual.vertices == d.slack.vertices):
        builder.add("VERTEX_MISMATCH")
        return builder.build()
    if not d.slack.is_symmetric():
        builder.add("SLACK_SYMMETRIC")
    if not relgraph.is_acyclic(d.base):
        builder.add("BASE_ACYCLIC")
    if not relgraph.is_transitive(d.base):
        builder.add("BASE_TRANSITIVE")
    upper = relgraph.union(d.base, d.residual)
    if not relgraph.is_transitive(upper):
        builder.add("UNION_TRANSITIVE")
    free = relgraph.incomparability(d.base).edges
    for u, v in d.residual.sorted_edges():
        if (u, v) not in free:
            builder.add("RESIDUAL_INCOMPARABLE", u, v)
    for triangle in relgraph.forbidden_triangles(d.base, d.residual):
        builder.add("FORBIDDEN_TRIANGLE", *triangle)
    free = relgraph.incomparability(upper).edges
    for u, v in d.slack.undirected_pairs():
        if (u, v) not in free:
            builder.add("SLACK_INCOMPARABLE", u, v)
    return builder.build()


def decompose_spec(s: GsoSpec) -> SpecDecomposition:
    """Split a valid specification into base, residual and slack graphs.

    Raises:
        InvalidSpec: If ``s`` fails an axiom.
    """
    report = validate_spec(s)
    if not report.ok:
        raise InvalidSpec(f"specification fails {', '.join(report.axioms())}", report)
    et = s.et
    residual = relgraph.difference(s.nlt, et)
    slack = relgraph.difference(s.ns, relgraph.comparability(et))
    return SpecDecomposition(et, residual, UGraph(slack.vertices, slack.edges))


def compose_spec(d: SpecDecomposition) -> GsoSpec:
    """Rebuild the specification of a decomposition.

    Raises:
        InvalidDecomposition: Naming the first violated condition.
    """
    report = check_decomposition(d)
    if not report.ok:
        raise InvalidDecomposition(report.axioms()[0], report)
    nlt = relgraph.union(d.base, d.residual)
    ns = relgraph.union(relgraph.comparability(d.base), d.slack)
    return GsoSpec(d.occurrences, d.base.edges, nlt.edges, ns.edges)


def all_pairs(occurrences: Iterable[str]) -> Relation:
    """Every ordered pair of distinct occurrences."""
    return frozenset(permutations(frozenset(occurrences), 2))
