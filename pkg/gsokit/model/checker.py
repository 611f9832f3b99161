"""Finite models of the full theory and exhaustive axiom checking.

A :class:`GsoModel` interprets every symbol of the theory over a finite
universe: the three sorts, the occurrence relation, the specification
relations, and the two observation relations ``observed_before`` and
``observed_simult``, whose third argument is an observation.

:func:`check_axioms` evaluates each axiom of the chosen theory by
substituting every tuple of elements and reports each falsifying tuple.
Observation variables of O5, O7 and O8 range over observations and the
occurrence variables of O5, O9 and O10 over event occurrences; O9 and O10
are evaluated on distinct pairs.
"""
from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, Iterable, Optional, Set, Tuple

from gsokit.config import resolve
from gsokit.core.report import AxiomId, ReportBuilder, ValidationReport
from gsokit.core.spec import GsoSpec, check_spec_axioms
from gsokit.core.universe import Universe, validate_universe
from gsokit.errors import SizeLimit, UnknownObservation
from gsokit.order.observations import StratOrder

logger = logging.getLogger(__name__)

Pair = Tuple[str, str]
Triple = Tuple[str, str, str]


class Theory(str, Enum):
    """The theories a model can be checked against."""

    UNIV = "univ"
    SPEC = "spec"
    GSO = "gso"
    GSO_MINUS = "gso-minus"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class GsoModel:
    """A finite structure for the language of the theory.

    Attributes:
        universe: Sorts and the occurrence relation.
        spec: The specification relations; ``spec.occurrences`` is the
            universe's occurrence sort.
        observed_before: ``(a, b, o)``: ``a`` observed before ``b`` in ``o``.
        observed_simult: ``(a, b, o)``: ``a`` and ``b`` observed simultaneously in ``o``.
    """

    universe: Universe
    spec: GsoSpec
    observed_before: FrozenSet[Triple] = frozenset()
    observed_simult: FrozenSet[Triple] = frozenset()

    @classmethod
    def build(
        cls,
        universe: Universe,
        earlier_than: Iterable[Pair] = (),
        not_later_than: Iterable[Pair] = (),
        nonsimultaneous: Iterable[Pair] = (),
        observed_before: Iterable[Triple] = (),
        observed_simult: Iterable[Triple] = (),
    ) -> "GsoModel":
        spec = GsoSpec.build(universe.occurrences, earlier_than, not_later_than, nonsimultaneous)
        return cls(
            universe,
            spec,
            frozenset(tuple(t) for t in observed_before),
            frozenset(tuple(t) for t in observed_simult),
        )

    @property
    def domain(self) -> FrozenSet[str]:
        """Every element the model mentions."""
        mentioned = {x for t in self.observed_before | self.observed_simult for x in t}
        return self.universe.domain | self.spec.domain | frozenset(mentioned)

    def with_observations(self, keep: Iterable[str]) -> "GsoModel":
        """Restrict the observation sort (and both observation relations) to ``keep``."""
        keep = frozenset(keep)
        u = self.universe
        universe = Universe(u.events, u.occurrences, u.observations & keep, u.occurrence_of, u.others)
        return GsoModel(
            universe,
            self.spec,
            frozenset(t for t in self.observed_before if t[2] in keep),
            frozenset(t for t in self.observed_simult if t[2] in keep),
        )


def _by_observation(triples: FrozenSet[Triple]) -> Dict[str, Set[Pair]]:
    out: Dict[str, Set[Pair]] = defaultdict(set)
    for a, b, o in triples:
        out[o].add((a, b))
    return out


def check_observation_axioms(m: GsoModel, builder: ReportBuilder) -> None:
    """Add every falsified instance of O1 to O10 to ``builder``."""
    occurrences = m.universe.occurrences
    observations = m.universe.observations
    ob, os_ = m.observed_before, m.observed_simult
    ns, nlt = m.spec.nonsimultaneous, m.spec.not_later_than
    for axiom, triples in ((AxiomId.O1, ob), (AxiomId.O2, os_)):
        for a, b, o in sorted(triples):
            if a not in occurrences or b not in occurrences or o not in observations:
                builder.add(axiom, a, b, o)
    for a, b, o in sorted(ob):
        if a == b:
            builder.add(AxiomId.O3, a, o)
    before = _by_observation(ob)
    for o in sorted(before):
        pairs = before[o]
        for a, b in sorted(pairs):
            for c in sorted(c for x, c in pairs if x == b):
                if (a, c) not in pairs:
                    builder.add(AxiomId.O4, a, b, c, o)
    occ = sorted(occurrences)
    for o in sorted(observations):
        for a in occ:
            for b in occ:
                apart = a != b and (a, b, o) not in ob and (b, a, o) not in ob
                if apart != ((a, b, o) in os_):
                    builder.add(AxiomId.O5, a, b, o)
    simult = _by_observation(os_)
    for o in sorted(simult):
        pairs = simult[o]
        for a, b in sorted(pairs):
            for c in sorted(c for x, c in pairs if x == b):
                if a != c and (a, c) not in pairs:
                    builder.add(AxiomId.O6, a, b, c, o)
    for a, b in sorted(ns):
        for o in sorted(observations):
            if (a, b, o) not in ob and (b, a, o) not in ob:
                builder.add(AxiomId.O7, a, b, o)
    for a, b in sorted(nlt):
        for o in sorted(observations):
            if (a, b, o) not in ob and (a, b, o) not in os_:
                builder.add(AxiomId.O8, a, b, o)
    seen_simult = {(a, b) for a, b, o in os_ if o in observations}
    seen_before = {(a, b) for a, b, o in ob if o in observations}
    for a in occ:
        for b in occ:
            if a == b:
                continue
            if (a, b) not in ns and (a, b) not in seen_simult:
                builder.add(AxiomId.O9, a, b)
            if (a, b) not in nlt and (b, a) not in seen_before:
                builder.add(AxiomId.O10, a, b)


def _check_exclusive_sorts(m: GsoModel, builder: ReportBuilder) -> None:
    u = m.universe
    for x in sorted(m.domain):
        if x not in u.occurrences and x not in u.observations:
            builder.add(AxiomId.EX1, x)
        if x in u.occurrences and x in u.observations:
            builder.add(AxiomId.EX2, x)


def _check_size(m: GsoModel, limit: int) -> None:
    u = m.universe
    for name, sort in (("events", u.events), ("occurrences", u.occurrences), ("observations", u.observations)):
        if len(sort) > limit:
            raise SizeLimit(f"{len(sort)} {name} exceed the model size limit {limit}")


def check_axioms(
    m: GsoModel, theory: Theory = Theory.GSO, cap: Optional[int] = None, size_limit: Optional[int] = None
) -> ValidationReport:
    """Evaluate every axiom of ``theory`` on ``m`` by exhaustive substitution.

    Args:
        m: A finite model.
        theory: ``UNIV`` (E1-E5), ``SPEC`` (GSO1-GSO9), ``GSO`` (all of
            E1-E5, GSO1-GSO9 and O1-O10) or ``GSO_MINUS`` (GSO1-GSO9,
            O1-O10, EX1 and EX2).
        cap: Witness cap; None uses the configured default.
        size_limit: Largest accepted sort; None uses the configured default.

    Returns:
        Falsifying tuples per axiom; empty iff ``m`` is a model of ``theory``.

    Raises:
        SizeLimit: If a sort is larger than ``size_limit``.
    """
    theory = Theory(theory)
    _check_size(m, resolve(size_limit, "model_size_limit"))
    cap = resolve(cap, "witness_cap")
    report = ValidationReport()
    if theory in (Theory.UNIV, Theory.GSO):
        report = report.merge(validate_universe(m.universe, cap, m.domain))
    builder = ReportBuilder(cap=cap)
    if theory is not Theory.UNIV:
        s = m.spec
        check_spec_axioms(m.universe.occurrences, s.earlier_than, s.not_later_than, s.nonsimultaneous, builder)
    if theory in (Theory.GSO, Theory.GSO_MINUS):
        check_observation_axioms(m, builder)
    if theory is Theory.GSO_MINUS:
        _check_exclusive_sorts(m, builder)
    report = report.merge(builder.build())
    logger.debug("checked %s: %d violated axioms", theory, len(report.axioms()))
    return report


def project_observation(m: GsoModel, obs: str) -> StratOrder:
    """The order one observation induces on the event occurrences.

    Raises:
        UnknownObservation: If ``obs`` is not an observation of ``m``.
    """
    if obs not in m.universe.observations:
        raise UnknownObservation(f"{obs!r} is not an observation")
    pairs = [(a, b) for a, b, o in m.observed_before if o == obs]
    return StratOrder.build(m.universe.occurrences, pairs)
