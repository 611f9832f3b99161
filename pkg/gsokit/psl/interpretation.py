"""A finite PSL-core fragment and the interpretation of the event-free theory into it.

The fragment has four disjoint sorts (activities, activity occurrences,
timepoints, objects), the occurrence relation between activity occurrences
and activities, ``participates_in(object, occurrence, timepoint)``, a strict
total order ``before`` on timepoints and ``exists_at(object, timepoint)``.

An *observer* is an object that exists at every timepoint and, for every
activity, takes part in exactly one occurrence of it at exactly one
timepoint. Translation reads each observer as an observation of the
activities:

- ``a1`` is observed before ``a2`` when the observer's timepoint for
  ``a1`` is before its timepoint for ``a2``;
- distinct activities are observed simultaneously when the timepoints
  coincide;
- earlier-than holds when every observer sees ``a1`` before ``a2``;
- not-later-than holds when every observer sees ``a1`` before or
  simultaneously with ``a2``;
- nonsimultaneous holds when every observer sees the two in some order.

Without observers all three specification relations are empty.
"""
from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Dict, FrozenSet, Iterable, Mapping, Optional, Tuple

from gsokit.core.report import ReportBuilder, ValidationReport
from gsokit.core.spec import GsoSpec
from gsokit.core.universe import Universe
from gsokit.errors import InvalidPslModel
from gsokit.model.checker import GsoModel, Theory, check_axioms

logger = logging.getLogger(__name__)

Pair = Tuple[str, str]
Triple = Tuple[str, str, str]


@dataclass(frozen=True)
class PslCoreModel:
    """A finite structure for the PSL-core fragment."""

    activities: FrozenSet[str] = frozenset()
    activity_occurrences: FrozenSet[str] = frozenset()
    timepoints: FrozenSet[str] = frozenset()
    objects: FrozenSet[str] = frozenset()
    occurrence_of: FrozenSet[Pair] = frozenset()
    participates_in: FrozenSet[Triple] = frozenset()
    before: FrozenSet[Pair] = frozenset()
    exists_at: FrozenSet[Pair] = frozenset()

    @classmethod
    def build(
        cls,
        activities: Iterable[str] = (),
        activity_occurrences: Iterable[str] = (),
        timepoints: Iterable[str] = (),
        objects: Iterable[str] = (),
        occurrence_of: Iterable[Pair] = (),
        participates_in: Iterable[Triple] = (),
        before: Iterable[Pair] = (),
        exists_at: Iterable[Pair] = (),
    ) -> "PslCoreModel":
        return cls(
            frozenset(activities),
            frozenset(activity_occurrences),
            frozenset(timepoints),
            frozenset(objects),
            frozenset(tuple(p) for p in occurrence_of),
            frozenset(tuple(t) for t in participates_in),
            frozenset(tuple(p) for p in before),
            frozenset(tuple(p) for p in exists_at),
        )

    @classmethod
    def chain(cls, timepoints: Iterable[str], **fields) -> "PslCoreModel":
        """Build a model whose ``before`` is the total order of ``timepoints`` as listed."""
        ordered = list(timepoints)
        before = [(ordered[i], ordered[j]) for i in range(len(ordered)) for j in range(i + 1, len(ordered))]
        return cls.build(timepoints=ordered, before=before, **fields)


def check_psl_model(p: PslCoreModel) -> ValidationReport:
    """Report every violated well-formedness condition of ``p``.

    Conditions: ``PSL_SORTS`` (an element in two sorts),
    ``PSL_OCCURRENCE_SORTS``, ``PSL_OCCURRENCE_TOTAL`` and
    ``PSL_OCCURRENCE_SINGLE`` (every activity occurrence is an occurrence of
    exactly one activity), ``PSL_PARTICIPATION_SORTS``,
    ``PSL_EXISTS_SORTS``, and ``PSL_BEFORE_SORTS``,
    ``PSL_BEFORE_IRREFLEXIVE``, ``PSL_BEFORE_TRANSITIVE``,
    ``PSL_BEFORE_TOTAL`` for the timepoint order.
    """
    builder = ReportBuilder()
    sorts = (p.activities, p.activity_occurrences, p.timepoints, p.objects)
    for x in sorted(frozenset().union(*sorts)):
        if sum(x in s for s in sorts) > 1:
            builder.add("PSL_SORTS", x)
    activity_of: Dict[str, set] = defaultdict(set)
    for o, a in sorted(p.occurrence_of):
        if o not in p.activity_occurrences or a not in p.activities:
            builder.add("PSL_OCCURRENCE_SORTS", o, a)
        activity_of[o].add(a)
    for o in sorted(p.activity_occurrences):
        if not activity_of[o]:
            builder.add("PSL_OCCURRENCE_TOTAL", o)
        elif len(activity_of[o]) > 1:
            builder.add("PSL_OCCURRENCE_SINGLE", o)
    for x, o, t in sorted(p.participates_in):
        if x not in p.objects or o not in p.activity_occurrences or t not in p.timepoints:
            builder.add("PSL_PARTICIPATION_SORTS", x, o, t)
    for x, t in sorted(p.exists_at):
        if x not in p.objects or t not in p.timepoints:
            builder.add("PSL_EXISTS_SORTS", x, t)
    for t1, t2 in sorted(p.before):
        if t1 not in p.timepoints or t2 not in p.timepoints:
            builder.add("PSL_BEFORE_SORTS", t1, t2)
        if t1 == t2:
            builder.add("PSL_BEFORE_IRREFLEXIVE", t1)
    for t1, t2 in sorted(p.before):
        for t3 in sorted(c for b, c in p.before if b == t2):
            if (t1, t3) not in p.before:
                builder.add("PSL_BEFORE_TRANSITIVE", t1, t2, t3)
    for t1, t2 in combinations(sorted(p.timepoints), 2):
        if (t1, t2) not in p.before and (t2, t1) not in p.before:
            builder.add("PSL_BEFORE_TOTAL", t1, t2)
    return builder.build()


def sightings(p: PslCoreModel, x: str) -> Dict[str, Optional[str]]:
    """Map each activity to the timepoint at which ``x`` observes it.

    The value is None unless exactly one (occurrence, timepoint) pair of
    that activity has ``x`` participating.
    """
    activity_of = dict(p.occurrence_of)
    seen: Dict[str, list] = defaultdict(list)
    for obj, o, t in p.participates_in:
        if obj == x and o in activity_of:
            seen[activity_of[o]].append(t)
    return {a: seen[a][0] if len(seen[a]) == 1 else None for a in sorted(p.activities)}


def observers(p: PslCoreModel) -> FrozenSet[str]:
    """Objects that exist throughout and observe every activity exactly once."""
    found = set()
    for x in p.objects:
        if any((x, t) not in p.exists_at for t in p.timepoints):
            continue
        if all(t is not None for t in sightings(p, x).values()):
            found.add(x)
    return frozenset(found)


@dataclass(frozen=True)
class TranslationResult:
    """An event-free model and the object behind each of its observations."""

    model: GsoModel
    observer_map: Mapping[str, str]


def translate(p: PslCoreModel) -> TranslationResult:
    """Interpret ``p`` as a model of the event-free theory.

    Activities become event occurrences and observers become observations;
    each observation keeps its observer's id.

    Raises:
        InvalidPslModel: If ``p`` is not well formed.
    """
    report = check_psl_model(p)
    if not report.ok:
        raise InvalidPslModel(f"malformed PSL model: {', '.join(report.axioms())}", report)
    watchers = sorted(observers(p))
    seen = {x: sightings(p, x) for x in watchers}
    before, simult = set(), set()
    for x in watchers:
        times = seen[x]
        for a1, a2 in permutations(sorted(p.activities), 2):
            t1, t2 = times[a1], times[a2]
            if (t1, t2) in p.before:
                before.add((a1, a2, x))
            elif t1 == t2:
                simult.add((a1, a2, x))
    et, nlt, ns = set(), set(), set()
    if watchers:
        for a1, a2 in permutations(sorted(p.activities), 2):
            forward = [(a1, a2, x) in before for x in watchers]
            backward = [(a2, a1, x) in before for x in watchers]
            together = [(a1, a2, x) in simult for x in watchers]
            if all(forward):
                et.add((a1, a2))
            if all(f or s for f, s in zip(forward, together)):
                nlt.add((a1, a2))
            if all(f or b for f, b in zip(forward, backward)):
                ns.add((a1, a2))
    universe = Universe(occurrences=p.activities, observations=frozenset(watchers))
    spec = GsoSpec(p.activities, frozenset(et), frozenset(nlt), frozenset(ns))
    model = GsoModel(universe, spec, frozenset(before), frozenset(simult))
    logger.debug("translated %d activities seen by %d observers", len(p.activities), len(watchers))
    return TranslationResult(model, {x: x for x in watchers})


def verify_interpretation(p: PslCoreModel) -> ValidationReport:
    """Check the translation of ``p`` against the event-free theory; empty means it holds."""
    return check_axioms(translate(p).model, Theory.GSO_MINUS)
