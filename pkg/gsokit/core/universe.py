"""The universe sorts: events, event occurrences and observations.

Everything in a model is an event, an event occurrence or an observation,
the three sorts are disjoint, and every occurrence is an occurrence of
exactly one event. :func:`validate_universe` checks these five axioms.

Events form a partition of the occurrences once occurrence-free events are
dropped; :func:`event_partition` and :func:`universe_from_partition` move
between the two views.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple, Union

from gsokit.config import resolve
from gsokit.core.report import AxiomId, ReportBuilder, ValidationReport

Pair = Tuple[str, str]


@dataclass(frozen=True)
class Universe:
    """The sorted universe of a finite model.

    Attributes:
        events: The event sort.
        occurrences: The event occurrence sort.
        observations: The observation sort.
        occurrence_of: ``(occurrence, event)`` pairs.
        others: Elements of the universe that belong to no sort.
    """

    events: FrozenSet[str] = frozenset()
    occurrences: FrozenSet[str] = frozenset()
    observations: FrozenSet[str] = frozenset()
    occurrence_of: FrozenSet[Pair] = frozenset()
    others: FrozenSet[str] = frozenset()

    @classmethod
    def build(
        cls,
        events: Iterable[str] = (),
        occurrences: Iterable[str] = (),
        observations: Iterable[str] = (),
        occurrence_of: Union[Mapping[str, str], Iterable[Pair]] = (),
        others: Iterable[str] = (),
    ) -> "Universe":
        """Build a universe; ``occurrence_of`` may be a mapping or a pair list."""
        if isinstance(occurrence_of, Mapping):
            pairs = frozenset(occurrence_of.items())
        else:
            pairs = frozenset((o, e) for o, e in occurrence_of)
        return cls(frozenset(events), frozenset(occurrences), frozenset(observations), pairs, frozenset(others))

    @property
    def domain(self) -> FrozenSet[str]:
        """Every element of the universe, including elements only mentioned in ``occurrence_of``."""
        mentioned = {x for pair in self.occurrence_of for x in pair}
        return self.events | self.occurrences | self.observations | self.others | mentioned

    def event_of(self, occurrence: str) -> Optional[str]:
        """The event of ``occurrence``, or None if it has none or several."""
        events = [e for o, e in self.occurrence_of if o == occurrence]
        return events[0] if len(events) == 1 else None

    def fibers(self) -> Dict[str, FrozenSet[str]]:
        """Map every event to the set of its occurrences (possibly empty)."""
        fibers: Dict[str, set] = {e: set() for e in self.events}
        for o, e in self.occurrence_of:
            fibers.setdefault(e, set()).add(o)
        return {e: frozenset(os) for e, os in fibers.items()}


def validate_universe(u: Universe, cap: Optional[int] = None, domain: Iterable[str] = ()) -> ValidationReport:
    """Check the universe axioms E1 to E5.

    Args:
        u: The universe.
        cap: Witness cap; None uses the configured default.
        domain: Further elements of the structure, e.g. those only
            mentioned by other relations of a model.

    Returns:
        One violation per falsified axiom instance.
    """
    builder = ReportBuilder(cap=resolve(cap, "witness_cap"))
    sorts = (u.events, u.occurrences, u.observations)
    for x in sorted(u.domain | frozenset(domain)):
        if not any(x in s for s in sorts):
            builder.add(AxiomId.E1, x)
        if sum(x in s for s in sorts) > 1:
            builder.add(AxiomId.E2, x)
    for o, e in sorted(u.occurrence_of):
        if e not in u.events or o not in u.occurrences:
            builder.add(AxiomId.E3, o, e)
    for o in sorted(u.occurrences):
        if not any(e in u.events for x, e in u.occurrence_of if x == o):
            builder.add(AxiomId.E4, o)
    by_occurrence = defaultdict(set)
    for o, e in u.occurrence_of:
        by_occurrence[o].add(e)
    for o in sorted(by_occurrence):
        for e1 in sorted(by_occurrence[o]):
            for e2 in sorted(by_occurrence[o]):
                if e1 != e2:
                    builder.add(AxiomId.E5, o, e1, e2)
    return builder.build()


def event_partition(u: Universe) -> FrozenSet[FrozenSet[str]]:
    """The nonempty occurrence fibres of the events of ``u``."""
    return frozenset(block for block in u.fibers().values() if block)


def check_partition(partition: Iterable[FrozenSet[str]], occurrences: Iterable[str]) -> ValidationReport:
    """Check that ``partition`` splits ``occurrences`` into disjoint nonempty blocks."""
    occurrences = frozenset(occurrences)
    builder = ReportBuilder()
    seen: Dict[str, int] = defaultdict(int)
    for block in sorted(partition, key=sorted):
        if not block:
            builder.add("PARTITION_EMPTY_BLOCK")
        for x in block:
            seen[x] += 1
            if x not in occurrences:
                builder.add("PARTITION_FOREIGN", x)
    for x in sorted(seen):
        if seen[x] > 1:
            builder.add("PARTITION_OVERLAP", x)
    for x in sorted(occurrences - set(seen)):
        builder.add("PARTITION_UNCOVERED", x)
    return builder.build()


def fresh_event_ids(partition: Iterable[FrozenSet[str]], taken: Iterable[str]) -> Dict[FrozenSet[str], str]:
    """Name each block ``e_<least member>``, avoiding ids already taken."""
    taken = set(taken)
    names: Dict[FrozenSet[str], str] = {}
    for block in sorted(partition, key=lambda b: min(b)):
        base = f"e_{min(block)}"
        name, n = base, 1
        while name in taken:
            n += 1
            name = f"{base}_{n}"
        taken.add(name)
        names[block] = name
    return names


def universe_from_partition(
    partition: Iterable[FrozenSet[str]], observations: Iterable[str] = ()
) -> Universe:
    """Build a universe whose events are the blocks of ``partition``."""
    partition = [frozenset(b) for b in partition]
    observations = frozenset(observations)
    occurrences = frozenset(x for block in partition for x in block)
    names = fresh_event_ids(partition, occurrences | observations)
    occurrence_of: List[Pair] = [(x, names[block]) for block in partition for x in block]
    return Universe(frozenset(names.values()), occurrences, observations, frozenset(occurrence_of))
