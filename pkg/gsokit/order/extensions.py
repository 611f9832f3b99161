"""Stratified-order extensions of a specification.

An extension of a specification is an observation that respects it: every
nonsimultaneous pair is ordered one way or the other, and no pair required
to be not-later-than is observed the wrong way round. The set of all
extensions of a valid specification determines it: intersecting the
symmetric closures of the extensions gives back ``nonsimultaneous``,
intersecting their frown orders gives back ``not_later_than``, and
``earlier_than`` is the intersection of those two.

Enumeration builds step sequences one step at a time. A candidate next step
is pruned as soon as it would place an occurrence before one of its
not-later-than predecessors or put a nonsimultaneous pair into one step, so
every complete sequence produced is an extension.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple, Union

from gsokit.config import resolve
from gsokit.core.report import AxiomId, ReportBuilder, ValidationReport
from gsokit.core.spec import GsoSpec
from gsokit.errors import CarrierMismatch, CarrierTooLarge, CyclicInput, EmptyFamily
from gsokit.graph import relgraph
from gsokit.graph.relgraph import Digraph, UGraph
from gsokit.order.observations import RankingStructure, StratOrder, frown_order, from_ranking

logger = logging.getLogger(__name__)

Pair = Tuple[str, str]
Observation = Union[StratOrder, RankingStructure]


def _as_order(obs: Observation) -> StratOrder:
    return from_ranking(obs) if isinstance(obs, RankingStructure) else obs


@dataclass(frozen=True)
class ExtensionSet:
    """All extensions of ``spec``, canonically ordered and deduplicated."""

    spec: GsoSpec
    members: Tuple[RankingStructure, ...]

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[RankingStructure]:
        return iter(self.members)

    def __contains__(self, ranking: object) -> bool:
        return ranking in self.members


@dataclass(frozen=True)
class ExtensionCheck:
    """Outcome of :func:`is_extension`; truthy iff the order is an extension.

    Attributes:
        ok: Whether both extension conditions hold.
        condition: ``"O7"`` (a nonsimultaneous pair observed simultaneously)
            or ``"O8"`` (a not-later-than pair observed the wrong way round).
        witness: The offending spec pair.
    """

    ok: bool
    condition: Optional[str] = None
    witness: Optional[Pair] = None

    def __bool__(self) -> bool:
        return self.ok


def is_extension(spec: GsoSpec, obs: Observation) -> ExtensionCheck:
    """Test whether an observation is a stratified-order extension of ``spec``.

    Raises:
        CarrierMismatch: If the observation is not over the spec's occurrences.
    """
    s = _as_order(obs)
    if s.carrier != spec.occurrences:
        raise CarrierMismatch(
            f"observation carrier {sorted(s.carrier)} differs from occurrences {sorted(spec.occurrences)}"
        )
    for a, b in sorted(spec.nonsimultaneous):
        if (a, b) not in s.order and (b, a) not in s.order:
            return ExtensionCheck(False, str(AxiomId.O7), (a, b))
    for a, b in sorted(spec.not_later_than):
        if (b, a) in s.order:
            return ExtensionCheck(False, str(AxiomId.O8), (a, b))
    return ExtensionCheck(True)


def _steps(
    remaining: FrozenSet[str],
    placed: FrozenSet[str],
    predecessors: Dict[str, FrozenSet[str]],
    apart: FrozenSet[Pair],
) -> Iterator[List[FrozenSet[str]]]:
    if not remaining:
        yield []
        return
    pool = sorted(remaining)
    for size in range(1, len(pool) + 1):
        for members in combinations(pool, size):
            step = frozenset(members)
            if any(not predecessors[b] <= placed | step for b in step):
                continue
            if any((a, b) in apart for a, b in combinations(members, 2)):
                continue
            for rest in _steps(remaining - step, placed | step, predecessors, apart):
                yield [step] + rest


def enumerate_extensions(spec: GsoSpec, limit: Optional[int] = None) -> ExtensionSet:
    """List every stratified-order extension of ``spec``.

    Args:
        spec: A valid specification.
        limit: Largest carrier to enumerate; None uses the configured bound.

    Returns:
        The extensions as ranking structures in canonical order.

    Raises:
        CarrierTooLarge: If ``spec`` has more occurrences than ``limit``.
    """
    limit = resolve(limit, "enumeration_limit")
    carrier = spec.occurrences
    if len(carrier) > limit:
        raise CarrierTooLarge(len(carrier), limit)
    predecessors = {b: frozenset(a for a, c in spec.not_later_than if c == b) for b in carrier}
    apart = spec.nonsimultaneous | frozenset((b, a) for a, b in spec.nonsimultaneous)
    found = {RankingStructure(tuple(steps)) for steps in _steps(carrier, frozenset(), predecessors, apart)}
    members = tuple(sorted(found, key=RankingStructure.sort_key))
    logger.debug("enumerated %d extensions over %d occurrences", len(members), len(carrier))
    return ExtensionSet(spec, members)


def total_extensions(spec: GsoSpec, limit: Optional[int] = None) -> Tuple[RankingStructure, ...]:
    """The extensions of ``spec`` in which every step is a single occurrence."""
    return tuple(r for r in enumerate_extensions(spec, limit) if all(len(b) == 1 for b in r.blocks))


def poset_spec(order: Digraph) -> GsoSpec:
    """The specification whose extensions are the linear extensions of ``order``.

    Earlier-than and not-later-than are the transitive closure of ``order``
    and every distinct pair is nonsimultaneous.

    Raises:
        CyclicInput: If ``order`` has a directed cycle.
    """
    if not relgraph.is_acyclic(order):
        raise CyclicInput("a partial order must be acyclic")
    closed = relgraph.transitive_closure(order)
    return GsoSpec(order.vertices, closed.edges, closed.edges, relgraph.complete(order.vertices).edges)


def reconstruct(carrier: Iterable[str], family: Iterable[Observation]) -> Tuple[UGraph, Digraph, Digraph]:
    """Recover ``(nonsimultaneous, not_later_than, earlier_than)`` from observations.

    Args:
        carrier: The occurrences every member is over.
        family: Stratified orders or ranking structures.

    Returns:
        The intersection of the symmetric closures, the intersection of the
        frown orders, and the intersection of those two.

    Raises:
        EmptyFamily: If ``family`` is empty.
        CarrierMismatch: If a member is over a different carrier.
    """
    carrier = frozenset(carrier)
    orders = [_as_order(obs) for obs in family]
    if not orders:
        raise EmptyFamily("reconstruction needs at least one observation")
    for s in orders:
        if s.carrier != carrier:
            raise CarrierMismatch(f"observation carrier {sorted(s.carrier)} differs from {sorted(carrier)}")
    ns = relgraph.intersect_all(relgraph.sym(s.graph) for s in orders)
    nlt = relgraph.intersect_all(frown_order(s) for s in orders)
    et = relgraph.intersection(ns, nlt)
    return UGraph(ns.vertices, ns.edges), nlt, et


@dataclass(frozen=True)
class Requirement:
    """A fact some observation of a complete family must show.

    ``O9`` requirements ask for ``pair`` to be observed simultaneously;
    ``O10`` requirements ask for ``pair[1]`` to be observed before ``pair[0]``.
    """

    axiom: str
    pair: Pair

    def satisfied_by(self, obs: Observation) -> bool:
        s = _as_order(obs)
        a, b = self.pair
        if self.axiom == AxiomId.O9:
            return s.simultaneous(a, b)
        return (b, a) in s.order


def completeness_requirements(spec: GsoSpec) -> Tuple[Requirement, ...]:
    """Everything the spec leaves free and a complete family must therefore witness."""
    occurrences = sorted(spec.occurrences)
    ns, nlt = spec.nonsimultaneous, spec.not_later_than
    needs = [Requirement(str(AxiomId.O9), (a, b)) for a, b in combinations(occurrences, 2) if (a, b) not in ns]
    needs += [
        Requirement(str(AxiomId.O10), (a, b))
        for a in occurrences
        for b in occurrences
        if a != b and (a, b) not in nlt
    ]
    return tuple(needs)


def check_completeness(spec: GsoSpec, family: Iterable[Observation]) -> ValidationReport:
    """Report every requirement that no member of ``family`` witnesses."""
    orders = [_as_order(obs) for obs in family]
    builder = ReportBuilder()
    for need in completeness_requirements(spec):
        if not any(need.satisfied_by(s) for s in orders):
            builder.add(need.axiom, *need.pair)
    return builder.build()


def _minimal_covers(
    needs: FrozenSet[Requirement], covers: Dict[RankingStructure, FrozenSet[Requirement]]
) -> FrozenSet[FrozenSet[RankingStructure]]:
    found = set()

    def search(chosen: FrozenSet[RankingStructure], open_needs: FrozenSet[Requirement]) -> None:
        if not open_needs:
            found.add(chosen)
            return
        need = min(open_needs, key=lambda n: (n.axiom, n.pair))
        for member, covered in covers.items():
            if need in covered and member not in chosen:
                search(chosen | {member}, open_needs - covered)

    search(frozenset(), needs)

    def minimal(subset: FrozenSet[RankingStructure]) -> bool:
        for member in subset:
            rest = frozenset().union(*(covers[m] for m in subset - {member}))
            if needs <= rest:
                return False
        return True

    return frozenset(s for s in found if minimal(s))


def minimal_reconstructing_subsets(
    spec: GsoSpec, limit: Optional[int] = None
) -> FrozenSet[FrozenSet[RankingStructure]]:
    """All inclusion-minimal sets of extensions that reconstruct ``spec``.

    A set of extensions reconstructs the spec exactly when it witnesses
    every completeness requirement, so the answer is the set of minimal
    covers of those requirements.

    Raises:
        CarrierTooLarge: As :func:`enumerate_extensions`.
    """
    omega = enumerate_extensions(spec, limit)
    needs = frozenset(completeness_requirements(spec))
    if not needs:
        return frozenset(frozenset({r}) for r in omega)
    covers = {r: frozenset(n for n in needs if n.satisfied_by(r)) for r in omega}
    result = _minimal_covers(needs, covers)
    logger.debug("%d requirements, %d extensions, %d minimal subsets", len(needs), len(omega), len(result))
    return result
