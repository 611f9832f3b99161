"""Stratified orders, ranking structures and step sequences.

An observation of a concurrent run is a stratified order: a strict partial
order in which "neither before the other" (simultaneity) plus identity is
an equivalence. Its classes are the steps of the run and they are totally
ordered, so every stratified order is determined by a ranking structure,
i.e. a sequence of disjoint nonempty steps. Textually a ranking is written
as a step sequence such as ``{o1,o2}{o3}{o4,o5,o6}``.

Two relations derived from one order are used by extensions:

- ``frown_order``: pairs ``(x, y)``, ``x != y``, with ``y`` not before ``x``;
- ``sym``: the order in either direction (pairs observed nonsimultaneously).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import permutations
from typing import FrozenSet, Iterable, List, Tuple, Union

from gsokit.core.report import AxiomId, ReportBuilder, ValidationReport
from gsokit.errors import DuplicateOccurrence, MalformedRanking, NotStratified, ParseError
from gsokit.graph.relgraph import Digraph, UGraph

Pair = Tuple[str, str]


@dataclass(frozen=True)
class StratOrder:
    """A relation on a carrier, meant to be a stratified order.

    The order is kept raw so that invalid projections of a model can be
    represented and reported by :func:`is_stratified`.
    """

    carrier: FrozenSet[str]
    order: FrozenSet[Pair]

    @classmethod
    def build(cls, carrier: Iterable[str], order: Iterable[Pair] = ()) -> "StratOrder":
        order = frozenset(tuple(p) for p in order)
        carrier = frozenset(carrier) | {x for p in order for x in p}
        return cls(frozenset(carrier), order)

    @classmethod
    def of(cls, graph: Digraph) -> "StratOrder":
        return cls(graph.vertices, graph.edges)

    @property
    def graph(self) -> Digraph:
        return Digraph(self.carrier, self.order)

    def before(self, a: str, b: str) -> bool:
        return (a, b) in self.order

    def simultaneous(self, a: str, b: str) -> bool:
        return a != b and (a, b) not in self.order and (b, a) not in self.order


@dataclass(frozen=True)
class RankingStructure:
    """A sequence of disjoint nonempty steps; earlier steps come first."""

    blocks: Tuple[FrozenSet[str], ...]

    def __post_init__(self) -> None:
        blocks = tuple(frozenset(b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        seen = set()
        for block in blocks:
            if not block:
                raise MalformedRanking("steps must be nonempty")
            for x in sorted(block):
                if x in seen:
                    raise DuplicateOccurrence(x)
                seen.add(x)

    @classmethod
    def of(cls, *blocks: Iterable[str]) -> "RankingStructure":
        return cls(tuple(frozenset(b) for b in blocks))

    @property
    def carrier(self) -> FrozenSet[str]:
        return frozenset(x for block in self.blocks for x in block)

    def sort_key(self) -> Tuple[int, Tuple[Tuple[str, ...], ...]]:
        """Canonical order: fewer steps first, then step members lexicographically."""
        return (len(self.blocks), tuple(tuple(sorted(b)) for b in self.blocks))

    def rank(self) -> dict:
        """Map every member to the index of its step."""
        return {x: i for i, block in enumerate(self.blocks) for x in block}

    def __str__(self) -> str:
        return render_steps(self)


def _simultaneous(s: StratOrder, a: str, b: str) -> bool:
    return s.simultaneous(a, b)


def is_stratified(rel: Union[StratOrder, Digraph], verbose: bool = False) -> ValidationReport:
    """Check that a relation is a stratified order (axioms O3, O4, O6).

    Args:
        rel: The relation with its carrier.
        verbose: Keep every witness instead of the first per axiom.

    Returns:
        The first violating tuple per axiom plus a count, or all of them
        when ``verbose`` is set.
    """
    s = StratOrder.of(rel) if isinstance(rel, Digraph) else rel
    builder = ReportBuilder(first_only=not verbose)
    carrier = sorted(s.carrier)
    for a, b in sorted(s.order):
        if a == b:
            builder.add(AxiomId.O3, a)
    for a, b in sorted(s.order):
        for c in carrier:
            if (b, c) in s.order and (a, c) not in s.order:
                builder.add(AxiomId.O4, a, b, c)
    for a in carrier:
        for b in carrier:
            if not _simultaneous(s, a, b):
                continue
            for c in carrier:
                if a != c and _simultaneous(s, b, c) and not _simultaneous(s, a, c):
                    builder.add(AxiomId.O6, a, b, c)
    return builder.build()


def simultaneity(s: StratOrder) -> UGraph:
    """The simultaneity graph: distinct pairs ordered in neither direction."""
    edges = {(a, b) for a, b in permutations(s.carrier, 2) if _simultaneous(s, a, b)}
    return UGraph(s.carrier, frozenset(edges))


def _classes(s: StratOrder) -> List[FrozenSet[str]]:
    classes = []
    placed = set()
    for x in sorted(s.carrier):
        if x in placed:
            continue
        block = frozenset({x} | {y for y in s.carrier if _simultaneous(s, x, y)})
        placed |= block
        classes.append(block)
    return classes


def check_observation_propositions(s: StratOrder) -> ValidationReport:
    """Check that simultaneity classes behave as steps.

    ``PROP4``: simultaneity plus identity is an equivalence (the symmetric
    and transitive parts; reflexivity holds by construction). ``PROP5``: of
    two distinct classes, one lies entirely before the other.
    """
    builder = ReportBuilder()
    carrier = sorted(s.carrier)
    for a in carrier:
        for b in carrier:
            if _simultaneous(s, a, b) != _simultaneous(s, b, a):
                builder.add("PROP4", a, b)
            for c in carrier:
                if a != c and _simultaneous(s, a, b) and _simultaneous(s, b, c) and not _simultaneous(s, a, c):
                    builder.add("PROP4", a, b, c)
    classes = _classes(s)
    for i, first in enumerate(classes):
        for second in classes[i + 1:]:
            forward = all((a, b) in s.order for a in first for b in second)
            backward = all((b, a) in s.order for a in first for b in second)
            if not (forward or backward):
                builder.add("PROP5", min(first), min(second))
    return builder.build()


def to_ranking(s: StratOrder) -> RankingStructure:
    """Return the unique ranking structure of a stratified order.

    Steps are the simultaneity classes, ordered so that a step precedes
    another when all its members are before all members of the other.

    Raises:
        NotStratified: If ``s`` is not a stratified order.
    """
    report = is_stratified(s)
    if not report.ok:
        raise NotStratified(f"not a stratified order: {', '.join(report.lines())}", report)
    predecessors = {x: sum(1 for y in s.carrier if (y, x) in s.order) for x in s.carrier}
    # members of one step have the same number of predecessors
    blocks = sorted(_classes(s), key=lambda block: predecessors[min(block)])
    return RankingStructure(tuple(blocks))


def from_ranking(r: RankingStructure) -> StratOrder:
    """The stratified order of a ranking: earlier steps before later ones."""
    order = set()
    for i, first in enumerate(r.blocks):
        for second in r.blocks[i + 1:]:
            order.update((a, b) for a in first for b in second)
    return StratOrder(r.carrier, frozenset(order))


def step_graph(r: RankingStructure) -> UGraph:
    """The union of the complete graphs on the steps of ``r``."""
    edges = {pair for block in r.blocks for pair in permutations(block, 2)}
    return UGraph(r.carrier, frozenset(edges))


def graph_gi(r: RankingStructure) -> Digraph:
    """The order of ``r`` plus every ordered pair inside one step."""
    return Digraph(r.carrier, from_ranking(r).order | step_graph(r).edges)


def frown_order(s: StratOrder) -> Digraph:
    """Pairs ``(x, y)`` of distinct elements where ``y`` is not before ``x``."""
    edges = {(x, y) for x, y in permutations(s.carrier, 2) if (y, x) not in s.order}
    return Digraph(s.carrier, frozenset(edges))


OCCURRENCE_ID = re.compile(r"[A-Za-z0-9_]+")

_TOKEN = re.compile(rf"\s*(?:(?P<id>{OCCURRENCE_ID.pattern})|(?P<sym>[{{}},])|(?P<bad>\S))")


def _tokens(text: str):
    pos = 0
    while True:
        match = _TOKEN.match(text, pos)
        if match is None:
            return
        if match.group("bad") is not None:
            raise ParseError(f"unexpected character {match.group('bad')!r}", match.start("bad"))
        kind = "id" if match.group("id") is not None else match.group("sym")
        yield kind, match.group(kind if kind == "id" else "sym"), match.start(kind if kind == "id" else "sym")
        pos = match.end()


def parse_steps(text: str) -> RankingStructure:
    """Parse a step sequence such as ``{o1}{o2,o3}``.

    Whitespace between tokens is ignored; ids match ``[A-Za-z0-9_]+``. Empty
    or blank text is the empty sequence of the empty carrier.

    Raises:
        ParseError: With the offending position.
        DuplicateOccurrence: If an id appears twice.
    """
    tokens = list(_tokens(text))
    if not tokens:
        return RankingStructure(())
    tokens.append(("end", "", len(text)))
    blocks: List[FrozenSet[str]] = []
    seen = set()
    i = 0

    def expect(kind: str) -> Tuple[str, str, int]:
        nonlocal i
        token = tokens[i]
        if token[0] != kind:
            found = "end of input" if token[0] == "end" else repr(token[1])
            raise ParseError(f"expected {kind!r}, found {found}", token[2])
        i += 1
        return token

    while True:
        expect("{")
        members = []
        while True:
            _, name, _ = expect("id")
            if name in seen:
                raise DuplicateOccurrence(name)
            seen.add(name)
            members.append(name)
            if tokens[i][0] == ",":
                i += 1
                continue
            expect("}")
            break
        blocks.append(frozenset(members))
        if tokens[i][0] == "end":
            break
    return RankingStructure(tuple(blocks))


def render_steps(r: RankingStructure) -> str:
    """Canonical text of a ranking: members sorted inside each step."""
    return "".join("{" + ",".join(sorted(block)) + "}" for block in r.blocks)
