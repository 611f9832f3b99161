"""Isomorphism of small finite models.

Two models are isomorphic when a sort-preserving bijection of their
elements maps every relation of one onto the same relation of the other.
The search assigns elements one at a time, restricting each element's
candidates to elements with the same signature (sort membership and the
number of tuples it occupies at each position of each relation) and
rejecting an assignment as soon as a fully mapped tuple is missing from
the target.
"""
from __future__ import annotations

import logging
from collections import Counter, defaultdict
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from gsokit.config import resolve
from gsokit.errors import SizeLimit
from gsokit.model.checker import GsoModel

logger = logging.getLogger(__name__)

Row = Tuple[str, ...]


def _relations(m: GsoModel) -> List[FrozenSet[Row]]:
    s = m.spec
    return [
        m.universe.occurrence_of,
        s.earlier_than,
        s.not_later_than,
        s.nonsimultaneous,
        m.observed_before,
        m.observed_simult,
    ]


def _sorts(m: GsoModel) -> List[FrozenSet[str]]:
    u = m.universe
    return [u.events, u.occurrences, u.observations, u.others]


def _signatures(m: GsoModel) -> Dict[str, Tuple]:
    domain = m.domain
    sorts = _sorts(m)
    counts: Dict[str, Counter] = {x: Counter() for x in domain}
    for r, rows in enumerate(_relations(m)):
        for row in rows:
            for i, x in enumerate(row):
                counts[x][(r, i)] += 1
    return {
        x: (tuple(x in sort for sort in sorts), tuple(sorted(counts[x].items())))
        for x in domain
    }


def _check_size(m: GsoModel, limit: int) -> None:
    for sort in _sorts(m):
        if len(sort) > limit:
            raise SizeLimit(f"a sort of {len(sort)} elements exceeds the isomorphism limit {limit}")


def isomorphic(m1: GsoModel, m2: GsoModel, limit: Optional[int] = None) -> bool:
    """Decide whether two finite models are isomorphic.

    Args:
        m1: A model.
        m2: Another model.
        limit: Largest accepted sort; None uses the configured default.

    Raises:
        SizeLimit: If a sort of either model exceeds ``limit``.
    """
    limit = resolve(limit, "isomorphism_limit")
    _check_size(m1, limit)
    _check_size(m2, limit)
    rels1, rels2 = _relations(m1), _relations(m2)
    if [len(r) for r in rels1] != [len(r) for r in rels2]:
        return False
    sig1, sig2 = _signatures(m1), _signatures(m2)
    if Counter(sig1.values()) != Counter(sig2.values()):
        return False

    by_signature: Dict[Tuple, List[str]] = defaultdict(list)
    for y in sorted(sig2):
        by_signature[sig2[y]].append(y)
    # most constrained elements first
    order: Sequence[str] = sorted(sig1, key=lambda x: (len(by_signature[sig1[x]]), x))
    rows_of: Dict[str, List[Tuple[int, Row]]] = defaultdict(list)
    for r, rows in enumerate(rels1):
        for row in rows:
            for x in set(row):
                rows_of[x].append((r, row))

    mapping: Dict[str, str] = {}
    used = set()
    steps = 0

    def consistent(x: str) -> bool:
        for r, row in rows_of[x]:
            if all(z in mapping for z in row):
                if tuple(mapping[z] for z in row) not in rels2[r]:
                    return False
        return True

    def search(i: int) -> bool:
        nonlocal steps
        if i == len(order):
            return True
        x = order[i]
        for y in by_signature[sig1[x]]:
            if y in used:
                continue
            steps += 1
            mapping[x] = y
            used.add(y)
            if consistent(x) and search(i + 1):
                return True
            del mapping[x]
            used.discard(y)
        return False

    found = search(0)
    logger.debug("isomorphism search tried %d assignments", steps)
    return found
