"""The seven-occurrence example and the finite model that satisfies the theory.

Occurrence ``o1`` precedes ``o2`` and ``o3``, which must not be simultaneous
but may happen in either order; both precede ``o4``, which precedes
``o5``, ``o6`` and ``o7``. ``o5`` is not later than ``o6`` and ``o7``, and
``o6`` and ``o7`` are each not later than the other, so they always share a
step. The specification has exactly four extensions (``a`` to ``d``); the
observations ``a`` and ``d`` together are complete for it.
"""
from __future__ import annotations

from typing import Dict

from gsokit.core.spec import GsoSpec
from gsokit.core.universe import Universe
from gsokit.graph import relgraph
from gsokit.graph.relgraph import Digraph
from gsokit.model.checker import GsoModel
from gsokit.order.observations import RankingStructure, from_ranking, parse_steps, step_graph

OCCURRENCES = tuple(f"o{i}" for i in range(1, 8))

_COVER = (("o1", "o2"), ("o1", "o3"), ("o2", "o4"), ("o3", "o4"), ("o4", "o5"), ("o4", "o6"), ("o4", "o7"))
_RESIDUAL = (("o5", "o6"), ("o5", "o7"), ("o6", "o7"), ("o7", "o6"))
_SLACK = (("o2", "o3"), ("o3", "o2"))

_STEPS = {
    "a": "{o1}{o2}{o3}{o4}{o5,o6,o7}",
    "b": "{o1}{o3}{o2}{o4}{o5,o6,o7}",
    "c": "{o1}{o2}{o3}{o4}{o5}{o6,o7}",
    "d": "{o1}{o3}{o2}{o4}{o5}{o6,o7}",
}


def example1_spec() -> GsoSpec:
    """The seven-occurrence specification (17 earlier-than edges)."""
    base = relgraph.transitive_closure(Digraph(frozenset(OCCURRENCES), frozenset(_COVER)))
    nlt = base.edges | frozenset(_RESIDUAL)
    ns = relgraph.comparability(base).edges | frozenset(_SLACK)
    return GsoSpec(frozenset(OCCURRENCES), base.edges, nlt, ns)


def example_rankings() -> Dict[str, RankingStructure]:
    """The four extensions of :func:`example1_spec`, keyed ``a`` to ``d``."""
    return {name: parse_steps(text) for name, text in _STEPS.items()}


def witness_model() -> GsoModel:
    """A finite model of the full theory.

    Events ``e1`` to ``e7`` each have the one occurrence ``o1`` to ``o7``;
    the observations ``ob_a`` and ``ob_d`` observe the extensions ``a`` and
    ``d``.
    """
    spec = example1_spec()
    universe = Universe.build(
        events=[f"e{i}" for i in range(1, 8)],
        occurrences=OCCURRENCES,
        observations=["ob_a", "ob_d"],
        occurrence_of={f"o{i}": f"e{i}" for i in range(1, 8)},
    )
    rankings = example_rankings()
    before, simult = set(), set()
    for name in ("a", "d"):
        obs = f"ob_{name}"
        before.update((x, y, obs) for x, y in from_ranking(rankings[name]).order)
        simult.update((x, y, obs) for x, y in step_graph(rankings[name]).edges)
    return GsoModel(universe, spec, frozenset(before), frozenset(simult))
