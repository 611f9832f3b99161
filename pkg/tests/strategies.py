"""Hypothesis strategies for random order structures and models."""
from __future__ import annotations

from typing import Dict, FrozenSet, List

from hypothesis import assume
from hypothesis import strategies as st

from gsokit.core.spec import GsoSpec, SpecDecomposition, check_decomposition, decompose_spec
from gsokit.graph import relgraph
from gsokit.graph.relgraph import Digraph, UGraph
from gsokit.model.checker import GsoModel
from gsokit.model.classification import ClassificationData, build_model
from gsokit.order.extensions import reconstruct
from gsokit.order.observations import RankingStructure
from gsokit.psl.interpretation import PslCoreModel

NAMES = [f"o{i}" for i in range(1, 9)]


def carrier_of(n: int) -> FrozenSet[str]:
    return frozenset(NAMES[:n])


@st.composite
def dags(draw, min_nodes: int = 0, max_nodes: int = 6) -> Digraph:
    """Acyclic graphs: edges only go forward in a random vertex order."""
    n = draw(st.integers(min_nodes, max_nodes))
    order = draw(st.permutations([f"v{i}" for i in range(n)]))
    edges = set()
    for i in range(n):
        for j in range(i + 1, n):
            if draw(st.booleans()):
                edges.add((order[i], order[j]))
    return Digraph(frozenset(order), frozenset(edges))


@st.composite
def rankings(draw, carrier: FrozenSet[str]) -> RankingStructure:
    order = draw(st.permutations(sorted(carrier)))
    if not order:
        return RankingStructure(())
    cuts = draw(st.lists(st.booleans(), min_size=len(order) - 1, max_size=len(order) - 1))
    blocks: List[List[str]] = [[order[0]]]
    for x, cut in zip(order[1:], cuts):
        if cut:
            blocks.append([x])
        else:
            blocks[-1].append(x)
    return RankingStructure(tuple(frozenset(b) for b in blocks))


@st.composite
def families(draw, min_occurrences: int = 0, max_occurrences: int = 5, min_size: int = 1, max_size: int = 4):
    """A carrier and a list of rankings over it."""
    carrier = carrier_of(draw(st.integers(min_occurrences, max_occurrences)))
    members = draw(st.lists(rankings(carrier), min_size=min_size, max_size=max_size))
    return carrier, members


@st.composite
def valid_specs(draw, max_occurrences: int = 6) -> GsoSpec:
    """Specifications generated by intersecting a random observation family."""
    carrier, members = draw(families(max_occurrences=max_occurrences))
    ns, nlt, et = reconstruct(carrier, members)
    return GsoSpec(carrier, et.edges, nlt.edges, ns.edges)


@st.composite
def valid_decompositions(draw, max_occurrences: int = 5) -> SpecDecomposition:
    """A closed random DAG with a residual and a slack drawn from its free pairs.

    The residual is closed up with the base before the decomposition
    conditions are checked; draws that still fail them are rejected.
    """
    carrier = sorted(carrier_of(draw(st.integers(0, max_occurrences))))
    order = draw(st.permutations(carrier))
    forward = [(a, b) for i, a in enumerate(order) for b in order[i + 1:]]
    edges = draw(st.sets(st.sampled_from(forward))) if forward else set()
    base = relgraph.transitive_closure(Digraph(frozenset(carrier), frozenset(edges)))
    free = sorted(relgraph.incomparability(base).edges)
    picked = draw(st.sets(st.sampled_from(free), max_size=3)) if free else set()
    upper = relgraph.transitive_closure(Digraph(base.vertices, base.edges | picked))
    loose = relgraph.incomparability(upper).undirected_pairs()
    pairs = draw(st.sets(st.sampled_from(loose))) if loose else set()
    d = SpecDecomposition(
        base,
        relgraph.difference(upper, base),
        UGraph.from_pairs(sorted(pairs), vertices=carrier),
    )
    assume(check_decomposition(d).ok)
    return d


@st.composite
def relation_triples(draw, max_occurrences: int = 4) -> GsoSpec:
    """Arbitrary relation triples, valid or not, over a small carrier."""
    carrier = sorted(carrier_of(draw(st.integers(0, max_occurrences))))
    pairs = [(a, b) for a in carrier for b in carrier]
    pick = st.sets(st.sampled_from(pairs)) if pairs else st.just(set())
    return GsoSpec.build(carrier, draw(pick), draw(pick), draw(pick))


@st.composite
def classification_data(draw, max_occurrences: int = 5, max_observations: int = 3) -> ClassificationData:
    carrier = carrier_of(draw(st.integers(0, max_occurrences)))
    labels = draw(st.lists(st.integers(0, 4), min_size=len(carrier), max_size=len(carrier)))
    blocks: Dict[int, set] = {}
    for x, label in zip(sorted(carrier), labels):
        blocks.setdefault(label, set()).add(x)
    partition = frozenset(frozenset(b) for b in blocks.values())
    n_obs = draw(st.integers(1, max_observations))
    family = {f"ob{i}": draw(rankings(carrier)) for i in range(1, n_obs + 1)}
    ns, nlt, et = reconstruct(carrier, family.values())
    spec = GsoSpec(carrier, et.edges, nlt.edges, ns.edges)
    return ClassificationData(partition, decompose_spec(spec), family)


@st.composite
def perturbed_models(draw) -> GsoModel:
    """Models of the theory, sometimes with one observed or specified fact flipped."""
    model = build_model(draw(classification_data(max_occurrences=5, max_observations=3)))
    occurrences = sorted(model.universe.occurrences)
    observations = sorted(model.universe.observations)
    flip = draw(st.sampled_from(["none", "before", "simult", "nlt", "ns"]))
    if flip == "none" or not occurrences:
        return model
    a = draw(st.sampled_from(occurrences))
    b = draw(st.sampled_from(occurrences))
    o = draw(st.sampled_from(observations))
    if flip == "before":
        return GsoModel(model.universe, model.spec, model.observed_before ^ {(a, b, o)}, model.observed_simult)
    if flip == "simult":
        return GsoModel(model.universe, model.spec, model.observed_before, model.observed_simult ^ {(a, b, o)})
    s = model.spec
    if flip == "nlt":
        spec = GsoSpec(s.occurrences, s.earlier_than, s.not_later_than ^ {(a, b)}, s.nonsimultaneous)
    else:
        spec = GsoSpec(s.occurrences, s.earlier_than, s.not_later_than, s.nonsimultaneous ^ {(a, b), (b, a)})
    return GsoModel(model.universe, spec, model.observed_before, model.observed_simult)


@st.composite
def psl_models(draw, max_activities: int = 4, max_observers: int = 3, max_timepoints: int = 6) -> PslCoreModel:
    """Well-formed PSL-core models with at least one observer and one bystander."""
    activities = [f"a{i}" for i in range(1, draw(st.integers(1, max_activities)) + 1)]
    timepoints = [f"t{i}" for i in range(1, draw(st.integers(1, max_timepoints)) + 1)]
    watchers = [f"x{i}" for i in range(1, draw(st.integers(1, max_observers)) + 1)]
    occurrence_of, participates_in, exists_at = [], [], []
    for x in watchers:
        exists_at.extend((x, t) for t in timepoints)
        for a in activities:
            occ = f"{a}_{x}"
            occurrence_of.append((occ, a))
            participates_in.append((x, occ, draw(st.sampled_from(timepoints))))
    participates_in.append(("y", f"{activities[0]}_{watchers[0]}", draw(st.sampled_from(timepoints))))
    return PslCoreModel.chain(
        timepoints,
        activities=activities,
        activity_occurrences=[occ for occ, _ in occurrence_of],
        objects=watchers + ["y"],
        occurrence_of=occurrence_of,
        participates_in=participates_in,
        exists_at=exists_at,
    )
