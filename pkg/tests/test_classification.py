"""Tests for classification data and model isomorphism."""
import pytest
from hypothesis import given, settings

from gsokit.core.spec import decompose_spec
from gsokit.core.universe import Universe, event_partition
from gsokit.errors import InvalidClassificationData, NotAModel, SizeLimit
from gsokit.model.checker import GsoModel, check_axioms
from gsokit.model.classification import ClassificationData, build_model, check_classification, classify
from gsokit.model.isomorphism import isomorphic
from gsokit.order.observations import from_ranking, parse_steps, step_graph
from strategies import classification_data, perturbed_models


def rename(m, f):
    """Apply the element renaming ``f`` to every sort and relation of ``m``."""
    u, s = m.universe, m.spec

    def rows(rel):
        return [tuple(f(x) for x in row) for row in rel]

    universe = Universe.build(
        events=map(f, u.events),
        occurrences=map(f, u.occurrences),
        observations=map(f, u.observations),
        occurrence_of=rows(u.occurrence_of),
        others=map(f, u.others),
    )
    return GsoModel.build(
        universe,
        rows(s.earlier_than),
        rows(s.not_later_than),
        rows(s.nonsimultaneous),
        rows(m.observed_before),
        rows(m.observed_simult),
    )


def observed(m, name, ranking):
    before = {(a, b, name) for a, b in from_ranking(ranking).order}
    simult = {(a, b, name) for a, b in step_graph(ranking).edges}
    return before, simult


def test_classify_the_witness(witness, example_spec, rankings):
    d = classify(witness)
    assert d.event_partition == {frozenset({f"o{i}"}) for i in range(1, 8)}
    assert d.decomposition == decompose_spec(example_spec)
    assert d.ranking_family == {"ob_a": rankings["a"], "ob_d": rankings["d"]}
    assert check_classification(d).ok


def test_build_model_inverts_classify(witness):
    rebuilt = build_model(classify(witness))
    assert check_axioms(rebuilt).ok
    assert sorted(rebuilt.universe.events) == [f"e_o{i}" for i in range(1, 8)]
    assert isomorphic(rebuilt, witness)


def test_incomplete_model_is_not_classified(witness):
    with pytest.raises(NotAModel) as info:
        classify(witness.with_observations({"ob_a"}))
    assert info.value.axiom == "O10"


def test_single_ranking_is_not_enough(witness, rankings):
    d = classify(witness)
    data = ClassificationData(d.event_partition, d.decomposition, {"ob_a": rankings["a"]})
    report = check_classification(data)
    assert report.axioms() == ["CLASS3_NLT"]
    assert report.witnesses("CLASS3_NLT") == [("o2", "o3"), ("o6", "o5"), ("o7", "o5")]
    with pytest.raises(InvalidClassificationData) as info:
        build_model(data)
    assert info.value.condition == "CLASS3_NLT"


def test_empty_family_intersects_to_everything(witness):
    d = classify(witness)
    data = ClassificationData(d.event_partition, d.decomposition, {})
    assert {"CLASS3_NLT", "CLASS3_NS"} == set(check_classification(data).axioms())


def test_ranking_over_other_occurrences(witness):
    d = classify(witness)
    data = ClassificationData(d.event_partition, d.decomposition, {"ob": parse_steps("{o1}")})
    assert check_classification(data).axioms() == ["RANKING_CARRIER"]


def test_observation_named_like_an_occurrence(witness, rankings):
    d = classify(witness)
    data = ClassificationData(d.event_partition, d.decomposition, {"o1": rankings["a"], "ob_d": rankings["d"]})
    assert check_classification(data).witnesses("SORTS_DISJOINT") == [("o1",)]


def test_events_may_share_occurrences(witness):
    d = classify(witness)
    merged = frozenset({frozenset({"o6", "o7"})} | {b for b in d.event_partition if not b & {"o6", "o7"}})
    m = build_model(ClassificationData(merged, d.decomposition, d.ranking_family))
    assert check_axioms(m).ok
    assert len(m.universe.events) == 6
    assert classify(m).event_partition == merged


def test_renamed_model_is_isomorphic(witness):
    assert isomorphic(witness, rename(witness, lambda x: f"z_{x}"))


def test_different_observation_is_not_isomorphic(witness, rankings):
    before_d, simult_d = observed(witness, "ob_d", rankings["d"])
    before_b, simult_b = observed(witness, "ob_a", rankings["b"])
    other = GsoModel(witness.universe, witness.spec, frozenset(before_d | before_b), frozenset(simult_d | simult_b))
    assert not isomorphic(witness, other)


def test_swapping_occurrences_is_detected(witness):
    swap = {"o2": "o3", "o3": "o2"}
    same = rename(witness, lambda x: swap.get(x, x))
    assert isomorphic(witness, same)
    narrowed = witness.with_observations({"ob_a", "ob_d"})
    assert isomorphic(narrowed, witness)
    assert not isomorphic(witness.with_observations({"ob_a"}), witness.with_observations({"ob_d"}))


def test_isomorphism_size_limit(witness):
    with pytest.raises(SizeLimit):
        isomorphic(witness, witness, limit=3)


@pytest.mark.property_based
@given(classification_data())
@settings(max_examples=100, deadline=None)
def test_classification_round_trip(d):
    assert check_classification(d).ok
    m = build_model(d)
    assert check_axioms(m).ok
    assert classify(m) == d
    assert isomorphic(build_model(classify(m)), m)


@pytest.mark.property_based
@given(perturbed_models())
@settings(max_examples=100, deadline=None)
def test_every_model_is_classified(m):
    if not check_axioms(m).ok:
        with pytest.raises(NotAModel):
            classify(m)
        return
    rebuilt = build_model(classify(m))
    assert rebuilt.spec == m.spec
    assert (rebuilt.observed_before, rebuilt.observed_simult) == (m.observed_before, m.observed_simult)
    assert event_partition(rebuilt.universe) == event_partition(m.universe)
    assert rebuilt.universe.observations == m.universe.observations
