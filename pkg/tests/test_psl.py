"""Tests for the PSL-core fragment and its translation."""
import pytest
from hypothesis import given, settings

from gsokit.errors import InvalidPslModel
from gsokit.io.documents import load_document
from gsokit.model.checker import project_observation
from gsokit.order.observations import is_stratified, render_steps, to_ranking
from gsokit.psl.interpretation import (
    PslCoreModel,
    check_psl_model,
    observers,
    sightings,
    translate,
    verify_interpretation,
)
from strategies import psl_models


def two_observers(x1, x2, extra=()):
    """Activities ``a`` and ``b``, timepoints ``t1 < t2``; ``x1``/``x2`` map activities to timepoints."""
    participates = [("x1", f"{a}_x1", t) for a, t in x1.items()]
    participates += [("x2", f"{a}_x2", t) for a, t in x2.items()]
    participates += list(extra)
    return PslCoreModel.chain(
        ["t1", "t2"],
        activities=["a", "b"],
        activity_occurrences=["a_x1", "b_x1", "a_x2", "b_x2"],
        objects=["x1", "x2", "y"],
        occurrence_of=[("a_x1", "a"), ("b_x1", "b"), ("a_x2", "a"), ("b_x2", "b")],
        participates_in=participates,
        exists_at=[(x, t) for x in ("x1", "x2") for t in ("t1", "t2")],
    )


def test_agreeing_observers(fixtures_dir):
    p = load_document(fixtures_dir / "two_observer.psl.json")
    assert check_psl_model(p).ok
    result = translate(p)
    spec = result.model.spec
    assert spec.earlier_than == {("a", "b")}
    assert spec.not_later_than == {("a", "b")}
    assert spec.nonsimultaneous == {("a", "b"), ("b", "a")}
    assert result.observer_map == {"x1": "x1", "x2": "x2"}
    assert result.model.observed_before == {("a", "b", "x1"), ("a", "b", "x2")}
    assert render_steps(to_ranking(project_observation(result.model, "x1"))) == "{a}{b}"
    assert verify_interpretation(p).ok


def test_disagreeing_observers():
    p = two_observers({"a": "t1", "b": "t2"}, {"a": "t2", "b": "t1"})
    spec = translate(p).model.spec
    assert spec.earlier_than == set()
    assert spec.not_later_than == set()
    assert spec.nonsimultaneous == {("a", "b"), ("b", "a")}
    assert verify_interpretation(p).ok


def test_simultaneous_sighting():
    p = two_observers({"a": "t1", "b": "t1"}, {"a": "t1", "b": "t2"})
    model = translate(p).model
    assert model.observed_simult == {("a", "b", "x1"), ("b", "a", "x1")}
    assert model.spec.not_later_than == {("a", "b")}
    assert model.spec.earlier_than == set()
    assert model.spec.nonsimultaneous == set()
    assert verify_interpretation(p).ok


def test_bystanders_are_not_observers():
    p = two_observers({"a": "t1", "b": "t2"}, {"a": "t1", "b": "t2"}, extra=[("y", "a_x1", "t1")])
    assert observers(p) == {"x1", "x2"}
    assert sightings(p, "y") == {"a": "t1", "b": None}


def test_seeing_an_activity_twice_disqualifies():
    p = two_observers({"a": "t1", "b": "t2"}, {"a": "t1", "b": "t2"}, extra=[("x1", "a_x2", "t2")])
    assert sightings(p, "x1")["a"] is None
    assert observers(p) == {"x2"}


def test_observer_must_exist_throughout():
    p = two_observers({"a": "t1", "b": "t2"}, {"a": "t1", "b": "t2"})
    p = PslCoreModel(
        p.activities, p.activity_occurrences, p.timepoints, p.objects, p.occurrence_of,
        p.participates_in, p.before, p.exists_at - {("x2", "t2")},
    )
    assert observers(p) == {"x1"}


def test_no_observers_gives_empty_relations():
    p = two_observers({"a": "t1"}, {"b": "t2"})
    result = translate(p)
    assert observers(p) == frozenset()
    assert result.observer_map == {}
    assert result.model.spec.relations() == (frozenset(), frozenset(), frozenset())
    assert verify_interpretation(p).axioms() == ["O9", "O10"]


def test_malformed_models_are_rejected():
    p = PslCoreModel.build(activities=["a"], timepoints=["t1", "t2"], objects=["a"])
    report = check_psl_model(p)
    assert report.witnesses("PSL_SORTS") == [("a",)]
    assert report.witnesses("PSL_BEFORE_TOTAL") == [("t1", "t2")]
    with pytest.raises(InvalidPslModel) as info:
        translate(p)
    assert info.value.report.axioms() == ["PSL_BEFORE_TOTAL", "PSL_SORTS"]


def test_occurrence_conditions():
    p = PslCoreModel.build(
        activities=["a", "b"],
        activity_occurrences=["o", "p"],
        occurrence_of=[("o", "a"), ("o", "b")],
        before=[("t", "t")],
    )
    report = check_psl_model(p)
    assert report.witnesses("PSL_OCCURRENCE_SINGLE") == [("o",)]
    assert report.witnesses("PSL_OCCURRENCE_TOTAL") == [("p",)]
    assert report.witnesses("PSL_BEFORE_SORTS") == [("t", "t")]
    assert report.witnesses("PSL_BEFORE_IRREFLEXIVE") == [("t",)]


@pytest.mark.property_based
@given(psl_models())
@settings(max_examples=150, deadline=None)
def test_translation_is_a_model(p):
    assert check_psl_model(p).ok
    assert observers(p) == {x for x in p.objects if x.startswith("x")}
    assert verify_interpretation(p).ok


@pytest.mark.property_based
@given(psl_models())
@settings(max_examples=100, deadline=None)
def test_each_observer_sees_a_stratified_order(p):
    model = translate(p).model
    for x in sorted(model.universe.observations):
        view = project_observation(model, x)
        assert is_stratified(view).ok
        seen = sightings(p, x)
        assert all((seen[a], seen[b]) in p.before for a, b in view.order)
