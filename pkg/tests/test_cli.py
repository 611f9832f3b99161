"""Tests for the command line."""
import json

import pytest

from gsokit.cli.main import EXIT_INPUT, EXIT_INVALID, EXIT_LIMIT, EXIT_OK, main
from gsokit.core.spec import GsoSpec
from gsokit.io.documents import dump_document
from gsokit.model.witness import example1_spec, witness_model


@pytest.fixture
def run(capsys, fixtures_dir):
    """Run the command line with fixture names resolved; return (code, stdout)."""

    def _run(*argv):
        args = [str(fixtures_dir / a) if a.endswith(".json") else a for a in argv]
        code = main(args)
        return code, capsys.readouterr().out

    return _run


def test_valid_spec(run):
    assert run("validate", "example1.spec.json") == (EXIT_OK, "")


def test_invalid_spec_lists_violations(run):
    assert run("validate", "bad_gso4.spec.json") == (EXIT_INVALID, "GSO4 (o1)\n")


def test_validate_models(run):
    assert run("validate", "witness.model.json")[0] == EXIT_OK
    code, out = run("validate", "witness.model.json", "--theory", "gso-minus")
    assert code == EXIT_INVALID
    assert out.splitlines() == [f"EX1 (e{i})" for i in range(1, 8)]
    assert run("validate", "two_observer.psl.json")[0] == EXIT_OK


def test_spec_needs_the_spec_theory(run):
    assert run("validate", "example1.spec.json", "--theory", "gso")[0] == EXIT_INPUT


def test_extensions(run):
    code, out = run("extensions", "example1.spec.json")
    assert code == EXIT_OK
    assert out.splitlines() == [
        "{o1}{o2}{o3}{o4}{o5,o6,o7}",
        "{o1}{o3}{o2}{o4}{o5,o6,o7}",
        "{o1}{o2}{o3}{o4}{o5}{o6,o7}",
        "{o1}{o3}{o2}{o4}{o5}{o6,o7}",
    ]
    assert run("extensions", "empty2.spec.json") == (EXIT_OK, "{a,b}\n{a}{b}\n{b}{a}\n")


def test_extensions_of_the_empty_spec(run, tmp_path):
    spec = tmp_path / "empty.spec.json"
    spec.write_text(dump_document(GsoSpec.build([])), encoding="utf-8")
    assert run("extensions", str(spec)) == (EXIT_OK, "\n")
    code, out = run("extensions", str(spec), "--format", "json")
    assert code == EXIT_OK
    family = tmp_path / "empty.family.json"
    family.write_text(out, encoding="utf-8")
    assert run("reconstruct", str(family)) == (EXIT_OK, dump_document(GsoSpec.build([])))


def test_ids_that_break_step_text_are_rejected(run, tmp_path):
    spec = tmp_path / "commas.spec.json"
    spec.write_text(json.dumps({"kind": "spec", "occurrences": ["a,b", "c"]}), encoding="utf-8")
    assert run("extensions", str(spec)) == (EXIT_INPUT, "")


def test_extension_listing_limit(run):
    code, out = run("extensions", "example1.spec.json", "--limit", "2")
    assert code == EXIT_LIMIT
    assert len(out.splitlines()) == 2


def test_extensions_as_json(run):
    code, out = run("extensions", "example1.spec.json", "--format", "json")
    data = json.loads(out)
    assert data["kind"] == "observation-family"
    assert sorted(data["observations"]) == ["s1", "s2", "s3", "s4"]


def test_extension_bound_from_the_environment(run, monkeypatch):
    monkeypatch.setenv("GSOKIT_LIMIT", "3")
    assert run("extensions", "example1.spec.json")[0] == EXIT_LIMIT
    monkeypatch.setenv("GSOKIT_LIMIT", "many")
    assert run("extensions", "example1.spec.json")[0] == EXIT_INPUT


def test_extensions_of_an_invalid_spec(run):
    assert run("extensions", "bad_gso4.spec.json") == (EXIT_INVALID, "GSO4 (o1)\n")


def test_reconstruct(run):
    expected = dump_document(example1_spec())
    assert run("reconstruct", "observations_ad.json") == (EXIT_OK, expected)
    assert run("reconstruct", "observations_bc.json") == (EXIT_OK, expected)
    assert run("reconstruct", "observations_ad.json", "--carrier", "example1.spec.json") == (EXIT_OK, expected)


def test_reconstruct_mismatched_carriers(run):
    assert run("reconstruct", "chain.family.json", "mismatch.family.json")[0] == EXIT_INPUT


def test_classify_and_build_model(run, tmp_path):
    code, out = run("classify", "witness.model.json")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["kind"] == "classification"
    assert data["slack"] == [["o2", "o3"]]
    path = tmp_path / "witness.classification.json"
    path.write_text(out, encoding="utf-8")
    code, out = run("build-model", str(path))
    assert code == EXIT_OK
    model = tmp_path / "rebuilt.model.json"
    model.write_text(out, encoding="utf-8")
    assert run("validate", str(model))[0] == EXIT_OK


def test_classify_rejects_incomplete_models(run, tmp_path):
    data = json.loads(dump_document(witness_model().with_observations({"ob_a"})))
    path = tmp_path / "partial.model.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    code, out = run("classify", str(path))
    assert code == EXIT_INVALID
    assert out.splitlines()[0] == "O10 (o2,o3)"


def test_translate_psl(run):
    code, out = run("translate-psl", "two_observer.psl.json")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["observations"] == ["x1", "x2"]
    assert data["earlier_than"] == [["a", "b"]]


def test_export_dot(run):
    code, out = run("export-dot", "example1.spec.json", "--reduce")
    assert code == EXIT_OK
    assert out.startswith('digraph "et" {')
    assert out.count("->") == 7
    _, out = run("export-dot", "example1.spec.json", "--graph", "nlt")
    assert out.count("style=dashed") == 4
    _, out = run("export-dot", "example1.spec.json", "--graph", "ns-complement")
    assert [line.strip() for line in out.splitlines() if "--" in line] == [
        '"o5" -- "o6";',
        '"o5" -- "o7";',
        '"o6" -- "o7";',
    ]


def test_export_observation(run):
    _, out = run("export-dot", "chain.family.json")
    assert out.count("->") == 2
    assert run("export-dot", "observations_ad.json")[0] == EXIT_INPUT
    code, out = run("export-dot", "observations_ad.json", "--observation", "a")
    assert code == EXIT_OK
    assert out.count("->") == 6


def test_minimal_subsets(run):
    code, out = run("minimal-subsets", "example1.spec.json")
    assert code == EXIT_OK
    assert out.splitlines() == [
        "{o1}{o2}{o3}{o4}{o5,o6,o7} {o1}{o3}{o2}{o4}{o5}{o6,o7}",
        "{o1}{o3}{o2}{o4}{o5,o6,o7} {o1}{o2}{o3}{o4}{o5}{o6,o7}",
    ]


def test_witness_is_deterministic(run):
    first = run("witness")
    assert first == (EXIT_OK, dump_document(witness_model()))
    assert run("witness") == first


def test_usage_errors(run):
    assert run("validate", "missing.json")[0] == EXIT_INPUT
    assert run("frobnicate")[0] == EXIT_INPUT
    assert run("--version")[0] == EXIT_OK


def test_verbose_logging_keeps_stdout_clean(run):
    code, out = run("-vv", "validate", "bad_gso4.spec.json")
    assert (code, out) == (EXIT_INVALID, "GSO4 (o1)\n")
