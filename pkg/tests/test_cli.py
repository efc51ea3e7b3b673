import json

import pytest
import yaml
from click.testing import CliRunner

from conftest import fixture_path
from dataworth import assessment as am
from dataworth import catalog as cat
from dataworth.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


def write_answers(path, answers, dataset="demo"):
    catalog = cat.load_canonical()
    responses = {qid: am.Response(qid, value) for qid, value in answers.items()}
    am.save_answers(am.build_response_set(catalog, dataset, responses), path)
    return path


SMALL = {
    "data_layout.structure": "Structured",
    "data_volume.size": "LessThan500MB",
    "transformation.anonymized": "N",
}


def test_score_human_output(runner, tmp_path):
    answers = write_answers(tmp_path / "demo.answers", SMALL)
    result = runner.invoke(main, ["score", "--answers", str(answers)])
    assert result.exit_code == 0
    assert result.stdout.startswith("Dataset: demo")
    assert "Total: 1.5" in result.stdout
    assert result.stderr == ""


def test_score_machine_stdout_is_pure_json(runner, tmp_path):
    answers = write_answers(tmp_path / "demo.answers", SMALL)
    result = runner.invoke(
        main, ["score", "--answers", str(answers), "--format", "machine"]
    )
    assert result.exit_code == 0
    doc = json.loads(result.stdout)  # nothing but the document on stdout
    assert doc["kind"] == "value_report"
    assert doc["total"] == 1.5


def test_score_normalized_mode(runner, tmp_path):
    answers = write_answers(tmp_path / "demo.answers", SMALL)
    result = runner.invoke(
        main,
        ["score", "--answers", str(answers), "--mode", "normalized", "--format", "machine"],
    )
    assert result.exit_code == 0
    assert json.loads(result.stdout)["total"] == 0.5


def test_score_missing_file_is_io_error(runner, tmp_path):
    result = runner.invoke(main, ["score", "--answers", str(tmp_path / "absent.yaml")])
    assert result.exit_code == 2
    assert result.stderr.startswith("error: parse: ")
    assert result.stdout == ""


def test_score_inadmissible_answer_is_validation_error(runner, tmp_path):
    answers = write_answers(
        tmp_path / "bad.answers", {"data_layout.structure": "Cubist"}
    )
    result = runner.invoke(main, ["score", "--answers", str(answers)])
    assert result.exit_code == 1
    assert result.stderr.startswith("error: validation: ")


def test_score_mode_conflicts_with_weights_file(runner, tmp_path):
    answers = write_answers(tmp_path / "demo.answers", SMALL)
    weights = tmp_path / "weights.yaml"
    weights.write_text("mode: normalized\nequal: true\n")
    result = runner.invoke(
        main,
        ["score", "--answers", str(answers), "--weights", str(weights), "--mode", "raw"],
    )
    assert result.exit_code == 1
    assert "conflicts" in result.stderr


def test_compare_command(runner, tmp_path):
    a = write_answers(tmp_path / "a.answers", SMALL, dataset="alpha")
    b = write_answers(
        tmp_path / "b.answers", {"data_layout.structure": "Unstructured"}, dataset="beta"
    )
    result = runner.invoke(main, ["compare", str(a), str(b)])
    assert result.exit_code == 0
    assert "Winner: alpha" in result.stdout
    result = runner.invoke(main, ["compare", str(a)])
    assert result.exit_code == 1  # needs at least two


def test_whatif_command(runner, tmp_path):
    answers = write_answers(tmp_path / "demo.answers", SMALL)
    result = runner.invoke(
        main,
        [
            "whatif",
            "--answers",
            str(answers),
            "--set",
            "transformation.anonymized=Y",
            "--format",
            "machine",
        ],
    )
    assert result.exit_code == 0
    assert json.loads(result.stdout)["delta_total"] == 1


def test_whatif_unanswered_question(runner, tmp_path):
    answers = write_answers(tmp_path / "demo.answers", SMALL)
    result = runner.invoke(
        main,
        ["whatif", "--answers", str(answers), "--set", "data_age.currency=Latest"],
    )
    assert result.exit_code == 1
    assert "not answered" in result.stderr


def test_whatif_malformed_assignment(runner, tmp_path):
    answers = write_answers(tmp_path / "demo.answers", SMALL)
    result = runner.invoke(
        main, ["whatif", "--answers", str(answers), "--set", "no-equals-sign"]
    )
    assert result.exit_code == 1


def test_profile_writes_answers_file(runner, tmp_path):
    data = tmp_path / "t.csv"
    data.write_text("id,age\n1,30\n2,40\n")
    result = runner.invoke(main, ["profile", str(data)])
    assert result.exit_code == 0
    assert "Format: csv" in result.stdout
    out_path = tmp_path / "t.csv.answers"
    assert out_path.is_file()
    assert "answers written to" in result.stderr
    doc = yaml.safe_load(out_path.read_text())
    assert doc["answers"]["data_layout.structure"]["value"] == "Structured"
    assert doc["answers"]["data_layout.structure"]["provenance"] == "auto_profiler"


def test_profile_answers_out_override(runner, tmp_path):
    data = tmp_path / "t.csv"
    data.write_text("id\n1\n")
    out = tmp_path / "custom.answers"
    result = runner.invoke(main, ["profile", str(data), "--answers-out", str(out)])
    assert result.exit_code == 0
    assert out.is_file()


def test_profile_then_score_round_trip(runner, tmp_path):
    data = tmp_path / "t.csv"
    data.write_text("id,age\n1,30\n2,40\n")
    assert runner.invoke(main, ["profile", str(data)]).exit_code == 0
    result = runner.invoke(
        main,
        ["score", "--answers", str(tmp_path / "t.csv.answers"), "--format", "machine"],
    )
    assert result.exit_code == 0
    assert json.loads(result.stdout)["answered_count"] >= 3


def test_profile_missing_file(runner, tmp_path):
    result = runner.invoke(main, ["profile", str(tmp_path / "absent.csv")])
    assert result.exit_code == 2


def test_corpus_scan_and_rank(runner, tmp_path):
    root = tmp_path / "descriptors"
    root.mkdir()
    rows = [{"pii": "N"}] * 3 + [{"pii": "Y"}]
    for i, values in enumerate(rows):
        (root / f"d{i}.yaml").write_text(
            yaml.safe_dump({"id": f"ds-{i}", "source": "test", "values": values})
        )
    (root / "broken.yaml").write_text("id: [oops")

    export = tmp_path / "dist.tsv"
    result = runner.invoke(
        main, ["corpus", "scan", str(root), "--export", str(export)]
    )
    assert result.exit_code == 0
    assert "Corpus size: 4" in result.stdout
    assert "skipped" in result.stderr and "broken.yaml" in result.stderr
    assert export.is_file()

    result = runner.invoke(
        main, ["corpus", "rank", str(root), "--format", "machine"]
    )
    assert result.exit_code == 0
    doc = json.loads(result.stdout)
    assert doc["kind"] == "rank_priors"
    assert doc["priors"][0]["order"] == ["N", "Y"]
    assert doc["priors"][0]["scores"] == {"N": 1, "Y": 0}

    result = runner.invoke(
        main,
        ["corpus", "rank", str(root), "--override", "pii=Y,N", "--format", "machine"],
    )
    doc = json.loads(result.stdout)
    assert doc["priors"][0]["order"] == ["Y", "N"]
    assert doc["priors"][0]["provenance"] == "manual_override"

    result = runner.invoke(main, ["corpus", "rank", str(root), "--dimension", "nope"])
    assert result.exit_code == 1


def test_replay_mismatched_fixture_exits_one(runner):
    result = runner.invoke(main, ["replay", str(fixture_path("india_prisons"))])
    assert result.exit_code == 1
    assert "Match: no" in result.stdout
    assert "Engine sum: 40.75" in result.stdout
    assert "Printed total: 44.25" in result.stdout


def test_replay_consistent_fixture_exits_zero(runner, tmp_path):
    fixture = tmp_path / "consistent.tsv"
    fixture.write_text(
        "# dataset: tidy\n"
        "# printed_total: 2.5\n"
        "Data Layout\tWhat is the data structure?\tStructured\t1\n"
        "Data Volume\tWhat is the data size?\tLessThan500MB\t0.5\n"
        "Transformation\tIs it anonymized data?\tY\t1\n"
    )
    result = runner.invoke(main, ["replay", str(fixture)])
    assert result.exit_code == 0, result.output
    assert "Match: yes" in result.stdout
    assert "scored differently" not in result.stdout


def test_replay_machine_format(runner):
    result = runner.invoke(
        main, ["replay", str(fixture_path("enterprise_hr")), "--format", "machine"]
    )
    assert result.exit_code == 1
    doc = json.loads(result.stdout)
    assert doc["kind"] == "replay_verdict"
    assert doc["engine_sum"] == 47
    assert doc["printed_total"] == 45


def test_catalog_env_var_extends_catalog(runner, tmp_path):
    pack = tmp_path / "pack.yaml"
    cat.save_examples_pack(pack)
    extended = cat.with_examples_pack()
    responses = {
        "data_updation.frequent": am.Response("data_updation.frequent", "N")
    }
    answers = tmp_path / "packed.answers"
    am.save_answers(
        am.build_response_set(extended, "packed", responses), answers
    )
    # Without the extension the pack question is unknown.
    result = runner.invoke(main, ["score", "--answers", str(answers)])
    assert result.exit_code == 1
    # With it, the reversed binary scores N as 1.
    result = runner.invoke(
        main,
        ["score", "--answers", str(answers), "--format", "machine"],
        env={"DATAWORTH_CATALOG": str(pack)},
    )
    assert result.exit_code == 0, result.stderr
    assert json.loads(result.stdout)["total"] == 1


def test_unknown_question_suggestion_reaches_stderr(runner, tmp_path):
    answers = write_answers(
        tmp_path / "typo.answers", {"data_layout.structur": "Structured"}
    )
    result = runner.invoke(main, ["score", "--answers", str(answers)])
    assert result.exit_code == 1
    assert "data_layout.structure" in result.stderr


def test_version_flag(runner):
    result = runner.invoke(main, ["--version"])
    assert result.exit_code == 0
    assert "dataworth" in result.stdout
