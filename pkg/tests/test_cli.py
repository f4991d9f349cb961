import json
from pathlib import Path

import pytest

from scrumsight.cli import main


def run(capsys, *argv):
    capsys.readouterr()  # drop output from fixture setup
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture()
def synth_log(tmp_path):
    path = tmp_path / "log.jsonl"
    assert main(["synth", "--teams", "1", "--members", "5", "--sprints", "3",
                 "--seed", "7", "--out", str(path)]) == 0
    return path


def test_unknown_subcommand_is_usage_error(capsys):
    code, _, err = run(capsys, "frobnicate")
    assert code == 1


def test_unknown_flag_is_usage_error(capsys):
    code, _, _ = run(capsys, "validate", "--nope")
    assert code == 1


def test_validate_ok(capsys, synth_log):
    code, out, _ = run(capsys, "validate", "--log", str(synth_log))
    assert code == 0 and "valid" in out


def test_validate_names_offending_line(capsys, tmp_path, synth_log):
    lines = synth_log.read_text().splitlines()
    del lines[4]  # create an event_id gap at line 5
    bad = tmp_path / "bad.jsonl"
    bad.write_text("".join(line + "\n" for line in lines))
    code, _, err = run(capsys, "validate", "--log", str(bad))
    assert code == 2
    assert "line 5" in err


def test_validate_missing_file_is_io_error(capsys, tmp_path):
    code, _, _ = run(capsys, "validate", "--log", str(tmp_path / "nope.jsonl"))
    assert code == 3


def test_synth_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    args = ["synth", "--teams", "1", "--members", "5", "--sprints", "2", "--seed", "7"]
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()


def test_import_export_round_trip(tmp_path, capsys, synth_log):
    data_dir = tmp_path / "data"
    out = tmp_path / "exported.jsonl"
    assert main(["import", "--log", str(synth_log), "--data-dir", str(data_dir)]) == 0
    assert main(["export", "--data-dir", str(data_dir), "--out", str(out)]) == 0
    capsys.readouterr()
    assert out.read_bytes() == synth_log.read_bytes()


def test_export_without_import_is_io_error(tmp_path, capsys):
    code, _, _ = run(capsys, "export", "--data-dir", str(tmp_path / "empty"))
    assert code == 3


def test_report_skills_csv(capsys, synth_log):
    code, out, _ = run(capsys, "report", "skills", "--log", str(synth_log))
    assert code == 0
    assert out.splitlines()[0].startswith("participant,mu,alpha,beta,comp,")


def test_report_matches_library(tmp_path, capsys, synth_log):
    from scrumsight import cohort_metrics, compute_skill_report, read_log, replay
    from scrumsight.reporting import skill_report_to_csv

    code, out, _ = run(capsys, "report", "skills", "--log", str(synth_log))
    world = replay(read_log(synth_log))
    expected = skill_report_to_csv(compute_skill_report(cohort_metrics(world)))
    assert out == expected


def test_report_outputs_byte_identical(tmp_path, synth_log, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        assert main(["report", "heatmap-mood", "--log", str(synth_log),
                     "--out", str(path)]) == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()


def test_report_scatter_with_external(tmp_path, capsys, synth_log):
    from scrumsight import read_log, replay

    world = replay(read_log(synth_log))
    external = tmp_path / "ext.csv"
    external.write_text(
        "".join(f"{pid},{80 + i}\n" for i, pid in enumerate(sorted(world.participants)))
    )
    code, out, _ = run(
        capsys, "report", "scatter", "--log", str(synth_log),
        "--external", str(external), "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["x_label"] == "external_score"
    assert len(doc["top_flagged"]) == 3


def test_report_json_format(capsys, synth_log):
    code, out, _ = run(capsys, "report", "heatmap-collab", "--log", str(synth_log),
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["cols"] == [1, 2, 3]


def test_report_on_corrupt_log_exits_2(tmp_path, capsys, synth_log):
    bad = tmp_path / "bad.jsonl"
    bad.write_bytes(synth_log.read_bytes()[:-1])
    code, _, _ = run(capsys, "report", "skills", "--log", str(bad))
    assert code == 2
