""" The resolwe command line """

import json
import logging
import os

import pytest

from builders import planted_setup
from resolwelib import ResolweShell, SynthConfig, WeightedModel, read_stream
from resolwelib.__main__ import main
from resolwelib.const import ResolweConstants
from resolwelib.utils.shared_command import EXIT_ERROR, EXIT_OK, EXIT_USAGE


@pytest.fixture
def planted(tmp_path):
    return planted_setup(str(tmp_path / "data"), test_background_rate=0.0)


def read_lines(*parts):
    with open(os.path.join(*parts), encoding="utf-8") as f:
        return f.read().splitlines()


def test_expand_writes_candidates(planted, tmp_path, capsys):
    grammar_path, _, _ = planted
    out = str(tmp_path / "out")
    assert main(["expand", "--grammar", grammar_path, "--out", out]) == EXIT_OK
    lines = read_lines(out, ResolweConstants.CANDIDATES_FILE)
    assert len(lines) == 10
    assert "e(v1) ^ q(v1)" in lines
    assert "10 candidates" in capsys.readouterr().out


def test_missing_input_is_an_error(tmp_path):
    missing = str(tmp_path / "missing.grammar")
    assert main(["expand", "--grammar", missing, "--out", str(tmp_path)]) == EXIT_ERROR


@pytest.mark.parametrize(
    "argv",
    [
        ["expand"],
        ["nonsense"],
        ["pipeline", "--grammar", "g", "--stream", "s", "--out", "o", "--mode", "x"],
        ["select", "--grammar", "g", "--stream", "s", "--out", "o", "--k2", "many"],
    ],
)
def test_usage_errors(argv):
    assert main(argv) == EXIT_USAGE


def test_help_is_not_an_error(capsys):
    assert main(["expand", "--help"]) == EXIT_OK
    assert "--all-variants" in capsys.readouterr().out


def test_invalid_settings_fail(planted, tmp_path):
    grammar_path, train_path, _ = planted
    argv = ["pipeline", "--grammar", grammar_path, "--stream", train_path]
    argv += ["--out", str(tmp_path / "out"), "--theta", "1.5"]
    assert main(argv) == EXIT_ERROR


def test_pipeline_command(planted, tmp_path, capsys):
    grammar_path, train_path, test_path = planted
    out = str(tmp_path / "out")
    argv = ["pipeline", "--grammar", grammar_path, "--stream", train_path]
    argv += ["--out", out, "--test-stream", test_path, "--seed", "4", "--passes", "2"]
    assert main(argv) == EXIT_OK
    for name in (
        ResolweConstants.MODEL_FILE,
        ResolweConstants.SELECTION_REPORT,
        ResolweConstants.TIMING_REPORT,
        ResolweConstants.PREDICTIONS_FILE,
        ResolweConstants.EVALUATION_REPORT,
    ):
        assert os.path.exists(os.path.join(out, name))
    model = WeightedModel.read(os.path.join(out, ResolweConstants.MODEL_FILE))
    assert model.config.rng_seed == 4
    assert model.config.passes == 2
    printed = capsys.readouterr().out
    assert printed.startswith("resolwe: 10 candidates, 2 clauses")
    assert "MAP" in printed


def test_skip_selection_command(planted, tmp_path):
    grammar_path, train_path, _ = planted
    out = str(tmp_path / "out")
    argv = ["pipeline", "--grammar", grammar_path, "--stream", train_path]
    argv += ["--out", out, "--mode", ResolweConstants.MODE_SKIP_SELECTION]
    assert main(argv) == EXIT_OK
    timing = read_lines(out, ResolweConstants.TIMING_REPORT)
    assert timing[1].split("\t")[:2] == [ResolweConstants.MODE_SKIP_SELECTION, "-"]
    model = WeightedModel.read(os.path.join(out, ResolweConstants.MODEL_FILE))
    assert len(model) == 11


def test_select_learn_predict_eval(planted, tmp_path):
    grammar_path, train_path, test_path = planted
    selected, learned, evaluated = (str(tmp_path / name) for name in "sle")
    argv = ["select", "--grammar", grammar_path, "--stream", train_path]
    assert main(argv + ["--out", selected, "--k2", "20"]) == EXIT_OK
    report = read_lines(selected, ResolweConstants.SELECTION_REPORT)
    assert len(report) == 1 + 10
    model_path = os.path.join(selected, ResolweConstants.MODEL_FILE)
    assert list(WeightedModel.read(model_path).weights) == [0.0, 0.0]

    argv = ["learn", "--model", model_path, "--stream", train_path, "--out", learned]
    assert main(argv + ["--learning-rate", "0.05"]) == EXIT_OK
    trained = WeightedModel.read(os.path.join(learned, ResolweConstants.MODEL_FILE))
    assert trained.config.learning_rate == 0.05
    assert trained.weights[0] > 0.0

    trained_path = os.path.join(learned, ResolweConstants.MODEL_FILE)
    argv = ["--model", trained_path, "--stream", test_path, "--out", evaluated]
    assert main(["predict"] + argv) == EXIT_OK
    assert len(read_lines(evaluated, ResolweConstants.PREDICTIONS_FILE)) == 1 + 120
    assert main(["eval"] + argv) == EXIT_OK
    assert read_lines(evaluated, ResolweConstants.EVALUATION_REPORT)[-1].startswith(
        "all\t120\t"
    )


def test_synth_command(tmp_path):
    config_path = tmp_path / "synth.json"
    config_path.write_text(
        json.dumps(
            {
                "predicates": ["predicate e(t) evidence", "predicate q(t) target"],
                "planted_rules": [{"formula": "e(x) ^ q(x)", "probability": 0.9}],
                "densities": {"e": 0.2},
                "constants": {"t": 5},
            }
        ),
        encoding="utf-8",
    )
    out = str(tmp_path / "data")
    argv = ["synth", "--config", str(config_path), "--out", out]
    assert main(argv + ["--seed", "5", "--subgraphs", "3"]) == EXIT_OK
    schemas = SynthConfig.from_json(config_path).schemas
    stream = list(read_stream(os.path.join(out, ResolweConstants.STREAM_FILE), schemas))
    assert len(stream) == 3
    with open(os.path.join(out, ResolweConstants.MANIFEST_FILE), encoding="utf-8") as f:
        manifest = json.load(f)
    assert manifest["seed"] == 5


def test_loglevel(planted, tmp_path):
    grammar_path, _, _ = planted
    argv = ["--loglevel", "DEBUG", "expand", "--grammar", grammar_path]
    assert main(argv + ["--out", str(tmp_path)]) == EXIT_OK
    with ResolweShell(["loglevel nope"]) as shell:
        assert shell.status == EXIT_USAGE


def test_progress_is_logged(planted, tmp_path, caplog):
    grammar_path, train_path, _ = planted
    argv = ["--loglevel", "INFO", "pipeline", "--grammar", grammar_path]
    argv += ["--stream", train_path, "--out", str(tmp_path / "out")]
    with caplog.at_level(logging.INFO, logger="resolwelib.utils.shell"):
        assert main(argv) == EXIT_OK
    progress = [
        record.getMessage()
        for record in caplog.records
        if record.name == "resolwelib.utils.shell"
    ]
    assert progress == [
        "ResolweSelector: subgraph 10",
        "ResolweSelector: subgraph 20",
        "ResolweSelector: subgraph 30",
        "ResolweTrainer: subgraph 10",
        "ResolweTrainer: subgraph 20",
        "ResolweTrainer: subgraph 30",
        "ResolweTrainer: subgraph 40",
    ]
