""" End to end runs of the expand, select and train pipeline """

import os
import tracemalloc

import numpy as np
import pytest
from scipy.stats import ttest_rel

from builders import planted_setup
from resolwelib import (
    LearnConfig,
    PipelineConfig,
    ResolweSelector,
    StreamExhaustedError,
    auc_scores,
    expand,
    format_formula,
    read_grammar,
    read_stream,
    run_pipeline,
)
from resolwelib.const import ResolweConstants

PLANTED = "e(v1) ^ q(v1)"


def sources(result):
    return {format_formula(f) for f in result.model.sources}


@pytest.fixture
def planted(tmp_path):
    return planted_setup(str(tmp_path / "data"), test_background_rate=0.0)


def test_selection_keeps_the_planted_rule(planted, tmp_path):
    grammar_path, train_path, _ = planted
    out = str(tmp_path / "out")
    result = run_pipeline(PipelineConfig(grammar_path, train_path, out))
    assert result.candidates == 10
    assert sources(result) == {PLANTED}
    assert [clause.is_prior for clause in result.model.clauses] == [False, True]
    assert result.trained_subgraphs == 40
    for name in (
        ResolweConstants.MODEL_FILE,
        ResolweConstants.SELECTION_REPORT,
        ResolweConstants.TIMING_REPORT,
    ):
        assert os.path.exists(os.path.join(out, name))


def test_skip_selection_trains_every_variant(planted, tmp_path):
    grammar_path, train_path, _ = planted
    cfg = PipelineConfig(
        grammar_path,
        train_path,
        str(tmp_path / "out"),
        mode=ResolweConstants.MODE_SKIP_SELECTION,
    )
    result = run_pipeline(cfg)
    expected = {
        format_formula(f) for f in expand(read_grammar(grammar_path), all_variants=True)
    }
    assert len(expected) == 10
    assert sources(result) == expected
    assert result.step2_seconds is None
    assert result.trained_subgraphs == 70
    assert not os.path.exists(
        os.path.join(cfg.output_dir, ResolweConstants.SELECTION_REPORT)
    )


def test_selected_formulas_are_skip_candidates(planted, tmp_path):
    grammar_path, train_path, _ = planted
    selected = run_pipeline(
        PipelineConfig(grammar_path, train_path, str(tmp_path / "a"), theta=0.1)
    )
    skipped = run_pipeline(
        PipelineConfig(
            grammar_path,
            train_path,
            str(tmp_path / "b"),
            mode=ResolweConstants.MODE_SKIP_SELECTION,
        )
    )
    assert sources(selected) <= sources(skipped)


def test_same_seed_same_model_file(planted, tmp_path):
    grammar_path, train_path, _ = planted
    texts = []
    for name in ("first", "second"):
        out = str(tmp_path / name)
        run_pipeline(
            PipelineConfig(
                grammar_path, train_path, out, rng_seed=3, learn=LearnConfig(passes=2)
            )
        )
        with open(os.path.join(out, ResolweConstants.MODEL_FILE), "rb") as f:
            texts.append(f.read())
    assert texts[0] == texts[1]
    assert b"rng_seed=3" in texts[0]


def test_observer_sees_every_streamed_subgraph(planted, tmp_path):
    grammar_path, train_path, _ = planted
    seen = {}

    def observer(sender, event, detail):
        assert event == "subgraph"
        seen.setdefault(type(sender).__name__, []).append(detail)

    cfg = PipelineConfig(grammar_path, train_path, str(tmp_path / "out"))
    run_pipeline(cfg, observer=observer)
    assert seen == {
        "ResolweSelector": list(range(1, 31)),
        "ResolweTrainer": list(range(1, 41)),
    }


def test_later_passes_skip_the_selection_subgraphs(planted, tmp_path):
    grammar_path, train_path, _ = planted
    result = run_pipeline(
        PipelineConfig(
            grammar_path, train_path, str(tmp_path / "out"), learn=LearnConfig(passes=3)
        )
    )
    assert result.trained_subgraphs == 3 * 40


def test_short_streams_raise(planted, tmp_path):
    grammar_path, train_path, _ = planted
    for name, k2 in (("a", 71), ("b", 70)):
        cfg = PipelineConfig(grammar_path, train_path, str(tmp_path / name), k2=k2)
        with pytest.raises(StreamExhaustedError):
            run_pipeline(cfg)


def test_timing_report(planted, tmp_path):
    grammar_path, train_path, _ = planted
    for mode in ResolweConstants.MODES:
        out = str(tmp_path / mode)
        result = run_pipeline(PipelineConfig(grammar_path, train_path, out, mode=mode))
        path = os.path.join(out, ResolweConstants.TIMING_REPORT)
        with open(path, encoding="utf-8") as f:
            header, row = f.read().splitlines()
        assert header.split("\t") == [
            "mode",
            "step2_minutes",
            "step3_minutes",
            "total_minutes",
        ]
        name, step2, step3, total = row.split("\t")
        assert name == mode
        if mode == ResolweConstants.MODE_RESOLWE:
            assert float(step2) >= 0.0
        else:
            assert step2 == "-"
        assert float(total) == pytest.approx(result.total_seconds / 60, abs=1e-6)
        assert float(step3) <= float(total) + 1e-6


def test_held_out_evaluation(planted, tmp_path):
    grammar_path, train_path, test_path = planted
    out = str(tmp_path / "out")
    result = run_pipeline(
        PipelineConfig(grammar_path, train_path, out, test_stream_path=test_path)
    )
    assert len(result.rankings) == 10
    assert all(len(ranking) == 12 for ranking in result.rankings)
    _, auc = auc_scores(result.rankings)
    assert auc >= 0.9
    path = os.path.join(out, ResolweConstants.PREDICTIONS_FILE)
    with open(path, encoding="utf-8") as f:
        assert len(f.read().splitlines()) == 1 + 10 * 12
    path = os.path.join(out, ResolweConstants.EVALUATION_REPORT)
    with open(path, encoding="utf-8") as f:
        assert f.read().splitlines()[-1].startswith("all\t120\t")


def peak_selection_memory(grammar_path, stream_path, k2):
    grammar = read_grammar(grammar_path)
    selector = ResolweSelector(expand(grammar))
    tracemalloc.start()
    try:
        selector.run(read_stream(stream_path, grammar.schemas), k2)
        _, peak = tracemalloc.get_traced_memory()
    finally:
        tracemalloc.stop()
    return peak


def test_selection_memory_does_not_grow_with_the_stream(tmp_path):
    grammar_path, short_path, _ = planted_setup(str(tmp_path / "short"), subgraphs=30)
    _, long_path, _ = planted_setup(str(tmp_path / "long"), subgraphs=300)
    peak_selection_memory(grammar_path, short_path, 30)
    base = peak_selection_memory(grammar_path, short_path, 30)
    assert peak_selection_memory(grammar_path, long_path, 300) <= 1.5 * base


@pytest.mark.parametrize(
    "changes",
    [{"k2": 0}, {"theta": 1.5}, {"mode": "everything"}],
)
def test_pipeline_config_validation(changes):
    with pytest.raises(ValueError):
        PipelineConfig("g", "s", "o", **changes)


@pytest.mark.slow
def test_planted_rule_recovery_over_seeds(tmp_path):
    recovered = 0
    for seed in range(40):
        root = str(tmp_path / str(seed))
        grammar_path, train_path, _ = planted_setup(
            os.path.join(root, "data"), seed=seed
        )
        result = run_pipeline(
            PipelineConfig(grammar_path, train_path, os.path.join(root, "out"))
        )
        recovered += sources(result) == {PLANTED}
    assert recovered >= 38


def _directional_runs(tmp_path, seeds):
    planted_names = tuple(f"e{i}" for i in range(1, 6))
    noise = tuple(f"n{i}" for i in range(1, 21))
    aucs = {mode: [] for mode in ResolweConstants.MODES}
    seconds = {mode: [] for mode in ResolweConstants.MODES}
    for seed in seeds:
        root = str(tmp_path / str(seed))
        grammar_path, train_path, test_path = planted_setup(
            os.path.join(root, "data"),
            seed=seed,
            evidence=planted_names,
            noise=noise,
            subgraphs=200,
            test_subgraphs=20,
            constants=20,
            evidence_density=0.05,
            noise_density=0.2,
        )
        for mode in ResolweConstants.MODES:
            result = run_pipeline(
                PipelineConfig(
                    grammar_path,
                    train_path,
                    os.path.join(root, mode),
                    mode=mode,
                    rng_seed=seed,
                    test_stream_path=test_path,
                )
            )
            aucs[mode].append(auc_scores(result.rankings)[1])
            seconds[mode].append(result.total_seconds)
    return aucs, seconds


@pytest.mark.slow
def test_selection_improves_held_out_auc(tmp_path):
    aucs, _ = _directional_runs(tmp_path, range(20))
    resolwe = np.array(aucs[ResolweConstants.MODE_RESOLWE])
    skipped = np.array(aucs[ResolweConstants.MODE_SKIP_SELECTION])
    assert resolwe.mean() > skipped.mean()
    assert ttest_rel(resolwe, skipped, alternative="greater").pvalue < 0.01


@pytest.mark.slow
def test_selection_trains_faster(tmp_path):
    _, seconds = _directional_runs(tmp_path, range(20))
    faster = sum(
        a < b
        for a, b in zip(
            seconds[ResolweConstants.MODE_RESOLWE],
            seconds[ResolweConstants.MODE_SKIP_SELECTION],
        )
    )
    assert faster >= 18
