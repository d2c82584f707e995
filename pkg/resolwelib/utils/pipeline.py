""" Expand, select and train: the three stage pipeline and its reports """

from dataclasses import dataclass, field, replace
import itertools
import logging
import os
import time
from typing import Callable, Iterable, List, Optional

from ..const import ResolweConstants
from ..errors import StreamExhaustedError
from ..grammar import expand, read_grammar
from ..learning import LearnConfig, ResolweTrainer, WeightedModel, predict
from ..logic import SchemaSet, SubgraphDatabase
from ..metrics import RankedPrediction, evaluation_report
from ..selection import ResolweSelector, SelectedFormula
from .stream import read_stream

logger = logging.getLogger(__name__)

Observer = Callable[[object, str, int], None]


@dataclass(frozen=True)
class PipelineConfig:
    grammar_path: str
    stream_path: str
    output_dir: str
    k2: int = ResolweConstants.DEFAULT_K2
    theta: float = ResolweConstants.DEFAULT_THETA
    mode: str = ResolweConstants.MODE_RESOLWE
    learn: LearnConfig = field(default_factory=LearnConfig)
    rng_seed: int = ResolweConstants.DEFAULT_SEED
    test_stream_path: Optional[str] = None

    def __post_init__(self):
        if int(self.k2) != self.k2 or self.k2 < 1:
            raise ValueError(
                ResolweConstants.EXCEPTION_MESSAGE_CONFIG_VALUE.format("k2", self.k2)
            )
        if not 0.0 <= self.theta <= 1.0:
            raise ValueError(
                ResolweConstants.EXCEPTION_MESSAGE_CONFIG_VALUE.format("theta", self.theta)
            )
        if self.mode not in ResolweConstants.MODES:
            raise ValueError(
                ResolweConstants.EXCEPTION_MESSAGE_CONFIG_VALUE.format("mode", self.mode)
            )

    @property
    def learn_config(self) -> LearnConfig:
        """ The learning settings, seeded from the pipeline seed """
        return replace(self.learn, rng_seed=self.rng_seed)

    def output(self, name):
        return os.path.join(self.output_dir, name)


@dataclass
class PipelineResult:
    model: WeightedModel
    candidates: int
    selected: List[SelectedFormula] = field(default_factory=list)
    step2_seconds: Optional[float] = None
    step3_seconds: float = 0.0
    trained_subgraphs: int = 0
    rankings: Optional[List[RankedPrediction]] = None

    @property
    def total_seconds(self):
        return (self.step2_seconds or 0.0) + self.step3_seconds


def write_lines(path, lines: Iterable[str]):
    with open(path, "w", encoding=ResolweConstants.ENCODING, newline="\n") as f:
        for line in lines:
            f.write(line)
            f.write("\n")


def timing_lines(mode, step2_seconds: Optional[float], step3_seconds: float) -> List[str]:
    """ Step 2 and step 3 wall clock minutes, step 2 is '-' when it was skipped """
    step2 = "-" if step2_seconds is None else f"{step2_seconds / 60:.6f}"
    total = ((step2_seconds or 0.0) + step3_seconds) / 60
    return [
        "\t".join(("mode", "step2_minutes", "step3_minutes", "total_minutes")),
        "\t".join((mode, step2, f"{step3_seconds / 60:.6f}", f"{total:.6f}")),
    ]


def prediction_lines(rankings: Iterable[RankedPrediction]) -> List[str]:
    lines = ["\t".join(("subgraph", "rank", "atom", "score", "label"))]
    for ordinal, ranking in enumerate(rankings):
        for rank, entry in enumerate(ranking.entries, start=1):
            lines.append(
                "\t".join(
                    (
                        str(ordinal),
                        str(rank),
                        entry.atom,
                        repr(entry.score),
                        str(int(entry.label)),
                    )
                )
            )
    return lines


def evaluate_model(
    model: WeightedModel, stream: Iterable[SubgraphDatabase]
) -> List[RankedPrediction]:
    """ Rankings of the query atoms of every subgraph that hides a predicate """
    rankings = []
    for ordinal, db in enumerate(stream):
        if not db.query_predicates:
            logger.debug("Subgraph %d hides nothing and is not evaluated", ordinal)
            continue
        rankings.append(predict(model, db, ordinal=ordinal))
    logger.info("Predicted %d subgraphs", len(rankings))
    return rankings


def write_evaluation(output_dir, rankings: List[RankedPrediction]):
    """ predictions.tsv and evaluation.tsv under an output directory """
    write_lines(
        os.path.join(output_dir, ResolweConstants.PREDICTIONS_FILE),
        prediction_lines(rankings),
    )
    write_lines(
        os.path.join(output_dir, ResolweConstants.EVALUATION_REPORT),
        evaluation_report(rankings),
    )


def _train(
    cfg: PipelineConfig,
    schemas: SchemaSet,
    model: WeightedModel,
    first,
    skip: int,
    observer: Optional[Observer] = None,
) -> ResolweTrainer:
    """Train along the stream. The first pass continues an already opened
    stream, later passes reopen the file and skip the selection subgraphs"""

    def streams():
        yield first
        while True:
            yield itertools.islice(read_stream(cfg.stream_path, schemas), skip, None)

    opened = streams()
    trainer = ResolweTrainer(model, cfg.learn_config)
    if observer is not None:
        trainer.watch(observer)
    trainer.train(next(opened))
    if trainer.subgraphs == 0:
        raise StreamExhaustedError(
            ResolweConstants.EXCEPTION_MESSAGE_NOTHING_TO_TRAIN.format(skip)
        )
    for _ in range(cfg.learn_config.passes - 1):
        trainer.train(next(opened))
    return trainer


def run_pipeline(
    cfg: PipelineConfig, observer: Optional[Observer] = None
) -> PipelineResult:
    """Resolwe mode expands the grammar, selects on the first k2 subgraphs, adds
    the prior clauses and trains on the rest of the stream. skipSelection mode
    trains every connective variant of every candidate on the whole stream. The
    observer watches the selector and the trainer"""
    grammar = read_grammar(cfg.grammar_path)
    schemas = grammar.schemas
    os.makedirs(cfg.output_dir, exist_ok=True)
    learn_config = cfg.learn_config
    stream = read_stream(cfg.stream_path, schemas)

    if cfg.mode == ResolweConstants.MODE_RESOLWE:
        candidates = expand(grammar)
        start = time.monotonic()
        selector = ResolweSelector(candidates)
        if observer is not None:
            selector.watch(observer)
        selector.run(stream, cfg.k2)
        selected = selector.select(cfg.theta)
        model = WeightedModel.from_selection(schemas, selected, learn_config)
        model = model.with_priors()
        step2 = time.monotonic() - start
        write_lines(
            cfg.output(ResolweConstants.SELECTION_REPORT),
            selector.report_lines(cfg.theta),
        )
        skip = cfg.k2
    else:
        candidates = expand(grammar, all_variants=True)
        selected = []
        model = WeightedModel.from_candidates(schemas, candidates, learn_config)
        model = model.with_priors()
        step2 = None
        skip = 0

    start = time.monotonic()
    trainer = _train(cfg, schemas, model, stream, skip, observer)
    step3 = time.monotonic() - start
    model = trainer.model
    model.write(cfg.output(ResolweConstants.MODEL_FILE))
    write_lines(
        cfg.output(ResolweConstants.TIMING_REPORT), timing_lines(cfg.mode, step2, step3)
    )
    logger.info(
        "%s: %d candidates, %d clauses, step 2 %ss, step 3 %.3fs",
        cfg.mode,
        len(candidates),
        len(model),
        "-" if step2 is None else f"{step2:.3f}",
        step3,
    )

    result = PipelineResult(
        model, len(candidates), selected, step2, step3, trainer.subgraphs
    )
    if cfg.test_stream_path is not None:
        result.rankings = evaluate_model(
            model, read_stream(cfg.test_stream_path, schemas)
        )
        write_evaluation(cfg.output_dir, result.rankings)
    return result
