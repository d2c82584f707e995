""" Ranking evaluation: MAP and two readings of AUC-ROC """

from dataclasses import dataclass
import logging
import math
from typing import List, NamedTuple, Sequence, Tuple

import numpy as np
from scipy.stats import rankdata

logger = logging.getLogger(__name__)


class RankedEntry(NamedTuple):
    atom: str
    score: float
    label: bool


@dataclass(frozen=True)
class RankedPrediction:
    """Query atoms of one subgraph ordered by descending score, ties kept in
    their input order"""

    entries: Tuple[RankedEntry, ...]

    @staticmethod
    def from_scores(atoms, scores, labels) -> "RankedPrediction":
        rows = [
            RankedEntry(str(atom), float(score), bool(label))
            for atom, score, label in zip(atoms, scores, labels)
        ]
        order = sorted(range(len(rows)), key=lambda i: -rows[i].score)
        return RankedPrediction(tuple(rows[i] for i in order))

    @property
    def labels(self) -> List[bool]:
        return [entry.label for entry in self.entries]

    @property
    def scores(self) -> List[float]:
        return [entry.score for entry in self.entries]

    @property
    def positives(self):
        return sum(self.labels)

    @property
    def negatives(self):
        return len(self.entries) - self.positives

    def __len__(self):
        return len(self.entries)


def _mean(values: Sequence[float]) -> float:
    if not values:
        return math.nan
    return float(np.mean(values))


def average_precision(ranking: RankedPrediction) -> float:
    """ Mean over every rank r of the fraction of positives among the top r """
    labels = np.array(ranking.labels, dtype=float)
    ranks = np.arange(1, len(labels) + 1)
    return float(np.mean(np.cumsum(labels) / ranks))


def map_score(rankings: Sequence[RankedPrediction]) -> float:
    values = []
    for ordinal, ranking in enumerate(rankings):
        if not len(ranking):
            logger.warning("Ranking %d is empty and is left out of MAP", ordinal)
            continue
        values.append(average_precision(ranking))
    return _mean(values)


def ranked_true_negative_rate(ranking: RankedPrediction) -> float:
    """Mean over every rank r of the share of all negatives ranked strictly
    after r"""
    negatives = ranking.negatives
    labels = np.array(ranking.labels, dtype=bool)
    after = negatives - np.cumsum(~labels)
    return float(np.mean(after / negatives))


def mann_whitney_auc(ranking: RankedPrediction) -> float:
    """ Fraction of positive/negative pairs scored positive first, ties count half """
    labels = np.array(ranking.labels, dtype=bool)
    positives = int(labels.sum())
    negatives = len(labels) - positives
    ranks = rankdata(ranking.scores)
    return float(
        (ranks[labels].sum() - positives * (positives + 1) / 2)
        / (positives * negatives)
    )


def auc_scores(rankings: Sequence[RankedPrediction]) -> Tuple[float, float]:
    """(rank-literal AUC, Mann-Whitney AUC), each averaged over the rankings
    where it is defined"""
    literal, standard = [], []
    for ordinal, ranking in enumerate(rankings):
        if ranking.negatives == 0:
            logger.warning("Ranking %d has no negatives and is left out of AUC", ordinal)
            continue
        literal.append(ranked_true_negative_rate(ranking))
        if ranking.positives == 0:
            logger.warning(
                "Ranking %d has no positives and is left out of the standard AUC",
                ordinal,
            )
            continue
        standard.append(mann_whitney_auc(ranking))
    return _mean(literal), _mean(standard)


def _cell(value: float):
    return "-" if math.isnan(value) else f"{value:.6f}"


def evaluation_report(rankings: Sequence[RankedPrediction]) -> List[str]:
    """ Tab separated per-subgraph rows and an aggregate row """
    lines = ["\t".join(("subgraph", "atoms", "positives", "map", "rank_auc", "auc"))]
    for ordinal, ranking in enumerate(rankings):
        rank_auc, auc = auc_scores([ranking]) if len(ranking) else (math.nan, math.nan)
        average = map_score([ranking]) if len(ranking) else math.nan
        lines.append(
            "\t".join(
                (
                    str(ordinal),
                    str(len(ranking)),
                    str(ranking.positives),
                    _cell(average),
                    _cell(rank_auc),
                    _cell(auc),
                )
            )
        )
    rank_auc, auc = auc_scores(rankings)
    lines.append(
        "\t".join(
            (
                "all",
                str(sum(len(r) for r in rankings)),
                str(sum(r.positives for r in rankings)),
                _cell(map_score(rankings)),
                _cell(rank_auc),
                _cell(auc),
            )
        )
    )
    return lines
