""" Per-subgraph statistics and their accumulation across the stream """

from dataclasses import dataclass, field
import logging
from typing import List, Optional, Tuple

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SubgraphStats:
    """Truth counts of a candidate's target literals over the groundings its
    evidence part selects in one subgraph. `cond_true[k]` and `cond_denom[k]` are
    only kept for formulas with two or more target literals"""

    selected_count: int
    joint_true: int
    cond_true: Tuple[int, ...] = ()
    cond_denom: Tuple[int, ...] = ()

    @property
    def joint_prob(self) -> Optional[float]:
        """ Fraction of selected groundings with every target literal true """
        if self.selected_count == 0:
            return None
        return self.joint_true / self.selected_count

    @property
    def cond_prob(self) -> Tuple[Optional[float], ...]:
        """ Per k, fraction with Q_k true among groundings with all other Q true """
        return tuple(
            None if denom == 0 else true / denom
            for true, denom in zip(self.cond_true, self.cond_denom)
        )


@dataclass(frozen=True)
class FormulaStats:
    """Sums of per-subgraph probabilities and the number of subgraphs that
    contributed to each, for the joint statistic and each conditional"""

    joint_sum: float = 0.0
    joint_count: int = 0
    cond_sums: Tuple[float, ...] = ()
    cond_counts: Tuple[int, ...] = ()

    @staticmethod
    def empty(targets: int) -> "FormulaStats":
        width = targets if targets >= 2 else 0
        return FormulaStats(0.0, 0, (0.0,) * width, (0,) * width)

    @property
    def joint_average(self) -> Optional[float]:
        if self.joint_count == 0:
            return None
        return self.joint_sum / self.joint_count

    @property
    def cond_averages(self) -> Tuple[Optional[float], ...]:
        return tuple(
            None if count == 0 else total / count
            for total, count in zip(self.cond_sums, self.cond_counts)
        )

    def merge(self, stats: SubgraphStats) -> "FormulaStats":
        """ Add the probabilities present in one subgraph's statistics """
        joint_sum, joint_count = self.joint_sum, self.joint_count
        joint = stats.joint_prob
        if joint is not None:
            joint_sum += joint
            joint_count += 1
        cond_sums: List[float] = list(self.cond_sums)
        cond_counts: List[int] = list(self.cond_counts)
        for index, prob in enumerate(stats.cond_prob):
            if prob is not None:
                cond_sums[index] += prob
                cond_counts[index] += 1
        return FormulaStats(joint_sum, joint_count, tuple(cond_sums), tuple(cond_counts))

    def combine(self, other: "FormulaStats") -> "FormulaStats":
        """ Field-wise sum of two accumulators of the same candidate """
        return FormulaStats(
            self.joint_sum + other.joint_sum,
            self.joint_count + other.joint_count,
            tuple(a + b for a, b in zip(self.cond_sums, other.cond_sums)),
            tuple(a + b for a, b in zip(self.cond_counts, other.cond_counts)),
        )


def merge_stats(acc: FormulaStats, stats: SubgraphStats) -> FormulaStats:
    return acc.merge(stats)


@dataclass
class _Tally:
    """ Mutable counters while one subgraph is evaluated """

    targets: int
    selected: int = 0
    joint: int = 0
    cond_true: List[int] = field(default_factory=list)
    cond_denom: List[int] = field(default_factory=list)

    def __post_init__(self):
        if self.targets >= 2:
            self.cond_true = [0] * self.targets
            self.cond_denom = [0] * self.targets

    def add(self, truth: List[bool]):
        self.selected += 1
        false_count = truth.count(False)
        if false_count == 0:
            self.joint += 1
        if self.targets < 2 or false_count > 1:
            return
        for index, value in enumerate(truth):
            if false_count - (not value) == 0:
                self.cond_denom[index] += 1
                if value:
                    self.cond_true[index] += 1

    def freeze(self) -> SubgraphStats:
        return SubgraphStats(
            self.selected, self.joint, tuple(self.cond_true), tuple(self.cond_denom)
        )
