""" Streaming formula selection by thresholded average probabilities """

from dataclasses import dataclass
import itertools
import logging
import time
from typing import Dict, Iterable, List, Mapping, Optional, Sequence

from ..const import ResolweConstants
from ..errors import StreamExhaustedError
from ..logic import (
    ConjunctiveFormula,
    Literal,
    SubgraphDatabase,
    canonicalize,
    format_formula,
    selected_bindings,
    split_formula,
)
from ..observable import Observable
from .stats import FormulaStats, SubgraphStats, _Tally

logger = logging.getLogger(__name__)


def evaluate_subgraph(f: ConjunctiveFormula, db: SubgraphDatabase) -> SubgraphStats:
    """Count, over the groundings selected by the formula's evidence literals, how
    often all target literals hold and how often each holds given the others"""
    _, targets = split_formula(f)
    tally = _Tally(len(targets))
    for binding in selected_bindings(db, f):
        tally.add(
            [db.contains(lit.ground_atom(binding)) != lit.negated for lit in targets]
        )
    return tally.freeze()


@dataclass(frozen=True)
class SelectedFormula:
    """A candidate that passed the threshold in one connective form. `consequent`
    is k of implication(k), None for the conjunction"""

    source: ConjunctiveFormula
    consequent: Optional[int]
    score: float

    @property
    def is_implication(self):
        return self.consequent is not None

    @property
    def form(self):
        if self.consequent is None:
            return "conjunction"
        return f"implication({self.consequent})"

    @property
    def formula(self) -> ConjunctiveFormula:
        """ The selected form, an implication reads E ^ (others => Q_k) """
        if self.consequent is None:
            return self.source
        return canonicalize(self.source.with_consequent(self.consequent))


@dataclass(frozen=True)
class ResolvedFormula:
    """ A learnable conjunction and the weight sign its rewriting suggests """

    formula: ConjunctiveFormula
    hint: str


def finalize_selection(
    stats: Mapping[ConjunctiveFormula, FormulaStats], theta: float
) -> List[SelectedFormula]:
    """Keep a form when its average is strictly above theta: the joint average
    for a conjunction, the average conditional of Q_k for implication(k).
    Declared forms are only tested as declared; a resolvable conjunction is
    tested as the conjunction and as every implication(k). A statistic no
    subgraph contributed to fails"""
    selected = []
    for source in sorted(stats, key=format_formula):
        acc = stats[source]
        if source.is_implication:
            position = source.consequent_position
            average = acc.cond_averages[position - 1]
            if average is not None and average > theta:
                selected.append(SelectedFormula(source, position, average))
            continue
        joint = acc.joint_average
        if joint is not None and joint > theta:
            selected.append(SelectedFormula(source, None, joint))
        if not source.resolvable:
            continue
        for index, average in enumerate(acc.cond_averages):
            if average is not None and average > theta:
                selected.append(SelectedFormula(source, index + 1, average))
    return selected


def resolve_connectives(sf: SelectedFormula) -> ResolvedFormula:
    """Conjunctions pass through. implication(k) becomes E ^ (other Q) ^ !Q_k,
    which with a negative weight has the implication's effect when E is
    observed"""
    if sf.consequent is None:
        return ResolvedFormula(sf.source, ResolweConstants.HINT_NEUTRAL)
    literals: List[Literal] = []
    position = 0
    for lit in sf.source.literals:
        if lit.is_target:
            position += 1
            if position == sf.consequent:
                lit = lit.negate()
        literals.append(lit)
    return ResolvedFormula(
        canonicalize(ConjunctiveFormula(tuple(literals))),
        ResolweConstants.HINT_NEGATIVE,
    )


def _format_average(value: Optional[float]):
    return "-" if value is None else f"{value:.6f}"


class ResolweSelector(Observable):
    """Accumulates the statistics of every candidate over streamed subgraphs and
    selects the formulas whose averages clear the threshold"""

    REPORT_HEADER = (
        "formula",
        "joint_average",
        "joint_subgraphs",
        "conditional_averages",
        "conditional_subgraphs",
        "selected",
    )

    def __init__(self, candidates: Iterable[ConjunctiveFormula]):
        super().__init__()
        self._candidates: List[ConjunctiveFormula] = list(dict.fromkeys(candidates))
        self._stats: Dict[ConjunctiveFormula, FormulaStats] = {
            f: FormulaStats.empty(len(f.enforcer)) for f in self._candidates
        }
        self._subgraphs = 0
        self._elapsed = 0.0

    @property
    def candidates(self) -> Sequence[ConjunctiveFormula]:
        return tuple(self._candidates)

    @property
    def stats(self) -> Dict[ConjunctiveFormula, FormulaStats]:
        return dict(self._stats)

    @property
    def subgraphs(self):
        """ Number of subgraphs observed so far """
        return self._subgraphs

    @property
    def elapsed(self):
        """ Seconds spent evaluating subgraphs """
        return self._elapsed

    def observe(self, db: SubgraphDatabase):
        start = time.monotonic()
        for f in self._candidates:
            self._stats[f] = self._stats[f].merge(evaluate_subgraph(f, db))
        self._elapsed += time.monotonic() - start
        self._subgraphs += 1
        self._on_change(self, "subgraph", self._subgraphs)

    def run(self, stream: Iterable[SubgraphDatabase], k2: int) -> int:
        """Observe the next k2 subgraphs of the stream. Only those k2 are taken
        from an iterator, the rest stay for weight training"""
        seen = 0
        for db in itertools.islice(stream, k2):
            self.observe(db)
            seen += 1
        if seen < k2:
            raise StreamExhaustedError(
                ResolweConstants.EXCEPTION_MESSAGE_STREAM_EXHAUSTED.format(seen, k2)
            )
        logger.info(
            "Observed %d subgraphs for %d candidates in %.3fs",
            seen,
            len(self._candidates),
            self._elapsed,
        )
        return seen

    def select(self, theta: float) -> List[SelectedFormula]:
        selected = finalize_selection(self._stats, theta)
        logger.info(
            "Selected %d forms of %d candidates at theta=%s",
            len(selected),
            len(self._candidates),
            theta,
        )
        return selected

    def report_lines(self, theta: float) -> List[str]:
        """ Tab separated rows, one per candidate, after a header """
        chosen: Dict[ConjunctiveFormula, List[str]] = {}
        for sf in finalize_selection(self._stats, theta):
            chosen.setdefault(sf.source, []).append(sf.form)
        lines = ["\t".join(self.REPORT_HEADER)]
        for f in sorted(self._candidates, key=format_formula):
            acc = self._stats[f]
            lines.append(
                "\t".join(
                    (
                        format_formula(f),
                        _format_average(acc.joint_average),
                        str(acc.joint_count),
                        ",".join(_format_average(avg) for avg in acc.cond_averages)
                        or "-",
                        ",".join(str(count) for count in acc.cond_counts) or "-",
                        ",".join(chosen.get(f, ())) or "-",
                    )
                )
            )
        return lines

    def __repr__(self):
        return (
            f"{self.__class__.__name__}(candidates={len(self._candidates)},"
            f" subgraphs={self._subgraphs})"
        )
