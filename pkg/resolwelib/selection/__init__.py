""" Streaming selection of candidate formulas """

from .selector import (
    ResolvedFormula,
    ResolweSelector,
    SelectedFormula,
    evaluate_subgraph,
    finalize_selection,
    resolve_connectives,
)
from .stats import FormulaStats, SubgraphStats, merge_stats

__all__ = [
    # From selector
    "ResolvedFormula",
    "ResolweSelector",
    "SelectedFormula",
    "evaluate_subgraph",
    "finalize_selection",
    "resolve_connectives",
    # From stats
    "FormulaStats",
    "SubgraphStats",
    "merge_stats",
]
