""" Library to select and weight first-order formulas over streamed relational subgraphs """

import logging

from ._version import VERSION
from .const import ResolweConstants
from .errors import (
    FormulaConstructionError,
    GrammarError,
    InferenceBoundError,
    ModelFormatError,
    ResolweError,
    SchemaError,
    StreamExhaustedError,
    StreamFormatError,
)
from .grammar import Grammar, expand, parse_formula, parse_grammar, read_grammar
from .learning import (
    GroundNetwork,
    LearnConfig,
    ResolweTrainer,
    WeightedFormula,
    WeightedModel,
    cd_step,
    exact_conditional,
    gibbs_conditional,
    ground_model,
    predict,
    true_grounding_count,
)
from .logic import (
    Atom,
    ConjunctiveFormula,
    Literal,
    PredicateSchema,
    SchemaSet,
    SubgraphDatabase,
    Variable,
    canonicalize,
    format_formula,
    satisfying_bindings,
    split_formula,
)
from .metrics import RankedPrediction, auc_scores, evaluation_report, map_score
from .observable import Observable
from .selection import (
    ResolweSelector,
    SelectedFormula,
    evaluate_subgraph,
    finalize_selection,
    merge_stats,
    resolve_connectives,
)
from .utils import (
    PipelineConfig,
    ResolweShell,
    SynthConfig,
    read_stream,
    run_pipeline,
    synth_generate,
    write_stream,
)

# Module logger, uses the library name and it is silent unless required ...
logging.getLogger(__name__).addHandler(logging.NullHandler())

__version__ = VERSION

__all__ = [
    "VERSION",
    "ResolweConstants",
    "Observable",
    # From errors
    "FormulaConstructionError",
    "GrammarError",
    "InferenceBoundError",
    "ModelFormatError",
    "ResolweError",
    "SchemaError",
    "StreamExhaustedError",
    "StreamFormatError",
    # From grammar
    "Grammar",
    "expand",
    "parse_formula",
    "parse_grammar",
    "read_grammar",
    # From learning
    "GroundNetwork",
    "LearnConfig",
    "ResolweTrainer",
    "WeightedFormula",
    "WeightedModel",
    "cd_step",
    "exact_conditional",
    "gibbs_conditional",
    "ground_model",
    "predict",
    "true_grounding_count",
    # From logic
    "Atom",
    "ConjunctiveFormula",
    "Literal",
    "PredicateSchema",
    "SchemaSet",
    "SubgraphDatabase",
    "Variable",
    "canonicalize",
    "format_formula",
    "satisfying_bindings",
    "split_formula",
    # From metrics
    "RankedPrediction",
    "auc_scores",
    "evaluation_report",
    "map_score",
    # From selection
    "ResolweSelector",
    "SelectedFormula",
    "evaluate_subgraph",
    "finalize_selection",
    "merge_stats",
    "resolve_connectives",
    # From utils
    "PipelineConfig",
    "ResolweShell",
    "SynthConfig",
    "read_stream",
    "run_pipeline",
    "synth_generate",
    "write_stream",
]
