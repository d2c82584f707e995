""" Constants Class """


class ResolweConstants:
    """
    ResolweConstants is a literal class so that we can program in a mostly DRY fashion,
    for example a file name or a grammar keyword would be present as would defaults
    that could be changed and might be difficult to discover inline, but some constants
    that form part of a functions documented behaviour might not be here, e.g. the
    arguments of an enumeration bound check
    """

    # Predicate roles
    ROLE_EVIDENCE = "evidence"
    ROLE_TARGET = "target"
    ROLES = (ROLE_EVIDENCE, ROLE_TARGET)

    # Sign hints carried by learnable clauses
    HINT_NEUTRAL = "neutral"
    HINT_NEGATIVE = "negative"
    HINT_PRIOR = "prior"
    HINTS = (HINT_NEUTRAL, HINT_NEGATIVE, HINT_PRIOR)

    # Pipeline modes
    MODE_RESOLWE = "resolwe"
    MODE_SKIP_SELECTION = "skipSelection"
    MODES = (MODE_RESOLWE, MODE_SKIP_SELECTION)

    # Selection defaults (k2 subgraphs, strict threshold theta)
    DEFAULT_K2 = 30
    DEFAULT_THETA = 0.4

    # Contrastive divergence defaults
    DEFAULT_LEARNING_RATE = 0.01
    DEFAULT_PRIOR_VARIANCE = 100.0
    DEFAULT_CD_CHAIN_LENGTH = 1
    DEFAULT_PASSES = 1
    DEFAULT_SEED = 0

    # Subgraphs between progress reports of a streaming stage
    PROGRESS_INTERVAL = 10

    # Inference
    EXACT_INFERENCE_MAX_ATOMS = 20
    PREDICT_GIBBS_BURN_IN = 100
    PREDICT_GIBBS_SAMPLES = 1000

    # Synthetic generator
    SYNTH_BACKGROUND_RATE = 0.02
    SYNTH_MAX_DENSITY = 0.2
    SYNTH_DEFAULT_SUBGRAPHS = 100
    SYNTH_DEFAULT_CONSTANTS = 8

    # Text formats
    ENCODING = "utf-8"
    COMMENT = "#"
    CONJUNCTION = "^"
    IMPLICATION = "=>"
    MARKED_IMPLICATION = "?=>"
    NEGATION = "!"
    ALTERNATIVE = "|"
    DEFINITION = ":="
    BLOCK_SEPARATOR = "---"
    HIDE_DIRECTIVE = "?hide"
    DOMAIN_DIRECTIVE = "?domain"
    CANONICAL_VARIABLE = "v{0}"

    # Grammar keywords
    KEYWORD_PREDICATE = "predicate"
    KEYWORD_PLACEHOLDER = "placeholder"
    KEYWORD_TEMPLATE = "template"
    KEYWORD_OPTION = "option"
    PLACEHOLDER_PLAIN = "plain"
    PLACEHOLDER_COMPOUNDER = "compounder"
    PLACEHOLDER_EXTENDER = "extender"
    PLACEHOLDER_MODES = (PLACEHOLDER_PLAIN, PLACEHOLDER_COMPOUNDER, PLACEHOLDER_EXTENDER)
    OPTION_COMPOUND_LOCALS = "compound_locals"
    COMPOUND_LOCALS_APART = "apart"
    COMPOUND_LOCALS_SHARED = "shared"
    GRAMMAR_OPTIONS = {
        OPTION_COMPOUND_LOCALS: (COMPOUND_LOCALS_APART, COMPOUND_LOCALS_SHARED),
    }

    # Model file
    MODEL_MAGIC = "# resolwelib model"
    MODEL_SCHEMA_KEY = "schema"
    MODEL_CONFIG_KEY = "config"
    MODEL_MODE_KEY = "mode"

    # Output files, relative to the output directory
    MODEL_FILE = "model.mln"
    SELECTION_REPORT = "selection.tsv"
    TIMING_REPORT = "timings.tsv"
    CANDIDATES_FILE = "candidates.txt"
    PREDICTIONS_FILE = "predictions.tsv"
    EVALUATION_REPORT = "evaluation.tsv"
    STREAM_FILE = "stream.txt"
    MANIFEST_FILE = "manifest.json"

    EXCEPTION_MESSAGE_UNKNOWN_PREDICATE = "Unknown predicate '{0}'"
    EXCEPTION_MESSAGE_DUPLICATE_PREDICATE = "Predicate '{0}' is declared twice"
    EXCEPTION_MESSAGE_BAD_ROLE = "Predicate '{0}' has role '{1}', expected one of {2}"
    EXCEPTION_MESSAGE_NO_ARGUMENTS = "Predicate '{0}' needs at least one argument type"
    EXCEPTION_MESSAGE_ARITY = "{0} expects {1} arguments, got {2}"
    EXCEPTION_MESSAGE_ARGUMENT_TYPE = (
        "Argument {0} of {1} has type '{2}' but the predicate expects '{3}'"
    )
    EXCEPTION_MESSAGE_UNKNOWN_CONSTANT = "Constant '{0}' of type '{1}' is not in the database"
    EXCEPTION_MESSAGE_NOT_GROUND = "Literal {0} is not ground"
    EXCEPTION_MESSAGE_UNBOUND = "Variable {0} is unbound in {1}"
    EXCEPTION_MESSAGE_NO_LITERALS = "A formula needs at least one literal"
    EXCEPTION_MESSAGE_NO_TARGET = "Formula {0} has no literal of a target predicate"
    EXCEPTION_MESSAGE_UNSAFE_NEGATION = (
        "Negated literal {0} uses variables not bound by a positive literal"
    )
    EXCEPTION_MESSAGE_VARIABLE_TYPES = "Variable '{0}' is used with types '{1}' and '{2}'"
    EXCEPTION_MESSAGE_BAD_CONSEQUENT = (
        "An implication needs a non-negated target consequent and at least two target"
        " literals, got {0}"
    )
    EXCEPTION_MESSAGE_GRAMMAR_SYNTAX = "Cannot parse '{0}'"
    EXCEPTION_MESSAGE_UNKNOWN_ELEMENT = "'{0}' is neither a predicate nor a placeholder"
    EXCEPTION_MESSAGE_PLACEHOLDER_SHADOWS = "Placeholder '{0}' shadows a predicate"
    EXCEPTION_MESSAGE_DUPLICATE_PLACEHOLDER = "Placeholder '{0}' is defined twice"
    EXCEPTION_MESSAGE_PLACEHOLDER_MODE = "Cannot parse placeholder mode '{0}'"
    EXCEPTION_MESSAGE_EXTENDER_PARAMS = (
        "Extender '{0}' needs exactly two parameters of the same type"
    )
    EXCEPTION_MESSAGE_NESTED_PLACEHOLDER = "Placeholder bodies cannot invoke '{0}'"
    EXCEPTION_MESSAGE_LOCAL_TYPE = "Cannot infer the type of local variable '{0}'"
    EXCEPTION_MESSAGE_Q_MARKER = "A '?=>' template needs at least two target literals"
    EXCEPTION_MESSAGE_CONSEQUENT = "The consequent of a template must be a target literal"
    EXCEPTION_MESSAGE_ARROWS = (
        "A template may contain one implication arrow, before its last literal"
    )
    EXCEPTION_MESSAGE_NEGATED_TARGET = (
        "Target literal {0} may not be negated in a grammar, negative patterns come"
        " from implications"
    )
    EXCEPTION_MESSAGE_UNKNOWN_OPTION = "Unknown grammar option {0}={1}"
    EXCEPTION_MESSAGE_STREAM_LINE = "Cannot parse stream line '{0}'"
    EXCEPTION_MESSAGE_HIDE_TARGET = "Only target predicates can be hidden, got '{0}'"
    EXCEPTION_MESSAGE_EXACT_BOUND = (
        "Exact inference over {0} hidden atoms refused, the bound is {1}"
    )
    EXCEPTION_MESSAGE_STREAM_EXHAUSTED = (
        "The stream ended after {0} subgraphs, selection needs {1}"
    )
    EXCEPTION_MESSAGE_NOTHING_TO_TRAIN = (
        "The stream has no subgraphs left for weight training after the first {0}"
    )
    EXCEPTION_MESSAGE_MODEL_FORMAT = "Cannot parse model line '{0}'"
    EXCEPTION_MESSAGE_MODEL_SCHEMA = "Model schema digest {0} does not match {1}"
    EXCEPTION_MESSAGE_CONFIG_VALUE = "Invalid configuration value {0}={1}"
    EXCEPTION_MESSAGE_SYNTH_DENSITY = (
        "Density {1} for '{0}' is above the sparse limit of {2}"
    )
    EXCEPTION_MESSAGE_SYNTH_RULE = (
        "Planted rule {0} must be a conjunction with exactly one target literal"
    )
