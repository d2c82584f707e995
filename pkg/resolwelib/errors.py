""" Exceptions raised by resolwelib """


class ResolweError(Exception):
    """ Base of all the errors raised by this library """


class SchemaError(ResolweError, ValueError):
    """Unknown predicate or constant, or an arity or type mismatch against the
    predicate declarations"""


class FormulaConstructionError(ResolweError, ValueError):
    """ A formula violates its well-formedness rules """


class GrammarError(ResolweError):
    """ A grammar file cannot be parsed or resolved """

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class StreamFormatError(ResolweError):
    """ A stream file contains a line that cannot be parsed """

    def __init__(self, message, block, line):
        self.block = block
        self.line = line
        super().__init__(f"block {block}, line {line}: {message}")


class ModelFormatError(ResolweError):
    """ A model file is malformed or was written against another schema """


class InferenceBoundError(ResolweError):
    """ Exact inference was asked to enumerate too many hidden atoms """


class StreamExhaustedError(ResolweError):
    """ The stream ended before a pipeline stage had the subgraphs it needs """
