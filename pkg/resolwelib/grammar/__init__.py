""" Declarative bias grammar: parsing and candidate expansion """

from .expander import expand
from .parser import (
    Grammar,
    GrammarParser,
    PlaceholderCall,
    PlaceholderDef,
    Template,
    parse_formula,
    parse_grammar,
    read_grammar,
)

__all__ = [
    # From expander
    "expand",
    # From parser
    "Grammar",
    "GrammarParser",
    "PlaceholderCall",
    "PlaceholderDef",
    "Template",
    "parse_formula",
    "parse_grammar",
    "read_grammar",
]
