""" First-order representation, closed-world truth and grounding enumeration """

from .database import SubgraphDatabase, holds
from .formula import ConjunctiveFormula, canonicalize, format_formula, split_formula
from .join import (
    Substitution,
    extend_over_domains,
    iter_bindings,
    satisfying_bindings,
    selected_bindings,
)
from .terms import Atom, Constant, Literal, PredicateSchema, SchemaSet, Term, Variable

__all__ = [
    # From database
    "SubgraphDatabase",
    "holds",
    # From formula
    "ConjunctiveFormula",
    "canonicalize",
    "format_formula",
    "split_formula",
    # From join
    "Substitution",
    "extend_over_domains",
    "iter_bindings",
    "satisfying_bindings",
    "selected_bindings",
    # From terms
    "Atom",
    "Constant",
    "Literal",
    "PredicateSchema",
    "SchemaSet",
    "Term",
    "Variable",
]
