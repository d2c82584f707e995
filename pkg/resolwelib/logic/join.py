""" Enumeration of satisfying groundings by index-backed joins """

import itertools
import logging
from typing import Dict, Iterable, Iterator, List, Optional, Sequence

from ..const import ResolweConstants
from ..errors import FormulaConstructionError
from .database import SubgraphDatabase
from .formula import ConjunctiveFormula
from .terms import Constant, Literal, Variable

logger = logging.getLogger(__name__)

# Maps each variable to the name of the constant it is bound to, the constant's
# type is the variable's type
Substitution = Dict[Variable, str]


def _check_safe(positives: Sequence[Literal], negatives: Sequence[Literal]):
    bound = {var for lit in positives for var in lit.variables}
    for lit in negatives:
        if not set(lit.variables) <= bound:
            raise FormulaConstructionError(
                ResolweConstants.EXCEPTION_MESSAGE_UNSAFE_NEGATION.format(lit)
            )


def _candidates(db: SubgraphDatabase, lit: Literal, binding: Substitution):
    """ Rows of the literal's predicate compatible with the bound positions """
    best = None
    for position, term in enumerate(lit.args):
        if isinstance(term, Constant):
            constant = term.name
        elif term in binding:
            constant = binding[term]
        else:
            continue
        rows = db.posting(lit.predicate.name, position, constant)
        if best is None or len(rows) < len(best):
            best = rows
            if not best:
                break
    if best is None:
        return db.rows(lit.predicate.name)
    return best


def _unify(lit: Literal, row, binding: Substitution) -> Optional[Substitution]:
    extended = binding
    for term, constant in zip(lit.args, row):
        if isinstance(term, Constant):
            if term.name != constant:
                return None
            continue
        bound = extended.get(term)
        if bound is None:
            if extended is binding:
                extended = dict(binding)
            extended[term] = constant
        elif bound != constant:
            return None
    return extended


def _join(db, pending: List[Literal], negatives, binding) -> Iterator[Substitution]:
    if not pending:
        for lit in negatives:
            if db.contains(lit.ground_atom(binding)):
                return
        yield dict(binding)
        return

    # Most selective literal first, given what is bound so far
    choice = None
    choice_rows = None
    for lit in pending:
        rows = _candidates(db, lit, binding)
        if choice_rows is None or len(rows) < len(choice_rows):
            choice, choice_rows = lit, rows
            if not rows:
                return
    rest = [lit for lit in pending if lit is not choice]
    for row in choice_rows:
        extended = _unify(choice, row, binding)
        if extended is not None:
            yield from _join(db, rest, negatives, extended)


def iter_bindings(db: SubgraphDatabase, lits: Sequence[Literal]) -> Iterator[Substitution]:
    """Lazily enumerate the substitutions over vars(lits) that make every literal
    true. Positive literals are joined, negated ones filter the joined rows"""
    positives = [lit for lit in lits if not lit.negated]
    negatives = [lit for lit in lits if lit.negated]
    _check_safe(positives, negatives)
    if not positives:
        # Only ground negations remain
        if all(not db.contains(lit.ground_atom()) for lit in negatives):
            yield {}
        return
    yield from _join(db, positives, negatives, {})


def satisfying_bindings(db: SubgraphDatabase, lits: Sequence[Literal]) -> List[Substitution]:
    """ Every substitution satisfying all literals, see iter_bindings """
    return list(iter_bindings(db, lits))


def extend_over_domains(
    db: SubgraphDatabase,
    bindings: Iterable[Substitution],
    variables: Sequence[Variable],
) -> Iterator[Substitution]:
    """ Extend each binding with every type-consistent value of the unbound variables """
    for binding in bindings:
        free = [var for var in variables if var not in binding]
        if not free:
            yield binding
            continue
        for values in itertools.product(*(db.domain(var.type_name) for var in free)):
            extended = dict(binding)
            extended.update(zip(free, values))
            yield extended


def selected_bindings(db: SubgraphDatabase, f: ConjunctiveFormula) -> Iterator[Substitution]:
    """The groundings of the formula selected by its evidence part: the E bindings
    extended over the variables that only occur in target literals. An empty
    selector selects every type-consistent grounding"""
    selector = f.selector
    bindings = iter_bindings(db, selector) if selector else iter([{}])
    return extend_over_domains(db, bindings, f.variables)
