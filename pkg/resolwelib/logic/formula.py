""" Conjunctive formulas, selector/enforcer split and canonical forms """

from dataclasses import dataclass, field
import itertools
import logging
from typing import Dict, List, Optional, Tuple

from ..const import ResolweConstants
from ..errors import FormulaConstructionError
from .terms import Constant, Literal, Variable

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConjunctiveFormula:
    """An ordered conjunction of literals. When `consequent` is set it indexes a
    target literal Q_k in `literals` and the formula reads
    E ^ (other target literals => Q_k). A `resolvable` conjunction leaves the
    connective among its target literals to selection; it does not take part in
    equality"""

    literals: Tuple[Literal, ...]
    consequent: Optional[int] = None
    resolvable: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "literals", tuple(self.literals))
        if not self.literals:
            raise FormulaConstructionError(
                ResolweConstants.EXCEPTION_MESSAGE_NO_LITERALS
            )
        targets = [lit for lit in self.literals if lit.is_target]
        if not targets:
            raise FormulaConstructionError(
                ResolweConstants.EXCEPTION_MESSAGE_NO_TARGET.format(self._text())
            )
        if self.consequent is not None:
            if (
                not 0 <= self.consequent < len(self.literals)
                or not self.literals[self.consequent].is_target
                or self.literals[self.consequent].negated
                or len(targets) < 2
            ):
                raise FormulaConstructionError(
                    ResolweConstants.EXCEPTION_MESSAGE_BAD_CONSEQUENT.format(
                        self._text()
                    )
                )
        types: Dict[str, str] = {}
        for lit in self.literals:
            for var in lit.variables:
                known = types.setdefault(var.name, var.type_name)
                if known != var.type_name:
                    raise FormulaConstructionError(
                        ResolweConstants.EXCEPTION_MESSAGE_VARIABLE_TYPES.format(
                            var.name, known, var.type_name
                        )
                    )
        bound = {
            var
            for lit in self.literals
            if not lit.is_target and not lit.negated
            for var in lit.variables
        }
        for lit in self.literals:
            if not lit.is_target and lit.negated and not set(lit.variables) <= bound:
                raise FormulaConstructionError(
                    ResolweConstants.EXCEPTION_MESSAGE_UNSAFE_NEGATION.format(lit)
                )

    @property
    def is_implication(self):
        return self.consequent is not None

    @property
    def variables(self) -> Tuple[Variable, ...]:
        seen = []
        for lit in self.literals:
            for var in lit.variables:
                if var not in seen:
                    seen.append(var)
        return tuple(seen)

    @property
    def selector(self) -> Tuple[Literal, ...]:
        return tuple(lit for lit in self.literals if not lit.is_target)

    @property
    def enforcer(self) -> Tuple[Literal, ...]:
        return tuple(lit for lit in self.literals if lit.is_target)

    @property
    def consequent_position(self) -> Optional[int]:
        """ k of implication(k), 1-based among the target literals """
        if self.consequent is None:
            return None
        return sum(1 for lit in self.literals[: self.consequent + 1] if lit.is_target)

    def as_conjunction(self):
        return ConjunctiveFormula(self.literals)

    def with_consequent(self, position):
        """ The implication(k) form of this formula, k 1-based among targets """
        indices = [i for i, lit in enumerate(self.literals) if lit.is_target]
        return ConjunctiveFormula(self.literals, indices[position - 1])

    def _text(self):
        return f" {ResolweConstants.CONJUNCTION} ".join(str(lit) for lit in self.literals)

    def __str__(self):
        return format_formula(self)


def split_formula(f: ConjunctiveFormula) -> Tuple[List[Literal], List[Literal]]:
    """ (E, Q): evidence literals and target literals, both in formula order """
    return list(f.selector), list(f.enforcer)


def format_formula(f: ConjunctiveFormula) -> str:
    """Canonical text, literals joined by ' ^ ', the consequent of an implication
    printed last after ' => '"""
    joiner = f" {ResolweConstants.CONJUNCTION} "
    if f.consequent is None:
        return joiner.join(str(lit) for lit in f.literals)
    body = joiner.join(
        str(lit) for index, lit in enumerate(f.literals) if index != f.consequent
    )
    return f"{body} {ResolweConstants.IMPLICATION} {f.literals[f.consequent]}"


def _pattern(lit: Literal, is_consequent, numbering):
    args = []
    for term in lit.args:
        if isinstance(term, Constant):
            args.append((1, term.name))
        else:
            args.append((0, numbering[term]))
    return (lit.predicate.name, lit.negated, is_consequent, tuple(args))


def _number_variables(literals):
    numbering = {}
    for lit in literals:
        for var in lit.variables:
            if var not in numbering:
                numbering[var] = len(numbering) + 1
    return numbering


def canonicalize(f: ConjunctiveFormula) -> ConjunctiveFormula:
    """Representative of the formula's class under variable renaming and literal
    reordering. Literals are grouped by (predicate name, negation), duplicates are
    dropped, and among the orderings inside each group the one whose first
    occurrence numbering gives the smallest argument pattern wins. Variables are
    renamed v1, v2, ... in first occurrence order"""
    unique: List[Tuple[Literal, bool]] = []
    for index, lit in enumerate(f.literals):
        entry = (lit, index == f.consequent)
        if entry not in unique:
            unique.append(entry)

    groups: Dict[Tuple, List[Tuple[Literal, bool]]] = {}
    for entry in unique:
        lit, is_consequent = entry
        groups.setdefault(
            (lit.predicate.name, lit.negated, is_consequent), []
        ).append(entry)
    ordered_groups = [groups[key] for key in sorted(groups)]

    best_key = None
    best_order = None
    for choice in itertools.product(
        *(itertools.permutations(group) for group in ordered_groups)
    ):
        order = [entry for group in choice for entry in group]
        numbering = _number_variables(lit for lit, _ in order)
        key = tuple(_pattern(lit, flag, numbering) for lit, flag in order)
        if best_key is None or key < best_key:
            best_key, best_order = key, order

    numbering = _number_variables(lit for lit, _ in best_order)
    renaming = {
        var: Variable(ResolweConstants.CANONICAL_VARIABLE.format(number), var.type_name)
        for var, number in numbering.items()
    }
    literals = tuple(lit.rename(renaming) for lit, _ in best_order)
    consequent = next(
        (index for index, (_, flag) in enumerate(best_order) if flag), None
    )
    return ConjunctiveFormula(literals, consequent, f.resolvable)
