""" Expansion of grammar templates into canonical candidate formulas """

import itertools
import logging
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from ..const import ResolweConstants
from ..errors import FormulaConstructionError, SchemaError
from ..logic import ConjunctiveFormula, Literal, Variable, canonicalize, format_formula
from .parser import Grammar, PlaceholderCall, PlaceholderDef, Template

logger = logging.getLogger(__name__)

Alternative = Tuple[Literal, ...]


class _FreshNames:
    """ Hands out variable names that cannot clash with grammar identifiers """

    def __init__(self):
        self._counter = 0

    def variable(self, stem: str, type_name: str) -> Variable:
        self._counter += 1
        return Variable(f"{stem}#{self._counter}", type_name)


def _instantiate(
    definition: PlaceholderDef,
    args: Sequence[Variable],
    expansion: Sequence[Literal],
    fresh: _FreshNames,
    shared: Optional[Dict[str, Variable]] = None,
) -> Alternative:
    renaming = dict(zip(definition.params, args))
    for local in definition.locals_of(expansion):
        if shared is None:
            renaming[local] = fresh.variable(local.name, local.type_name)
        else:
            if local.name not in shared:
                shared[local.name] = fresh.variable(local.name, local.type_name)
            renaming[local] = shared[local.name]
    return tuple(lit.rename(renaming) for lit in expansion)


def _alternatives(
    grammar: Grammar, call: PlaceholderCall, fresh: _FreshNames
) -> List[Alternative]:
    definition = grammar.placeholders[call.name]
    shared_locals = grammar.compound_locals == ResolweConstants.COMPOUND_LOCALS_SHARED
    expansions = definition.expansions
    result = [
        _instantiate(definition, call.args, expansion, fresh)
        for expansion in expansions
    ]

    if definition.mode == ResolweConstants.PLACEHOLDER_COMPOUNDER:
        for length in range(2, definition.max_len + 1):
            for subset in itertools.combinations(expansions, length):
                shared = {} if shared_locals else None
                result.append(
                    tuple(
                        lit
                        for expansion in subset
                        for lit in _instantiate(
                            definition, call.args, expansion, fresh, shared
                        )
                    )
                )

    elif definition.mode == ResolweConstants.PLACEHOLDER_EXTENDER:
        start, end = call.args
        for length in range(2, definition.max_len + 1):
            for chain in itertools.product(expansions, repeat=length):
                links = [start]
                links.extend(
                    fresh.variable("z", start.type_name) for _ in range(length - 1)
                )
                links.append(end)
                shared = {} if shared_locals else None
                result.append(
                    tuple(
                        lit
                        for index, expansion in enumerate(chain)
                        for lit in _instantiate(
                            definition,
                            (links[index], links[index + 1]),
                            expansion,
                            fresh,
                            shared,
                        )
                    )
                )
    return result


def _variants(
    base: ConjunctiveFormula,
    template: Template,
    consequent: Optional[int],
    all_variants: bool,
) -> List[ConjunctiveFormula]:
    """Connective forms of one expansion. A declared connective is kept. A
    '?=>' expansion is a single resolvable conjunction for selection, and its
    conjunction plus every implication(k) otherwise"""
    if len(base.enforcer) < 2:
        return [base]
    if template.q_marker:
        if not all_variants:
            return [ConjunctiveFormula(base.literals, resolvable=True)]
        return [base] + [
            base.with_consequent(position)
            for position in range(1, len(base.enforcer) + 1)
        ]
    if consequent is not None:
        return [ConjunctiveFormula(base.literals, consequent)]
    return [base]


def _expand_template(
    grammar: Grammar, template: Template, all_variants: bool
) -> Iterator[ConjunctiveFormula]:
    fresh = _FreshNames()
    choices: List[List[Alternative]] = []
    for element in template.body:
        if isinstance(element, PlaceholderCall):
            choices.append(_alternatives(grammar, element, fresh))
        else:
            choices.append([(element,)])

    for combination in itertools.product(*choices):
        literals = tuple(lit for alternative in combination for lit in alternative)
        consequent = None
        if template.consequent is not None:
            consequent = sum(len(alt) for alt in combination[: template.consequent])
        try:
            base = ConjunctiveFormula(literals)
            variants = _variants(base, template, consequent, all_variants)
        except (FormulaConstructionError, SchemaError) as exc:
            logger.warning(
                "Template on line %s: expansion rejected: %s", template.line, exc
            )
            continue
        for variant in variants:
            yield canonicalize(variant)


def expand(grammar: Grammar, all_variants: bool = False) -> List[ConjunctiveFormula]:
    """The candidate formulas of a grammar, canonical, deduplicated and sorted by
    their text. With all_variants every connective form a template can take is
    emitted, which is the candidate set trained when selection is skipped. A
    conjunction reached both from '?=>' and from a declared template stays
    resolvable"""
    candidates: Dict[ConjunctiveFormula, None] = {}
    for template in grammar.templates:
        before = len(candidates)
        for formula in _expand_template(grammar, template, all_variants):
            if formula.resolvable:
                candidates.pop(formula, None)
            candidates.setdefault(formula, None)
        logger.debug(
            "Template %s added %d candidates", template, len(candidates) - before
        )
    logger.info("Expanded %d candidate formulas", len(candidates))
    return sorted(candidates, key=format_formula)
