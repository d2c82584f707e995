""" Declarative bias grammar parser """

from dataclasses import dataclass, field
import logging
import re
from typing import Dict, List, Optional, Sequence, Tuple, Union

from ..const import ResolweConstants
from ..errors import FormulaConstructionError, GrammarError, SchemaError
from ..logic import (
    ConjunctiveFormula,
    Literal,
    PredicateSchema,
    SchemaSet,
    Variable,
    canonicalize,
)

logger = logging.getLogger(__name__)

_IDENTIFIER = r"[A-Za-z_]\w*"
_LITERAL_RE = re.compile(rf"^(!?)\s*({_IDENTIFIER})\s*\(([^()]*)\)$")
_MODE_RE = re.compile(r"^(plain|compounder|extender)(?:\s+max\s*=\s*(\d+))?$")
_ARROW_RE = re.compile(r"(\?=>|=>)")


@dataclass(frozen=True)
class PlaceholderDef:
    """A predicate template and the literal conjunctions it expands to. Variables
    of an expansion that are not parameters are locals, standardized apart at each
    use"""

    name: str
    params: Tuple[Variable, ...]
    expansions: Tuple[Tuple[Literal, ...], ...]
    mode: str = ResolweConstants.PLACEHOLDER_PLAIN
    max_len: int = 1

    def locals_of(self, expansion: Sequence[Literal]) -> List[Variable]:
        seen = []
        for lit in expansion:
            for var in lit.variables:
                if var not in self.params and var not in seen:
                    seen.append(var)
        return seen


@dataclass(frozen=True)
class PlaceholderCall:
    name: str
    args: Tuple[Variable, ...]

    def __str__(self):
        return f"{self.name}({','.join(str(arg) for arg in self.args)})"


TemplateElement = Union[Literal, PlaceholderCall]


@dataclass(frozen=True)
class Template:
    """A template body. `consequent` indexes the literal after '=>' or '?=>', and
    `q_marker` leaves the connective among target literals to selection"""

    body: Tuple[TemplateElement, ...]
    consequent: Optional[int] = None
    q_marker: bool = False
    line: Optional[int] = None

    def __str__(self):
        joiner = f" {ResolweConstants.CONJUNCTION} "
        if self.consequent is None:
            return joiner.join(str(element) for element in self.body)
        arrow = (
            ResolweConstants.MARKED_IMPLICATION
            if self.q_marker
            else ResolweConstants.IMPLICATION
        )
        head = joiner.join(str(element) for element in self.body[: self.consequent])
        return f"{head} {arrow} {self.body[self.consequent]}"


@dataclass
class Grammar:
    schemas: SchemaSet
    placeholders: Dict[str, PlaceholderDef] = field(default_factory=dict)
    templates: List[Template] = field(default_factory=list)
    options: Dict[str, str] = field(default_factory=dict)

    @property
    def compound_locals(self):
        return self.options.get(
            ResolweConstants.OPTION_COMPOUND_LOCALS,
            ResolweConstants.COMPOUND_LOCALS_APART,
        )


def _split_args(text) -> List[str]:
    text = text.strip()
    if not text:
        return []
    return [arg.strip() for arg in text.split(",")]


def _parse_atom_text(text, line=None):
    match = _LITERAL_RE.match(text.strip())
    if not match:
        raise GrammarError(
            ResolweConstants.EXCEPTION_MESSAGE_GRAMMAR_SYNTAX.format(text.strip()), line
        )
    negation, name, args = match.groups()
    return bool(negation), name, _split_args(args)


def _bind_types(types: Dict[str, str], names, arg_types, line):
    for name, type_name in zip(names, arg_types):
        known = types.setdefault(name, type_name)
        if known != type_name:
            raise GrammarError(
                ResolweConstants.EXCEPTION_MESSAGE_VARIABLE_TYPES.format(
                    name, known, type_name
                ),
                line,
            )


def _literal(schemas: SchemaSet, negated, name, args, types, line) -> Literal:
    schema = schemas.get(name)
    if schema is None:
        raise GrammarError(
            ResolweConstants.EXCEPTION_MESSAGE_UNKNOWN_PREDICATE.format(name), line
        )
    if len(args) != schema.arity:
        raise GrammarError(
            ResolweConstants.EXCEPTION_MESSAGE_ARITY.format(name, schema.arity, len(args)),
            line,
        )
    _bind_types(types, args, schema.arg_types, line)
    return Literal(schema, tuple(Variable(arg, types[arg]) for arg in args), negated)


def _grammar_literal(schemas: SchemaSet, negated, name, args, types, line) -> Literal:
    """ A literal of a placeholder or template body, targets only positive """
    lit = _literal(schemas, negated, name, args, types, line)
    if lit.is_target and lit.negated:
        raise GrammarError(
            ResolweConstants.EXCEPTION_MESSAGE_NEGATED_TARGET.format(lit), line
        )
    return lit


def parse_formula(text: str, schemas: SchemaSet) -> ConjunctiveFormula:
    """Parse formula text as written by format_formula, `E ^ A => C` reads
    E ^ (A => C). The result is canonicalized"""
    parts = [part.strip() for part in text.split(ResolweConstants.IMPLICATION)]
    if len(parts) > 2 or not parts[0]:
        raise GrammarError(ResolweConstants.EXCEPTION_MESSAGE_GRAMMAR_SYNTAX.format(text))
    pieces = parts[0].split(ResolweConstants.CONJUNCTION)
    if len(parts) == 2:
        pieces.append(parts[1])
    types: Dict[str, str] = {}
    parsed = [_parse_atom_text(piece) for piece in pieces]
    literals = [_literal(schemas, *atom, types, None) for atom in parsed]
    consequent = len(literals) - 1 if len(parts) == 2 else None
    try:
        return canonicalize(ConjunctiveFormula(tuple(literals), consequent))
    except (FormulaConstructionError, SchemaError) as exc:
        raise GrammarError(str(exc)) from exc


class GrammarParser:
    """Parses grammar text. Lines are dispatched through a table of regular
    expressions, then resolved in declaration order: predicates and options first,
    then placeholders, then templates"""

    def __init__(self):
        self._predicates = []
        self._placeholders = []
        self._templates = []
        self._options = []
        self._funcs = [
            # Match "predicate articleEdit(article,user) evidence"
            (
                rf"^predicate\s+({_IDENTIFIER})\s*\(([^()]*)\)\s+(\w+)$",
                self._predicates,
            ),
            # Match "placeholder EDIT(t1:article,u:user) := a(t1,u) | b(t1,u) [compounder max=2]"  # noqa: E501
            (
                rf"^placeholder\s+({_IDENTIFIER})\s*\(([^()]*)\)\s*:=\s*(.+?)"
                r"\s*(?:\[([^\]]*)\])?$",
                self._placeholders,
            ),
            # Match "template EDIT(t1,u) ^ SIMPLE_REL(t1,t2) => modifies(t2,u)"
            (r"^template\s+(.+)$", self._templates),
            # Match "option compound_locals = shared"
            (rf"^option\s+({_IDENTIFIER})\s*=\s*(\w+)$", self._options),
        ]

    def parse(self, text: str) -> Grammar:
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split(ResolweConstants.COMMENT, 1)[0].strip()
            if not line:
                continue
            for pattern, bucket in self._funcs:
                match = re.match(pattern, line)
                if match:
                    bucket.append((match.groups(), number))
                    break
            else:
                raise GrammarError(
                    ResolweConstants.EXCEPTION_MESSAGE_GRAMMAR_SYNTAX.format(line), number
                )

        grammar = Grammar(SchemaSet(self._resolve_predicates()))
        for (name, value), number in self._options:
            allowed = ResolweConstants.GRAMMAR_OPTIONS.get(name, ())
            if value not in allowed:
                raise GrammarError(
                    ResolweConstants.EXCEPTION_MESSAGE_UNKNOWN_OPTION.format(name, value),
                    number,
                )
            grammar.options[name] = value
        for groups, number in self._placeholders:
            definition = self._resolve_placeholder(grammar, groups, number)
            grammar.placeholders[definition.name] = definition
        for (body,), number in self._templates:
            grammar.templates.append(self._resolve_template(grammar, body, number))
        logger.info(
            "Grammar with %d predicates, %d placeholders and %d templates",
            len(grammar.schemas),
            len(grammar.placeholders),
            len(grammar.templates),
        )
        return grammar

    def _resolve_predicates(self):
        schemas = []
        names = set()
        for (name, arg_types, role), number in self._predicates:
            if name in names:
                raise GrammarError(
                    ResolweConstants.EXCEPTION_MESSAGE_DUPLICATE_PREDICATE.format(name),
                    number,
                )
            names.add(name)
            try:
                schemas.append(PredicateSchema(name, tuple(_split_args(arg_types)), role))
            except SchemaError as exc:
                raise GrammarError(str(exc), number) from exc
        return schemas

    def _resolve_placeholder(self, grammar, groups, number) -> PlaceholderDef:
        name, params_text, bodies_text, mode_text = groups
        if name in grammar.schemas:
            raise GrammarError(
                ResolweConstants.EXCEPTION_MESSAGE_PLACEHOLDER_SHADOWS.format(name), number
            )
        if name in grammar.placeholders:
            raise GrammarError(
                ResolweConstants.EXCEPTION_MESSAGE_DUPLICATE_PLACEHOLDER.format(name),
                number,
            )
        params = []
        for param in _split_args(params_text):
            var_name, _, type_name = (part.strip() for part in param.partition(":"))
            if not re.match(rf"^{_IDENTIFIER}$", var_name) or not type_name:
                raise GrammarError(
                    ResolweConstants.EXCEPTION_MESSAGE_GRAMMAR_SYNTAX.format(param),
                    number,
                )
            params.append(Variable(var_name, type_name))

        mode, max_len = ResolweConstants.PLACEHOLDER_PLAIN, 1
        if mode_text is not None:
            match = _MODE_RE.match(mode_text.strip())
            if not match:
                raise GrammarError(
                    ResolweConstants.EXCEPTION_MESSAGE_PLACEHOLDER_MODE.format(mode_text),
                    number,
                )
            mode = match.group(1)
            if mode != ResolweConstants.PLACEHOLDER_PLAIN:
                max_len = int(match.group(2)) if match.group(2) else 2
            if max_len < 1:
                raise GrammarError(
                    ResolweConstants.EXCEPTION_MESSAGE_PLACEHOLDER_MODE.format(mode_text),
                    number,
                )
        if mode == ResolweConstants.PLACEHOLDER_EXTENDER and (
            len(params) != 2 or params[0].type_name != params[1].type_name
        ):
            raise GrammarError(
                ResolweConstants.EXCEPTION_MESSAGE_EXTENDER_PARAMS.format(name), number
            )

        expansions = []
        for body in bodies_text.split(ResolweConstants.ALTERNATIVE):
            types = {param.name: param.type_name for param in params}
            literals = []
            for piece in body.split(ResolweConstants.CONJUNCTION):
                negated, pred, args = _parse_atom_text(piece, number)
                if pred in grammar.placeholders or pred not in grammar.schemas:
                    message = (
                        ResolweConstants.EXCEPTION_MESSAGE_NESTED_PLACEHOLDER
                        if pred in grammar.placeholders
                        else ResolweConstants.EXCEPTION_MESSAGE_UNKNOWN_PREDICATE
                    )
                    raise GrammarError(message.format(pred), number)
                literals.append(
                    _grammar_literal(
                        grammar.schemas, negated, pred, args, types, number
                    )
                )
            expansions.append(tuple(literals))
        return PlaceholderDef(name, tuple(params), tuple(expansions), mode, max_len)

    def _resolve_template(self, grammar, text, number) -> Template:
        pieces = _ARROW_RE.split(text)
        if len(pieces) > 3 or (
            len(pieces) == 3 and ResolweConstants.CONJUNCTION in pieces[2]
        ):
            raise GrammarError(ResolweConstants.EXCEPTION_MESSAGE_ARROWS, number)
        element_texts = [
            element for element in pieces[0].split(ResolweConstants.CONJUNCTION)
        ]
        arrow = None
        if len(pieces) == 3:
            arrow = pieces[1]
            element_texts.append(pieces[2])

        parsed = [_parse_atom_text(element, number) for element in element_texts]
        # Infer variable types from every element before building any of them
        types: Dict[str, str] = {}
        for negated, name, args in parsed:
            if name in grammar.placeholders:
                definition = grammar.placeholders[name]
                if negated or len(args) != len(definition.params):
                    raise GrammarError(
                        ResolweConstants.EXCEPTION_MESSAGE_ARITY.format(
                            name, len(definition.params), len(args)
                        ),
                        number,
                    )
                _bind_types(
                    types, args, [param.type_name for param in definition.params], number
                )
            elif name in grammar.schemas:
                schema = grammar.schemas[name]
                if len(args) != schema.arity:
                    raise GrammarError(
                        ResolweConstants.EXCEPTION_MESSAGE_ARITY.format(
                            name, schema.arity, len(args)
                        ),
                        number,
                    )
                _bind_types(types, args, schema.arg_types, number)
            else:
                raise GrammarError(
                    ResolweConstants.EXCEPTION_MESSAGE_UNKNOWN_ELEMENT.format(name),
                    number,
                )

        body = []
        for negated, name, args in parsed:
            if name in grammar.placeholders:
                body.append(
                    PlaceholderCall(name, tuple(Variable(arg, types[arg]) for arg in args))
                )
            else:
                body.append(
                    _grammar_literal(
                        grammar.schemas, negated, name, args, types, number
                    )
                )

        consequent = None
        q_marker = arrow == ResolweConstants.MARKED_IMPLICATION
        if arrow is not None:
            consequent = len(body) - 1
            head = body[consequent]
            if not isinstance(head, Literal) or not head.is_target:
                raise GrammarError(ResolweConstants.EXCEPTION_MESSAGE_CONSEQUENT, number)
        if q_marker:
            targets = [
                element
                for element in body
                if isinstance(element, Literal) and element.is_target
            ]
            if len(targets) < 2:
                raise GrammarError(ResolweConstants.EXCEPTION_MESSAGE_Q_MARKER, number)
        return Template(tuple(body), consequent, q_marker, number)


def parse_grammar(text: str) -> Grammar:
    """ Parse and resolve grammar source text """
    return GrammarParser().parse(text)


def read_grammar(path) -> Grammar:
    with open(path, encoding=ResolweConstants.ENCODING) as f:
        return parse_grammar(f.read())
