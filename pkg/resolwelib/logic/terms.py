""" Predicates, terms, atoms and literals """

from dataclasses import dataclass
import hashlib
import logging
from typing import Dict, Iterable, Iterator, Mapping, NamedTuple, Tuple, Union

from ..const import ResolweConstants
from ..errors import SchemaError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PredicateSchema:
    """A typed predicate declaration, either observed (evidence) or predicted
    (target)"""

    name: str
    arg_types: Tuple[str, ...]
    role: str

    def __post_init__(self):
        object.__setattr__(self, "arg_types", tuple(self.arg_types))
        if not self.arg_types:
            raise SchemaError(
                ResolweConstants.EXCEPTION_MESSAGE_NO_ARGUMENTS.format(self.name)
            )
        if self.role not in ResolweConstants.ROLES:
            raise SchemaError(
                ResolweConstants.EXCEPTION_MESSAGE_BAD_ROLE.format(
                    self.name, self.role, ResolweConstants.ROLES
                )
            )

    @property
    def arity(self):
        return len(self.arg_types)

    @property
    def is_target(self):
        return self.role == ResolweConstants.ROLE_TARGET

    @property
    def declaration(self):
        """ The declaration in grammar syntax """
        return (
            f"{ResolweConstants.KEYWORD_PREDICATE} {self.name}"
            f"({','.join(self.arg_types)}) {self.role}"
        )

    def __str__(self):
        return f"{self.name}/{self.arity}"


class SchemaSet(Mapping):
    """ Name-unique, ordered collection of predicate declarations """

    def __init__(self, schemas: Iterable[PredicateSchema] = ()):
        self._schemas: Dict[str, PredicateSchema] = {}
        for schema in schemas:
            if schema.name in self._schemas:
                raise SchemaError(
                    ResolweConstants.EXCEPTION_MESSAGE_DUPLICATE_PREDICATE.format(
                        schema.name
                    )
                )
            self._schemas[schema.name] = schema

    def __getitem__(self, name) -> PredicateSchema:
        try:
            return self._schemas[name]
        except KeyError:
            raise SchemaError(
                ResolweConstants.EXCEPTION_MESSAGE_UNKNOWN_PREDICATE.format(name)
            ) from None

    def __iter__(self) -> Iterator[str]:
        return iter(self._schemas)

    def __len__(self):
        return len(self._schemas)

    def __contains__(self, name):
        return name in self._schemas

    def get(self, name, default=None):
        return self._schemas.get(name, default)

    @property
    def targets(self):
        return [schema for schema in self._schemas.values() if schema.is_target]

    @property
    def evidence(self):
        return [schema for schema in self._schemas.values() if not schema.is_target]

    def declarations(self):
        return [schema.declaration for schema in self._schemas.values()]

    def digest(self):
        """ SHA-256 over the sorted declarations, independent of declaration order """
        text = "\n".join(sorted(self.declarations()))
        return hashlib.sha256(text.encode(ResolweConstants.ENCODING)).hexdigest()

    def __eq__(self, other):
        if not isinstance(other, SchemaSet):
            return NotImplemented
        return self._schemas == other._schemas

    def __hash__(self):
        return hash(tuple(self._schemas.values()))

    def __repr__(self):
        return f"{self.__class__.__name__}({list(self._schemas.values())!r})"


@dataclass(frozen=True)
class Variable:
    name: str
    type_name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Constant:
    name: str
    type_name: str

    def __str__(self):
        return self.name


Term = Union[Variable, Constant]


class Atom(NamedTuple):
    """ A ground atom, constants are typed by the argument position they fill """

    predicate: str
    args: Tuple[str, ...]

    def __str__(self):
        return f"{self.predicate}({','.join(self.args)})"


@dataclass(frozen=True)
class Literal:
    """ A possibly negated atom over variables and constants """

    predicate: PredicateSchema
    args: Tuple[Term, ...]
    negated: bool = False

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        if len(self.args) != self.predicate.arity:
            raise SchemaError(
                ResolweConstants.EXCEPTION_MESSAGE_ARITY.format(
                    self.predicate.name, self.predicate.arity, len(self.args)
                )
            )
        for position, (term, expected) in enumerate(
            zip(self.args, self.predicate.arg_types)
        ):
            if term.type_name != expected:
                raise SchemaError(
                    ResolweConstants.EXCEPTION_MESSAGE_ARGUMENT_TYPE.format(
                        position + 1, self.predicate.name, term.type_name, expected
                    )
                )

    @property
    def is_target(self):
        return self.predicate.is_target

    @property
    def variables(self) -> Tuple[Variable, ...]:
        """ Variables in order of first occurrence, without repeats """
        seen = []
        for term in self.args:
            if isinstance(term, Variable) and term not in seen:
                seen.append(term)
        return tuple(seen)

    @property
    def is_ground(self):
        return all(isinstance(term, Constant) for term in self.args)

    def negate(self):
        return Literal(self.predicate, self.args, not self.negated)

    def positive(self):
        return Literal(self.predicate, self.args, False)

    def substitute(self, substitution: Mapping[Variable, str]):
        """ Replace the bound variables with constants """
        return Literal(
            self.predicate,
            tuple(
                Constant(substitution[term], term.type_name)
                if isinstance(term, Variable) and term in substitution
                else term
                for term in self.args
            ),
            self.negated,
        )

    def rename(self, renaming: Mapping[Variable, Variable]):
        return Literal(
            self.predicate,
            tuple(renaming.get(term, term) for term in self.args),
            self.negated,
        )

    def ground_atom(self, substitution: Mapping[Variable, str] = None) -> Atom:
        """The atom of this literal under the substitution, the sign is not part
        of the atom"""
        args = []
        for term in self.args:
            if isinstance(term, Constant):
                args.append(term.name)
            elif substitution is not None and term in substitution:
                args.append(substitution[term])
            else:
                raise SchemaError(
                    ResolweConstants.EXCEPTION_MESSAGE_UNBOUND.format(term, self)
                )
        return Atom(self.predicate.name, tuple(args))

    def __str__(self):
        sign = ResolweConstants.NEGATION if self.negated else ""
        return f"{sign}{self.predicate.name}({','.join(str(t) for t in self.args)})"
