""" Closed-world subgraph database """

from collections import defaultdict
import itertools
import logging
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

from ..const import ResolweConstants
from ..errors import SchemaError
from .terms import Atom, Constant, Literal, SchemaSet

logger = logging.getLogger(__name__)


class SubgraphDatabase:
    """One streamed subgraph: the true ground atoms, indexed by predicate and by
    (predicate, argument position, constant). Any ground atom that is not listed is
    false. Type domains are the constants seen at typed argument positions plus any
    constants passed in explicitly. Instances are not modified after construction"""

    def __init__(
        self,
        schemas: SchemaSet,
        atoms: Iterable[Atom] = (),
        constants: Optional[Mapping[str, Iterable[str]]] = None,
        query_predicates: Iterable[str] = (),
    ):
        self._schemas = schemas
        self._atoms: FrozenSet[Atom] = frozenset(atoms)
        domains = defaultdict(set)
        by_predicate = defaultdict(set)
        by_position = defaultdict(list)
        for atom in self._atoms:
            schema = schemas[atom.predicate]
            if len(atom.args) != schema.arity:
                raise SchemaError(
                    ResolweConstants.EXCEPTION_MESSAGE_ARITY.format(
                        atom.predicate, schema.arity, len(atom.args)
                    )
                )
            by_predicate[atom.predicate].add(atom.args)
            for position, (constant, type_name) in enumerate(
                zip(atom.args, schema.arg_types)
            ):
                domains[type_name].add(constant)
                by_position[(atom.predicate, position, constant)].append(atom.args)
        if constants is not None:
            for type_name, names in constants.items():
                domains[type_name].update(names)
        self._domains: Dict[str, Tuple[str, ...]] = {
            type_name: tuple(sorted(names)) for type_name, names in domains.items()
        }
        self._by_predicate = {
            name: frozenset(rows) for name, rows in by_predicate.items()
        }
        self._by_position = {key: tuple(rows) for key, rows in by_position.items()}
        self._query_predicates = frozenset(query_predicates)
        for name in self._query_predicates:
            if not schemas[name].is_target:
                raise SchemaError(
                    ResolweConstants.EXCEPTION_MESSAGE_HIDE_TARGET.format(name)
                )

    @property
    def schemas(self) -> SchemaSet:
        return self._schemas

    @property
    def atoms(self) -> FrozenSet[Atom]:
        return self._atoms

    @property
    def constants_by_type(self) -> Dict[str, Tuple[str, ...]]:
        return dict(self._domains)

    @property
    def query_predicates(self) -> FrozenSet[str]:
        """ Target predicates marked hidden for prediction in this subgraph """
        return self._query_predicates

    def domain(self, type_name) -> Tuple[str, ...]:
        """ Sorted constants of a type, empty when the type was never observed """
        return self._domains.get(type_name, ())

    def contains(self, atom: Atom) -> bool:
        """ Unchecked closed-world lookup """
        return atom.args in self._by_predicate.get(atom.predicate, ())

    def rows(self, predicate) -> FrozenSet[Tuple[str, ...]]:
        return self._by_predicate.get(predicate, frozenset())

    def posting(self, predicate, position, constant) -> Tuple[Tuple[str, ...], ...]:
        return self._by_position.get((predicate, position, constant), ())

    def holds(self, lit: Literal) -> bool:
        """ Truth of a ground literal under the closed world assumption """
        if lit.predicate.name not in self._schemas:
            raise SchemaError(
                ResolweConstants.EXCEPTION_MESSAGE_UNKNOWN_PREDICATE.format(
                    lit.predicate.name
                )
            )
        for term in lit.args:
            if not isinstance(term, Constant):
                raise SchemaError(
                    ResolweConstants.EXCEPTION_MESSAGE_NOT_GROUND.format(lit)
                )
            if term.name not in self.domain(term.type_name):
                raise SchemaError(
                    ResolweConstants.EXCEPTION_MESSAGE_UNKNOWN_CONSTANT.format(
                        term.name, term.type_name
                    )
                )
        return self.contains(lit.ground_atom()) != lit.negated

    def groundings(self, predicate) -> List[Atom]:
        """ Every type-consistent ground atom of a predicate over the domains """
        schema = self._schemas[predicate]
        return [
            Atom(predicate, args)
            for args in itertools.product(
                *(self.domain(type_name) for type_name in schema.arg_types)
            )
        ]

    def query_atoms(self) -> List[Atom]:
        """ Candidate query atoms of the hidden predicates, in a stable order """
        return [
            atom
            for name in sorted(self._query_predicates)
            for atom in self.groundings(name)
        ]

    def target_atoms(self) -> List[Atom]:
        return [
            atom
            for schema in self._schemas.targets
            for atom in self.groundings(schema.name)
        ]

    def without(self, predicates: Iterable[str]) -> "SubgraphDatabase":
        """ A copy with the atoms of the predicates removed and the domains kept """
        dropped = frozenset(predicates)
        return SubgraphDatabase(
            self._schemas,
            (atom for atom in self._atoms if atom.predicate not in dropped),
            constants=self._domains,
            query_predicates=self._query_predicates,
        )

    def __len__(self):
        return len(self._atoms)

    def __eq__(self, other):
        if not isinstance(other, SubgraphDatabase):
            return NotImplemented
        return (
            self._atoms == other._atoms
            and self._domains == other._domains
            and self._query_predicates == other._query_predicates
        )

    def __hash__(self):
        return hash(self._atoms)

    def __repr__(self):
        return (
            f"{self.__class__.__name__}(atoms={len(self._atoms)},"
            f" domains={ {k: len(v) for k, v in self._domains.items()} },"
            f" hidden={sorted(self._query_predicates)})"
        )


def holds(db: SubgraphDatabase, lit: Literal) -> bool:
    """ Truth of a ground literal in a subgraph, see SubgraphDatabase.holds """
    return db.holds(lit)
