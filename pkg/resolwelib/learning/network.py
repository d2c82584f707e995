""" Ground Markov network of a weighted model on one subgraph """

from dataclasses import dataclass
import logging
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..const import ResolweConstants
from ..errors import SchemaError
from ..logic import Atom, ConjunctiveFormula, Literal, SubgraphDatabase, selected_bindings
from .model import WeightedModel

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GroundFeature:
    """One grounding of a clause reduced by the evidence. It is true when every
    query atom in `atoms` has the matching entry of `values`, or, when
    `complemented`, when at least one differs"""

    clause: int
    atoms: Tuple[int, ...]
    values: Tuple[bool, ...]
    complemented: bool = False

    def value(self, state) -> bool:
        holds = all(state[atom] == value for atom, value in zip(self.atoms, self.values))
        return holds != self.complemented


def _target_body(f: ConjunctiveFormula) -> Tuple[List[Literal], bool]:
    """The target literals whose conjunction decides a selected grounding, and
    whether the grounding's value is its complement. E ^ (A => C) is true on a
    selected grounding unless A ^ !C holds"""
    if not f.is_implication:
        return list(f.enforcer), False
    body = [
        lit
        for index, lit in enumerate(f.literals)
        if lit.is_target and index != f.consequent
    ]
    body.append(f.literals[f.consequent].negate())
    return body, True


class GroundNetwork:
    """The query atoms X of a subgraph, the ground features that mention at least
    one of them, and per clause the number of groundings the observed atoms
    already make true"""

    def __init__(
        self,
        query_atoms: Sequence[Atom],
        features: Sequence[GroundFeature],
        evidence_counts: Sequence[float],
    ):
        self._query_atoms = tuple(query_atoms)
        self._index = {atom: i for i, atom in enumerate(self._query_atoms)}
        self._features = tuple(features)
        self._evidence_counts = np.asarray(evidence_counts, dtype=float)
        self._atom_features: List[List[int]] = [[] for _ in self._query_atoms]
        for position, feature in enumerate(self._features):
            for atom in feature.atoms:
                self._atom_features[atom].append(position)

    @property
    def query_atoms(self) -> Tuple[Atom, ...]:
        return self._query_atoms

    @property
    def features(self) -> Tuple[GroundFeature, ...]:
        return self._features

    @property
    def evidence_counts(self) -> np.ndarray:
        return self._evidence_counts

    @property
    def clause_count(self):
        return len(self._evidence_counts)

    def index(self, atom: Atom) -> int:
        return self._index[atom]

    def atom_features(self, atom: int) -> List[int]:
        """ Positions of the features that mention a query atom """
        return self._atom_features[atom]

    def counts(self, state) -> np.ndarray:
        """ n_i for every clause under a truth assignment to the query atoms """
        result = self._evidence_counts.copy()
        for feature in self._features:
            if feature.value(state):
                result[feature.clause] += 1
        return result

    def counts_matrix(self, states: np.ndarray) -> np.ndarray:
        """ Row-wise counts for a (samples, atoms) boolean matrix """
        states = np.asarray(states, dtype=bool)
        result = np.tile(self._evidence_counts, (states.shape[0], 1))
        for feature in self._features:
            holds = np.all(
                states[:, list(feature.atoms)] == np.array(feature.values), axis=1
            )
            if feature.complemented:
                holds = ~holds
            result[:, feature.clause] += holds
        return result

    def state_of(self, db: SubgraphDatabase) -> np.ndarray:
        """ The truth of the query atoms as listed in a database """
        return np.array([db.contains(atom) for atom in self._query_atoms], dtype=bool)

    def __len__(self):
        return len(self._query_atoms)

    def __repr__(self):
        return (
            f"{self.__class__.__name__}(atoms={len(self._query_atoms)},"
            f" features={len(self._features)})"
        )


def ground_model(
    model: WeightedModel, db: SubgraphDatabase, hidden: Iterable[Atom]
) -> GroundNetwork:
    """Ground every clause on a subgraph. Groundings whose evidence part fails
    are dropped, those decided by observed atoms only add to the evidence counts
    and the rest become features over the hidden atoms"""
    query_atoms = list(dict.fromkeys(hidden))
    for atom in query_atoms:
        schema = db.schemas[atom.predicate]
        if not schema.is_target:
            raise SchemaError(
                ResolweConstants.EXCEPTION_MESSAGE_HIDE_TARGET.format(atom.predicate)
            )
    position = {atom: i for i, atom in enumerate(query_atoms)}
    features: List[GroundFeature] = []
    evidence_counts = np.zeros(len(model.clauses))

    for clause, f in enumerate(model.formulas):
        body, complemented = _target_body(f)
        for binding in selected_bindings(db, f):
            required: Dict[int, bool] = {}
            decided: Optional[bool] = None
            for lit in body:
                atom = lit.ground_atom(binding)
                need = not lit.negated
                slot = position.get(atom)
                if slot is None:
                    if db.contains(atom) != need:
                        decided = False
                        break
                elif required.setdefault(slot, need) != need:
                    decided = False
                    break
            else:
                if not required:
                    decided = True
            if decided is None:
                features.append(
                    GroundFeature(
                        clause,
                        tuple(required),
                        tuple(required.values()),
                        complemented,
                    )
                )
            elif decided != complemented:
                evidence_counts[clause] += 1

    logger.debug(
        "Grounded %d clauses into %d features over %d atoms",
        len(model.clauses),
        len(features),
        len(query_atoms),
    )
    return GroundNetwork(query_atoms, features, evidence_counts)


def true_grounding_count(
    f: ConjunctiveFormula, db: SubgraphDatabase, assignment: Mapping[Atom, bool]
) -> int:
    """Number of true groundings of a formula when the assigned atoms take the
    given values and every other atom is read from the database"""
    body, complemented = _target_body(f)
    count = 0
    for binding in selected_bindings(db, f):
        holds = True
        for lit in body:
            atom = lit.ground_atom(binding)
            truth = assignment[atom] if atom in assignment else db.contains(atom)
            if truth == lit.negated:
                holds = False
                break
        if holds != complemented:
            count += 1
    return count
