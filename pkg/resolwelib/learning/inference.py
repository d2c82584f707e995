""" Exact and Gibbs sampling inference over ground networks """

import logging
from typing import Dict, Iterable, Optional, Tuple

import numpy as np
from scipy.special import expit, logsumexp

from ..const import ResolweConstants
from ..errors import InferenceBoundError
from ..logic import Atom, SubgraphDatabase
from .model import WeightedModel
from .network import GroundNetwork, ground_model

logger = logging.getLogger(__name__)


def enumerate_states(n: int) -> np.ndarray:
    """ All 2^n truth assignments as rows, atom j is bit j of the row number """
    return ((np.arange(1 << n)[:, None] >> np.arange(n)) & 1).astype(bool)


def _check_bound(network: GroundNetwork):
    if len(network) > ResolweConstants.EXACT_INFERENCE_MAX_ATOMS:
        raise InferenceBoundError(
            ResolweConstants.EXCEPTION_MESSAGE_EXACT_BOUND.format(
                len(network), ResolweConstants.EXACT_INFERENCE_MAX_ATOMS
            )
        )


def exact_distribution(
    network: GroundNetwork, weights: np.ndarray
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(states, counts, probabilities) of every assignment to the query atoms,
    normalized by the explicit partition function"""
    _check_bound(network)
    states = enumerate_states(len(network))
    counts = network.counts_matrix(states)
    scores = counts @ np.asarray(weights, dtype=float)
    probs = np.exp(scores - logsumexp(scores))
    return states, counts, probs


def exact_marginals(network: GroundNetwork, weights: np.ndarray) -> np.ndarray:
    if len(network) == 0:
        return np.zeros(0)
    states, _, probs = exact_distribution(network, weights)
    return probs @ states


def exact_expected_counts(network: GroundNetwork, weights: np.ndarray) -> np.ndarray:
    """ E[n_i] under the model's conditional distribution """
    _, counts, probs = exact_distribution(network, weights)
    return probs @ counts


def exact_log_likelihood(
    network: GroundNetwork, weights: np.ndarray, state: np.ndarray
) -> float:
    """ log P(X = state | evidence) """
    _check_bound(network)
    weights = np.asarray(weights, dtype=float)
    scores = network.counts_matrix(enumerate_states(len(network))) @ weights
    return float(network.counts(state) @ weights - logsumexp(scores))


def exact_conditional(
    model: WeightedModel, db: SubgraphDatabase, hidden: Iterable[Atom]
) -> Dict[Atom, float]:
    """ Marginal probability of each hidden atom by full enumeration """
    network = ground_model(model, db, hidden)
    marginals = exact_marginals(network, model.weights)
    return {atom: float(p) for atom, p in zip(network.query_atoms, marginals)}


class GibbsSampler:
    """Single-site Gibbs sampling over a ground network. The estimates average
    each atom's conditional probability over the sweeps"""

    def __init__(
        self,
        network: GroundNetwork,
        weights: np.ndarray,
        rng: np.random.Generator,
    ):
        self._network = network
        self._weights = np.asarray(weights, dtype=float)
        self._rng = rng
        # Per atom: (clause, other atoms, their values, sign of the atom's effect)
        self._blankets = []
        for atom in range(len(network)):
            blanket = []
            for position in network.atom_features(atom):
                feature = network.features[position]
                others = [
                    (other, value)
                    for other, value in zip(feature.atoms, feature.values)
                    if other != atom
                ]
                own = feature.values[feature.atoms.index(atom)]
                sign = (1.0 if own else -1.0) * (-1.0 if feature.complemented else 1.0)
                blanket.append((feature.clause, others, sign))
            self._blankets.append(blanket)

    def conditional(self, state: np.ndarray, atom: int) -> float:
        """ P(atom = true | every other query atom) """
        delta = 0.0
        for clause, others, sign in self._blankets[atom]:
            if all(state[other] == value for other, value in others):
                delta += sign * self._weights[clause]
        return float(expit(delta))

    def sweep(self, state: np.ndarray) -> np.ndarray:
        """ Resample every atom in order, in place, returning the conditionals used """
        draws = self._rng.random(len(state))
        probs = np.empty(len(state))
        for atom in range(len(state)):
            probs[atom] = self.conditional(state, atom)
            state[atom] = draws[atom] < probs[atom]
        return probs

    def marginals(
        self, burn_in: int, samples: int, initial: Optional[np.ndarray] = None
    ) -> np.ndarray:
        n = len(self._network)
        if initial is None:
            state = self._rng.random(n) < 0.5
        else:
            state = np.array(initial, dtype=bool)
        for _ in range(burn_in):
            self.sweep(state)
        total = np.zeros(n)
        for _ in range(samples):
            total += self.sweep(state)
        return total / max(samples, 1)


def gibbs_conditional(
    model: WeightedModel,
    db: SubgraphDatabase,
    hidden: Iterable[Atom],
    burn_in: int = ResolweConstants.PREDICT_GIBBS_BURN_IN,
    samples: int = ResolweConstants.PREDICT_GIBBS_SAMPLES,
    seed: int = ResolweConstants.DEFAULT_SEED,
    rng: Optional[np.random.Generator] = None,
) -> Dict[Atom, float]:
    """Marginal estimates of the hidden atoms, deterministic for a seed. A given
    generator is used instead of the seed"""
    network = ground_model(model, db, hidden)
    if rng is None:
        rng = np.random.default_rng(seed)
    sampler = GibbsSampler(network, model.weights, rng)
    marginals = sampler.marginals(burn_in, samples)
    return {atom: float(p) for atom, p in zip(network.query_atoms, marginals)}
