""" Streaming contrastive divergence and prediction """

import logging
import time
from typing import Iterable, Optional, Sequence

import numpy as np

from ..const import ResolweConstants
from ..logic import Atom, SubgraphDatabase
from ..metrics import RankedPrediction
from ..observable import Observable
from .inference import (
    GibbsSampler,
    exact_conditional,
    exact_expected_counts,
    gibbs_conditional,
)
from .model import LearnConfig, WeightedModel
from .network import ground_model

logger = logging.getLogger(__name__)

SAMPLER_GIBBS = "gibbs"
SAMPLER_EXACT = "exact"


def subgraph_rng(seed: int, ordinal: int) -> np.random.Generator:
    """ Private generator of the sampler for one subgraph of the stream """
    return np.random.default_rng([seed, ordinal])


def cd_gradient(
    model: WeightedModel,
    db: SubgraphDatabase,
    config: Optional[LearnConfig] = None,
    rng: Optional[np.random.Generator] = None,
    sampler: str = SAMPLER_GIBBS,
) -> np.ndarray:
    """n_i(data) - n_i(sample) with every target atom of the subgraph as a query
    atom. The sample comes from cd_chain_length Gibbs sweeps started at the data
    state, or is replaced by the exact model expectation"""
    config = config or model.config
    network = ground_model(model, db, db.target_atoms())
    data = network.state_of(db)
    data_counts = network.counts(data)
    weights = model.weights
    if sampler == SAMPLER_EXACT:
        return data_counts - exact_expected_counts(network, weights)
    if sampler != SAMPLER_GIBBS:
        raise ValueError(
            ResolweConstants.EXCEPTION_MESSAGE_CONFIG_VALUE.format("sampler", sampler)
        )
    if rng is None:
        rng = subgraph_rng(config.rng_seed, 0)
    chain = GibbsSampler(network, weights, rng)
    state = data.copy()
    for _ in range(config.cd_chain_length):
        chain.sweep(state)
    return data_counts - network.counts(state)


def cd_step(
    model: WeightedModel,
    db: SubgraphDatabase,
    config: Optional[LearnConfig] = None,
    rng: Optional[np.random.Generator] = None,
    sampler: str = SAMPLER_GIBBS,
) -> WeightedModel:
    """ One penalized gradient step, w += rate * (g - w / variance) """
    config = config or model.config
    gradient = cd_gradient(model, db, config, rng, sampler)
    weights = model.weights
    updated = weights + config.learning_rate * (
        gradient - weights / config.prior_variance
    )
    return model.with_weights(updated)


class ResolweTrainer(Observable):
    """Single writer of a model's weights along a stream of fully observed
    subgraphs"""

    def __init__(self, model: WeightedModel, config: Optional[LearnConfig] = None):
        super().__init__()
        self._config = config or model.config
        self._model = model.with_config(self._config)
        self._ordinal = 0
        self._elapsed = 0.0

    @property
    def model(self) -> WeightedModel:
        return self._model

    @property
    def subgraphs(self):
        return self._ordinal

    @property
    def elapsed(self):
        return self._elapsed

    def observe(self, db: SubgraphDatabase):
        start = time.monotonic()
        rng = subgraph_rng(self._config.rng_seed, self._ordinal)
        self._model = cd_step(self._model, db, self._config, rng)
        self._elapsed += time.monotonic() - start
        self._ordinal += 1
        self._on_change(self, "subgraph", self._ordinal)

    def train(self, stream: Iterable[SubgraphDatabase]) -> WeightedModel:
        """ One pass over the stream """
        seen = 0
        for db in stream:
            self.observe(db)
            seen += 1
        logger.info(
            "Trained %d clauses on %d subgraphs in %.3fs",
            len(self._model),
            seen,
            self._elapsed,
        )
        return self._model

    def fit(self, open_stream) -> WeightedModel:
        """ config.passes passes, open_stream returns a fresh stream for each """
        for number in range(self._config.passes):
            logger.info("Training pass %d of %d", number + 1, self._config.passes)
            self.train(open_stream())
        return self._model

    def __repr__(self):
        return (
            f"{self.__class__.__name__}(clauses={len(self._model)},"
            f" subgraphs={self._ordinal})"
        )


def predict(
    model: WeightedModel,
    db: SubgraphDatabase,
    hidden: Optional[Sequence[Atom]] = None,
    ordinal: int = 0,
) -> RankedPrediction:
    """Score the hidden atoms, exactly when there are few enough and by Gibbs
    sampling otherwise. Labels are read from the database. The hidden atoms
    default to the groundings of the subgraph's hidden predicates. The sampler
    of the subgraph at `ordinal` in its stream draws from its own generator"""
    hidden = list(db.query_atoms() if hidden is None else hidden)
    if not hidden:
        return RankedPrediction(())
    if len(hidden) <= ResolweConstants.EXACT_INFERENCE_MAX_ATOMS:
        marginals = exact_conditional(model, db, hidden)
    else:
        marginals = gibbs_conditional(
            model, db, hidden, rng=subgraph_rng(model.config.rng_seed, ordinal)
        )
    atoms = list(marginals)
    return RankedPrediction.from_scores(
        atoms,
        [marginals[atom] for atom in atoms],
        [db.contains(atom) for atom in atoms],
    )
