""" Weight learning and inference for weighted clause models """

from .inference import (
    GibbsSampler,
    enumerate_states,
    exact_conditional,
    exact_distribution,
    exact_expected_counts,
    exact_log_likelihood,
    exact_marginals,
    gibbs_conditional,
)
from .learner import (
    SAMPLER_EXACT,
    SAMPLER_GIBBS,
    ResolweTrainer,
    cd_gradient,
    cd_step,
    predict,
    subgraph_rng,
)
from .model import LearnConfig, WeightedFormula, WeightedModel, prior_clause
from .network import GroundFeature, GroundNetwork, ground_model, true_grounding_count

__all__ = [
    # From inference
    "GibbsSampler",
    "enumerate_states",
    "exact_conditional",
    "exact_distribution",
    "exact_expected_counts",
    "exact_log_likelihood",
    "exact_marginals",
    "gibbs_conditional",
    # From learner
    "SAMPLER_EXACT",
    "SAMPLER_GIBBS",
    "ResolweTrainer",
    "cd_gradient",
    "cd_step",
    "predict",
    "subgraph_rng",
    # From model
    "LearnConfig",
    "WeightedFormula",
    "WeightedModel",
    "prior_clause",
    # From network
    "GroundFeature",
    "GroundNetwork",
    "ground_model",
    "true_grounding_count",
]
