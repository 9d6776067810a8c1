from src.sampler.algorithm_a import (
    ConditionedTreeSampler,
    SampleConfig,
    SampleResult,
    batch_metadata,
    sample_batch,
    sample_tree,
)
from src.sampler.exact import enumerate_exact
from src.sampler.feasibility import feasible
from src.sampler.multinomial import ConditionedCounts, conditioned_multinomial
from src.sampler.rng import RNG_ALGORITHM, fresh_seed, make_rng, spawn_streams

__all__ = [
    "ConditionedTreeSampler",
    "SampleConfig",
    "SampleResult",
    "batch_metadata",
    "sample_batch",
    "sample_tree",
    "enumerate_exact",
    "feasible",
    "ConditionedCounts",
    "conditioned_multinomial",
    "RNG_ALGORITHM",
    "fresh_seed",
    "make_rng",
    "spawn_streams",
]
