# ⚠️ Reproducibility Notice:
# Sample i of a batch always draws from child stream i of SeedSequence(seed),
# whatever the number of workers. Change RNG_ALGORITHM if this contract changes.

from __future__ import annotations

import numpy as np

RNG_ALGORITHM = "numpy.PCG64+SeedSequence.spawn"
SEED_BITS = 63


def fresh_seed() -> int:
    """OS-entropy seed, reduced to 63 bits so it survives JSON and CLI flags."""
    return int(np.random.SeedSequence().entropy) & ((1 << SEED_BITS) - 1)


def make_rng(seed: int | np.random.SeedSequence) -> np.random.Generator:
    seq = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    return np.random.Generator(np.random.PCG64(seq))


def spawn_streams(seed: int, count: int) -> list[np.random.SeedSequence]:
    """Independent child sequences, one per sample."""
    return np.random.SeedSequence(seed).spawn(count)
