"""Random streams.

Everything random in medianlab goes through Philox, a counter-based
generator, so a stream is fixed by its integer seed alone.
"""

import numpy as np


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(int(seed)))


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Stream for one trial; trial ``t`` of a run seeded ``s`` uses seed ``s + t``."""
    return make_rng(int(seed) + int(trial))
