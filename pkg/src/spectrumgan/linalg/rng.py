"""Named, seedable random streams.

Every stream is a PCG64 generator keyed by ``(seed, *streams)`` so that
independent consumers (initialization, data, noise, evaluation) never
share state and the same seed always yields the same draws.
"""

from __future__ import annotations

import numpy as np

STREAM_DISC_INIT = 0
STREAM_GEN_INIT = 1
STREAM_DATA = 2
STREAM_NOISE = 3
STREAM_EVAL = 4
STREAM_POWER = 5
STREAM_PROBE = 6
STREAM_GRADCHECK = 7


def make_rng(seed: int, *streams: int) -> np.random.Generator:
    if seed < 0:
        raise ValueError("seed must be non-negative")
    sequence = np.random.SeedSequence([int(seed), *map(int, streams)])
    return np.random.Generator(np.random.PCG64(sequence))
