"""Root-seed handling and stream splitting.

All randomness in the package flows from 64-bit root seeds through numpy's
PCG64 generator, which is seedable and platform-independent.  Derived streams
(substrate vs. workload, per-request strategy randomness) are split off the
root via SeedSequence with the extra keys listed below, so every stream is
independent and reproducible:

    (seed, 0)             substrate topology draws
    (seed, 1)             request-stream draws
    (seed, 2, vnr_id)     per-request swarm search
    (seed, 3, vnr_id)     per-request random-baseline draws
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1

SUBSTRATE_STREAM = 0
WORKLOAD_STREAM = 1
SWARM_STREAM = 2
RANDOM_BASELINE_STREAM = 3


def normalize_seed(seed: int) -> int:
    """Map any Python int onto the unsigned 64-bit range SeedSequence needs."""
    return int(seed) & _MASK64


def rng_from(seed: int, *keys: int) -> np.random.Generator:
    """PCG64 generator for the (seed, *keys) stream."""
    entropy = [normalize_seed(seed)] + [normalize_seed(k) for k in keys]
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))


def derive_seed(seed: int, *keys: int) -> int:
    """A 64-bit child seed for code that wants an int rather than a stream."""
    entropy = [normalize_seed(seed)] + [normalize_seed(k) for k in keys]
    return int(np.random.SeedSequence(entropy).generate_state(1, dtype=np.uint64)[0])
