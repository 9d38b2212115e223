"""
Deterministic random streams.

All randomness in the pipeline comes from numpy's ``PCG64`` generator. A
single 64-bit seed is split into independent sub-streams, one per purpose,
with ``SeedSequence`` spawn keys::

    SeedSequence(seed, spawn_key=(purpose, *extra))

so that, for example, changing how many Gamma0 retries a trial needs never
shifts the edges sampled for the next trial.
"""

from __future__ import annotations

import hashlib
from enum import IntEnum

import numpy as np

SEED_BITS = 64


class Stream(IntEnum):
    """Purposes that get their own sub-stream of a trial seed."""

    SAMPLING = 0
    GAMMA = 1
    EXPANSION = 2
    PROPERTIES = 3


def validate_seed(seed: int) -> int:
    if not 0 <= seed < 2**SEED_BITS:
        raise ValueError(f"Seed must be a 64-bit unsigned integer, got {seed}")
    return seed


def generator(seed: int, stream: Stream, *extra: int) -> np.random.Generator:
    """Return the generator for ``stream`` (and optional sub-keys) of ``seed``."""
    sequence = np.random.SeedSequence(
        validate_seed(seed), spawn_key=(int(stream), *extra)
    )
    return np.random.Generator(np.random.PCG64(sequence))


def derive_trial_seed(master_seed: int, trial_index: int) -> int:
    """
    Per-trial seed: the first 8 bytes (big-endian) of
    ``blake2b(f"{master_seed}:{trial_index}", digest_size=8)``.

    Depends only on its arguments, so trials can be scheduled in any order
    or on any worker.
    """
    digest = hashlib.blake2b(
        f"{master_seed}:{trial_index}".encode("ascii"), digest_size=8
    ).digest()
    return int.from_bytes(digest, "big")
