"""Seed derivation for reproducible oracles.

Every random draw in the package goes through a ``numpy`` Generator built
from an explicit seed plus a path of integers naming the consumer, so
results never depend on call order or on worker scheduling.
"""

from typing import List, Sequence, Union

import numpy as np


SeedLike = Union[int, Sequence[int]]


def _entropy(values: Sequence[int]) -> List[int]:
    # SeedSequence takes non-negative words of any size; fold signs injectively
    out = []
    for v in values:
        v = int(v)
        out.append(2 * v if v >= 0 else -2 * v - 1)
    return out


def derive_rng(seed: SeedLike, *path: int) -> np.random.Generator:
    """Generator for ``seed`` refined by ``path``.

    ``derive_rng(s, k)`` for k = 0, 1, ... gives independent streams; the
    stream for a given (s, k) never changes.
    """
    if isinstance(seed, (int, np.integer)):
        words = [int(seed)]
    else:
        words = [int(s) for s in seed]
    words.extend(int(p) for p in path)
    return np.random.default_rng(_entropy(words))


def stable_hash(values: Sequence[int]) -> int:
    """Order-sensitive 63-bit digest of an integer tuple, stable across runs."""
    state = np.random.SeedSequence([len(values)] + _entropy(values)).generate_state(2, np.uint32)
    return (int(state[0]) << 31) | (int(state[1]) >> 1)
