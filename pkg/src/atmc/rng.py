"""Deterministic random-number streams.

Every Monte Carlo trial owns an independent PCG64 stream derived purely from
(root seed, key integers), so trials can run in any order, on any number of
workers, in any process, and reproduce bit-for-bit.
"""

import numpy as np


def stream(seed, *key):
    """Generator for the stream identified by (seed, *key).

    Pure function: equal arguments give generators that produce identical
    draws everywhere. Trial streams use key = (symbol value, trial index).
    """
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.PCG64(ss))


def derive_seed(seed, index):
    """Per-point root seed for sweep point `index`.

    Index 0 keeps the base seed, so a singleton sweep reproduces a direct
    evaluation of the base config.
    """
    return (int(seed) + int(index)) % 2**64
