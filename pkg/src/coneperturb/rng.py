"""Counter-based random streams.

Streams are Philox generators keyed by ``(seed, *key)``. Two streams with
different keys never overlap, so independent searches can run in any order and
still reproduce bit for bit.
"""

import zlib

import numpy as np


def _as_int(part):
    if isinstance(part, str):
        return zlib.crc32(part.encode())
    return int(part)


def stream(seed, *key):
    """Return a ``numpy.random.Generator`` for ``seed`` and a path of int/str keys."""
    seq = np.random.SeedSequence(int(seed) & (2**64 - 1), spawn_key=tuple(_as_int(k) for k in key))
    return np.random.Generator(np.random.Philox(seq))


def split(rng, n):
    """Split ``rng`` into ``n`` independent child streams."""
    return rng.spawn(n)
