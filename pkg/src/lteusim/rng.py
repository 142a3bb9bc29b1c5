"""Named RNG substreams.

Every random draw in a run comes from a substream addressed by
(seed, label...), so results do not depend on the order in which
components ask for randomness.
"""

import hashlib

import numpy as np


def substream(seed: int, *labels) -> np.random.Generator:
    """Independent PCG64 generator for (seed, labels).

    Labels may be strings or numbers; they are hashed (sha256, stable
    across runs and platforms) into the seed material.
    """
    words = [int(seed) & 0xFFFFFFFFFFFFFFFF]
    for lab in labels:
        digest = hashlib.sha256(repr(lab).encode("utf-8")).digest()
        words.extend(int.from_bytes(digest[i:i + 4], "little") for i in range(0, 16, 4))
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(words)))
