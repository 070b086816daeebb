"""Seeded random streams.

Every random draw in the package goes through :func:`make_rng`, which builds a
``numpy.random.Generator`` backed by PCG64.  The stream is keyed by the triple
``(seed, tag, index)``: the tag is hashed with CRC-32 so that the entropy pool
handed to ``SeedSequence`` is a plain list of integers and therefore identical
on every platform.
"""

import zlib

import numpy as np


def _tag_word(tag: str) -> int:
    return zlib.crc32(tag.encode("utf-8"))


def make_rng(seed: int, tag: str, index: int = 0) -> np.random.Generator:
    """Return an independent PCG64 generator for ``(seed, tag, index)``."""
    if seed < 0 or index < 0:
        raise ValueError("seed and index must be non-negative")
    ss = np.random.SeedSequence([int(seed), _tag_word(tag), int(index)])
    return np.random.Generator(np.random.PCG64(ss))


def derive_seed(master: int, index: int) -> int:
    """Mix a master seed and a trial index into a 64-bit trial seed."""
    ss = np.random.SeedSequence([int(master), _tag_word("trial"), int(index)])
    return int(ss.generate_state(1, dtype=np.uint64)[0])
