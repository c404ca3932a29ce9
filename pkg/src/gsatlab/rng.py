"""Reproducible random streams.

All randomness in the toolkit flows from 64-bit unsigned seeds. Substreams
(one per try, per dataset candidate, per grid cell and instance) are derived
with a SplitMix64-style construction: the child seed is the SplitMix64
finalizer applied to ``parent_seed XOR step_key``, where the step key is the
substream index scrambled by an odd multiplier. Derived seeds feed
``random.Random`` (Mersenne Twister), which is seedable and portable.
"""

from __future__ import annotations

import random

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def mix64(x: int) -> int:
    """SplitMix64 finalizer: a bijective 64-bit scramble."""
    x &= _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def substream(seed: int, *path: int) -> int:
    """Derive a child seed for the substream addressed by ``path``.

    Each path component splits the parent stream; distinct paths give
    independent-looking 64-bit seeds. Deterministic in (seed, path).
    """
    s = seed & _MASK64
    for step in path:
        s = mix64(s ^ (((step + 1) * _GOLDEN) & _MASK64))
    return s


def rng_for(seed: int, *path: int) -> random.Random:
    """A fresh ``random.Random`` positioned at the given substream."""
    return random.Random(substream(seed, *path))
