"""SplitMix64, the single PRNG used for every seeded choice in the package.

Stream definition (64-bit wrapping arithmetic)::

    state <- state + 0x9E3779B97F4A7C15
    z <- state
    z <- (z xor (z >> 30)) * 0xBF58476D1CE4E5B9
    z <- (z xor (z >> 27)) * 0x94D049BB133111EB
    output z xor (z >> 31)

Derived quantities:

* ``randint(n)``  = ``(next * n) >> 64`` plus one, a value in ``1..n``.
* ``random()``    = ``(next >> 11) * 2**-53``, a float in ``[0, 1)``.
* ``derive_seed(seed, i)`` = ``mix64(seed xor mix64((i + 1) * GOLDEN))``; used
  for per-trial sub-seeds so that serial and parallel runs agree.

Test vectors (seed 0): ``0xE220A8397B1DCDAF``, ``0x6E789E6AA1B965F4``,
``0x06C45D188009454F``.
"""
from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, index: int) -> int:
    return mix64((seed & MASK64) ^ mix64(((index + 1) * GOLDEN) & MASK64))


class SplitMix64:
    __slots__ = ("state",)

    def __init__(self, seed: int = 0):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        return mix64(self.state)

    def randint(self, n: int) -> int:
        """Uniform integer in ``1..n``."""
        return ((self.next_u64() * n) >> 64) + 1

    def random(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def bernoulli(self, p: float) -> bool:
        return self.random() < p

    def shuffle(self, items: list) -> None:
        # Fisher-Yates, high index first
        for i in range(len(items) - 1, 0, -1):
            j = self.randint(i + 1) - 1
            items[i], items[j] = items[j], items[i]


def u64_block(seed: int, start: int, count: int) -> np.ndarray:
    """Outputs ``start .. start+count-1`` (0-based) of the stream seeded with ``seed``.

    Same values as calling :meth:`SplitMix64.next_u64` repeatedly; the stream is
    counter based, so blocks can be produced without stepping through the prefix.
    """
    idx = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(seed & MASK64) + idx * np.uint64(GOLDEN)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
    return z ^ (z >> np.uint64(31))


def randint_block(seed: int, start: int, count: int, n: int) -> np.ndarray:
    """Vectorised :meth:`SplitMix64.randint` over a block of the stream."""
    z = u64_block(seed, start, count)
    # (z * n) >> 64 computed as hi*n + (lo*n >> 32) >> 32 to stay within uint64
    hi = z >> np.uint64(32)
    lo = z & np.uint64(0xFFFFFFFF)
    nn = np.uint64(n)
    with np.errstate(over="ignore"):
        t = hi * nn + ((lo * nn) >> np.uint64(32))
    return (t >> np.uint64(32)).astype(np.int64) + 1
