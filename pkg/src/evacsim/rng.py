"""Portable, seedable random stream used by every stochastic choice in a run.

The raw generator is PCG64 (PCG XSL-RR 128/64, O'Neill 2014) initialised by
numpy's ``SeedSequence(seed)``.  Only the raw 64-bit outputs are consumed;
bounded integers and permutations are derived here with documented
algorithms, so another implementation that reproduces PCG64 + SeedSequence
reproduces every run bit for bit:

* ``below(n)``: draw ``r``; reject while ``r < (2**64 - n) % n``; return ``r % n``.
* ``shuffle(xs)``: Durstenfeld/Fisher-Yates, ``i`` from ``len-1`` down to 1,
  swap ``xs[i]`` with ``xs[below(i + 1)]``.
* ``sample(xs, k)``: partial Fisher-Yates, ``i`` from 0 to ``k-1``, swap
  ``xs[i]`` with ``xs[i + below(len - i)]``; the first ``k`` items.
"""

from __future__ import annotations

import zlib
from typing import MutableSequence, Sequence, TypeVar

import numpy as np

T = TypeVar("T")

_TWO64 = 1 << 64
_BLOCK = 1024


class RandomStream:
    """Buffered PCG64 stream; buffering never changes the consumed sequence."""

    def __init__(self, seed: int):
        if seed < 0:
            raise ValueError(f"seed must be non-negative, got {seed}")
        self.seed = seed
        self._bitgen = np.random.PCG64(np.random.SeedSequence(seed))
        self._buf: list[int] = []
        self._pos = 0

    def raw(self) -> int:
        if self._pos == len(self._buf):
            self._buf = self._bitgen.random_raw(_BLOCK).tolist()
            self._pos = 0
        r = self._buf[self._pos]
        self._pos += 1
        return r

    def below(self, n: int) -> int:
        if n <= 0:
            raise ValueError("below() needs n >= 1")
        if n == 1:
            return 0
        threshold = (_TWO64 - n) % n
        while True:
            r = self.raw()
            if r >= threshold:
                return r % n

    def shuffle(self, xs: MutableSequence[T]) -> None:
        for i in range(len(xs) - 1, 0, -1):
            j = self.below(i + 1)
            xs[i], xs[j] = xs[j], xs[i]

    def sample(self, xs: Sequence[T], k: int) -> list[T]:
        pool = list(xs)
        if not 0 <= k <= len(pool):
            raise ValueError(f"cannot sample {k} from {len(pool)} items")
        m = len(pool)
        for i in range(k):
            j = i + self.below(m - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]

    def choice(self, xs: Sequence[T]) -> T:
        return xs[self.below(len(xs))]


def derive_seed(master_seed: int, scenario_id: str, repetition: int) -> int:
    """Per-run seed from (master seed, scenario name, repetition index).

    Stable across processes and platforms: the scenario name enters through
    CRC-32, and the triple is mixed by ``SeedSequence``.  The result fits in
    63 bits so it prints and round-trips as a plain integer.
    """
    ss = np.random.SeedSequence(
        master_seed, spawn_key=(zlib.crc32(scenario_id.encode("utf-8")), repetition)
    )
    return int(ss.generate_state(1, np.uint64)[0]) >> 1
