"""Deterministic PRNG: a splitmix64-seeded xoshiro256** stream.

Both algorithms are specified bit-for-bit so that any reimplementation in
another language produces identical draw sequences from identical seeds.
All arithmetic is modulo 2**64.
"""

from __future__ import annotations

MASK64 = 0xFFFFFFFFFFFFFFFF


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & MASK64


def splitmix64(state: int) -> tuple[int, int]:
    """Advance a splitmix64 state by one step; returns (new_state, output)."""
    state = (state + 0x9E3779B97F4A7C15) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return state, z ^ (z >> 31)


class Rng:
    """xoshiro256** generator whose 256-bit state is filled from splitmix64.

    The scrambler is the ** variant: rotl(s1 * 5, 7) * 9.
    """

    __slots__ = ("_s0", "_s1", "_s2", "_s3")

    def __init__(self, seed: int):
        seed &= MASK64
        sm = seed
        sm, self._s0 = splitmix64(sm)
        sm, self._s1 = splitmix64(sm)
        sm, self._s2 = splitmix64(sm)
        sm, self._s3 = splitmix64(sm)

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self._s0, self._s1, self._s2, self._s3
        result = (_rotl((s1 * 5) & MASK64, 7) * 9) & MASK64
        t = (s1 << 17) & MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self._s0, self._s1, self._s2, self._s3 = s0, s1, s2, s3
        return result

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection on the top 64-bit range."""
        if n <= 0:
            raise ValueError("below() needs n >= 1")
        # Largest multiple of n that fits in 64 bits; reject draws past it.
        limit = (MASK64 + 1) - ((MASK64 + 1) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def randrange(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi)."""
        return lo + self.below(hi - lo)

    def coin(self) -> bool:
        return bool(self.next_u64() >> 63)

    def choice(self, seq):
        return seq[self.below(len(seq))]

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates, draw order fixed from the high index down."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]

    def sample_indices(self, n: int, k: int) -> list[int]:
        """k distinct indices from range(n), in draw order."""
        if k > n:
            raise ValueError("sample larger than population")
        pool = list(range(n))
        out = []
        for _ in range(k):
            i = self.below(len(pool))
            out.append(pool[i])
            pool[i] = pool[-1]
            pool.pop()
        return out

    def getstate(self) -> tuple[int, int, int, int]:
        return (self._s0, self._s1, self._s2, self._s3)

    def setstate(self, state: tuple[int, int, int, int]) -> None:
        self._s0, self._s1, self._s2, self._s3 = (x & MASK64 for x in state)


def stream_seed(material: int) -> int:
    """Map raw seed material to a stream seed via one splitmix64 output."""
    _, out = splitmix64(material & MASK64)
    return out


def episode_seed(base_seed: int, episode_index: int) -> int:
    """Seed for the per-episode stream when no override is given."""
    return stream_seed(base_seed ^ episode_index)
