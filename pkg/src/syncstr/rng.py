"""Portable seeded randomness.

Everything random in the package is driven by SplitMix64 (Steele, Lea and
Flood, 2014): a 64-bit state advanced by the golden-gamma constant
0x9E3779B97F4A7C15 and finalized with the MurmurHash3-style mixer
(shifts 30/27/31, multipliers 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB).
Bounded integers use rejection sampling on the raw 64-bit output, so any
implementation following the same recipe reproduces the same streams.
"""

from __future__ import annotations

import hashlib

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def _label_word(label) -> int:
    if isinstance(label, int):
        return label & MASK64
    digest = hashlib.blake2b(str(label).encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def derive_seed(seed: int, *labels) -> int:
    """Derive an independent 64-bit sub-seed from ``seed`` and a label path."""
    h = mix64(seed + GOLDEN_GAMMA)
    for label in labels:
        h = mix64(h ^ mix64(_label_word(label) + GOLDEN_GAMMA))
    return h


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        return mix64(self.state)

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)``."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        if bound > MASK64:
            # wide bounds: concatenate 64-bit words and reject
            words = (bound.bit_length() + 63) // 64
            span = 1 << (64 * words)
            limit = span - span % bound
            while True:
                x = 0
                for _ in range(words):
                    x = (x << 64) | self.next_u64()
                if x < limit:
                    return x % bound
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % bound

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in the closed range ``[lo, hi]``."""
        return lo + self.below(hi - lo + 1)

    def random(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]

    def sample(self, population: int, k: int) -> list[int]:
        """``k`` distinct integers from ``range(population)``, in draw order."""
        if k > population:
            raise ValueError("sample larger than population")
        chosen: dict[int, int] = {}
        out = []
        for i in range(k):
            j = i + self.below(population - i)
            out.append(chosen.get(j, j))
            chosen[j] = chosen.get(i, i)
        return out

    def symbols(self, n: int, q: int) -> list[int]:
        return [self.below(q) for _ in range(n)]
