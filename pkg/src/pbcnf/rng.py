"""Seeded PRNG for reproducible instance generation.

SplitMix64 with a 64-bit seed; bounded draws use plain modulo reduction
(`lo + next_u64() % span`).  Both choices are pinned so another
implementation can regenerate identical instances from the same seed.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform-ish integer in [lo, hi]; modulo bias is irrelevant here."""
        if hi < lo:
            raise ValueError(f"empty range [{lo}, {hi}]")
        return lo + self.next_u64() % (hi - lo + 1)

    def chance(self, num: int, den: int) -> bool:
        return self.next_u64() % den < num

    def choice(self, seq):
        return seq[self.next_u64() % len(seq)]

    def sample(self, lo: int, hi: int, count: int) -> list[int]:
        """`count` distinct integers from [lo, hi], in draw order."""
        if count > hi - lo + 1:
            raise ValueError("sample larger than range")
        picked: list[int] = []
        taken = set()
        while len(picked) < count:
            v = self.randint(lo, hi)
            if v not in taken:
                taken.add(v)
                picked.append(v)
        return picked
