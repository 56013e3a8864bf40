"""Deterministic pseudo-random numbers for seeded sampling.

The generator is SplitMix64 (Steele, Lea, Flood 2014): state advances by the
64-bit constant 0x9E3779B97F4B7C17 and each output is a finalizer of the
state.  It is trivially portable across languages, which keeps seeded
experiments reproducible outside this package.  Sampling helpers reduce
outputs modulo the range size; the modulo bias is irrelevant for the tiny
ranges used here and keeps the mapping easy to restate.
"""

MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4B7C17) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def int_between(self, lo: int, hi: int) -> int:
        """Uniform-ish integer in the inclusive range [lo, hi]."""
        if hi < lo:
            raise ValueError("empty range")
        return lo + self.next_u64() % (hi - lo + 1)

    def nonzero_int_between(self, lo: int, hi: int) -> int:
        while True:
            v = self.int_between(lo, hi)
            if v != 0:
                return v


def derive_seed(seed: int, *tags) -> int:
    """Mix a base seed with context tags into an independent stream seed."""
    g = SplitMix64(seed)
    acc = g.next_u64()
    for tag in tags:
        if isinstance(tag, str):
            tag = sum((i + 1) * b for i, b in enumerate(tag.encode()))
        acc = SplitMix64(acc ^ (tag & MASK64)).next_u64()
    return acc
