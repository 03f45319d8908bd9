"""Deterministic random number generation.

Everything that needs randomness in this package draws from SplitMix64
(Steele, Lea & Flood's 64-bit mixer, the seeding generator from Java 8's
SplittableRandom). It is tiny, portable, and completely specified by three
multiplicative constants, so seeded runs produce identical streams on every
platform and Python version -- unlike ``random.Random``, whose internal use
of doubles we would rather not depend on for byte-stable artifacts.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """64-bit generator with a golden-ratio Weyl sequence and two xor-shift mixes."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n), unbiased via rejection sampling."""
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        # Largest multiple of n that fits in 64 bits; values past it would
        # skew the modulus toward small residues.
        threshold = ((1 << 64) // n) * n
        while True:
            r = self.next_u64()
            if r < threshold:
                return r % n

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in the closed range [lo, hi]."""
        if hi < lo:
            raise ValueError("empty range")
        return lo + self.below(hi - lo + 1)

    def shuffle(self, seq) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(seq) - 1, 0, -1):
            j = self.below(i + 1)
            seq[i], seq[j] = seq[j], seq[i]

    def choice(self, seq):
        if not len(seq):
            raise ValueError("empty sequence")
        return seq[self.below(len(seq))]

    def spawn(self) -> "SplitMix64":
        """Child generator seeded from this stream (for per-restart streams)."""
        return SplitMix64(self.next_u64())
