"""Deterministic random stream shared by every engine.

The generator is xoshiro256** seeded through splitmix64, so a (seed, call
sequence) pair produces the same outputs on every platform and in both the
pure-Python and compiled engine cores. The three primitives the engines
need are:

* ``randrange(n)``  - unbiased integer in [0, n) via 64-bit rejection
* ``random()``      - float in [0, 1) with 53 random bits
* ``expovariate(r)``- inverse-CDF exponential, zero-uniform draws retried

The compiled core re-implements the identical algorithms; draw-for-draw
equality between backends is asserted in the test suite.
"""

from __future__ import annotations

import math

_MASK64 = (1 << 64) - 1


def _splitmix64(x: int) -> tuple[int, int]:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x, z ^ (z >> 31)


class RandomStream:
    __slots__ = ("seed", "_s0", "_s1", "_s2", "_s3")

    def __init__(self, seed: int):
        self.seed = seed
        x = seed & _MASK64
        x, self._s0 = _splitmix64(x)
        x, self._s1 = _splitmix64(x)
        x, self._s2 = _splitmix64(x)
        x, self._s3 = _splitmix64(x)
        if self._s0 == self._s1 == self._s2 == self._s3 == 0:
            self._s0 = 1  # all-zero state is a fixed point of xoshiro

    @property
    def state(self) -> tuple[int, int, int, int]:
        return (self._s0, self._s1, self._s2, self._s3)

    def set_state(self, state: tuple[int, int, int, int]) -> None:
        self._s0, self._s1, self._s2, self._s3 = (w & _MASK64 for w in state)

    def next64(self) -> int:
        s1 = self._s1
        x = (s1 * 5) & _MASK64
        result = (((x << 7) | (x >> 57)) & _MASK64) * 9 & _MASK64
        t = (s1 << 17) & _MASK64
        s2 = self._s2 ^ self._s0
        s3 = self._s3 ^ s1
        self._s1 = s1 ^ s2
        self._s0 = self._s0 ^ s3
        self._s2 = s2 ^ t
        self._s3 = ((s3 << 45) | (s3 >> 19)) & _MASK64
        return result

    def randrange(self, n: int) -> int:
        """Uniform integer in [0, n); rejection keeps it exactly uniform."""
        if n <= 0:
            raise ValueError("randrange() bound must be positive")
        threshold = (1 << 64) % n
        limit = _MASK64 - threshold
        r = self.next64()
        while r > limit:
            r = self.next64()
        return r % n

    def random(self) -> float:
        return (self.next64() >> 11) * 1.1102230246251565e-16  # 2**-53

    def expovariate(self, rate: float) -> float:
        if rate <= 0.0:
            raise ValueError("expovariate() rate must be positive")
        u = self.random()
        while u == 0.0:
            u = self.random()
        return -math.log(1.0 - u) / rate
