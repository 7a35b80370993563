"""Small deterministic PRNG for reproducible point sampling.

The generator is xorshift128+ with splitmix64 seeding, spelled out here so a
failing seed reproduces bit-for-bit in any implementation:

- splitmix64: state advances by 0x9E3779B97F4A7C15; output is
  z = state; z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27;
  z *= 0x94D049BB133111EB; z ^= z >> 31  (all mod 2^64).
- xorshift128+ state (s0, s1) is two successive splitmix64 outputs of the
  user seed; the all-zero state is remapped to (1, 2).
- next: output = (s0 + s1) mod 2^64 from the state BEFORE the update; then
  with t = s0 ^ (s0 << 23) the state becomes
  (s0, s1) <- (s1, t ^ s1 ^ (t >> 18) ^ (s1 >> 5))  (all mod 2^64).
- doubles in [0, 1) take the top 53 bits: (u >> 11) * 2**-53.
- derived seeds: the i-th child seed of s is the (i+1)-th splitmix64 output
  of s.
"""

from __future__ import annotations

import math

_MASK = (1 << 64) - 1


def _splitmix64(state):
    state = (state + 0x9E3779B97F4A7C15) & _MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return state, z ^ (z >> 31)


def derive_seed(seed, index):
    """The index-th child seed: splitmix64 output number index+1 of seed."""
    state = seed & _MASK
    out = 0
    for _ in range(index + 1):
        state, out = _splitmix64(state)
    return out


class XorShift128Plus:
    """xorshift128+ generator; see module docstring for the exact algorithm."""

    def __init__(self, seed):
        state = seed & _MASK
        state, s0 = _splitmix64(state)
        state, s1 = _splitmix64(state)
        if s0 == 0 and s1 == 0:
            s0, s1 = 1, 2
        self._s0 = s0
        self._s1 = s1

    def next_u64(self):
        x = self._s0
        y = self._s1
        out = (x + y) & _MASK
        x ^= (x << 23) & _MASK
        self._s0 = y
        self._s1 = x ^ y ^ (x >> 18) ^ (y >> 5)
        return out

    def random(self):
        return (self.next_u64() >> 11) * 2.0**-53

    def disk_point(self, radius):
        """Uniform point in the disk of given radius (area-uniform)."""
        r = radius * math.sqrt(self.random())
        phi = 2.0 * math.pi * self.random()
        return r * math.cos(phi), r * math.sin(phi)
