"""Portable SplitMix64 generator.

Every random draw in the package comes from this generator so that sweeps
replay bit-identically on any platform and in any language:

* state update: ``state = (state + 0x9E3779B97F4A7C15) mod 2**64``
* output: ``z = state; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EB; z ^= z >> 31`` (all mod 2**64)
* ``random()`` is ``(next_u64() >> 11) * 2**-53``, a double in [0, 1)
* ``below(k)`` is ``floor(random() * k)``
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def _mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def derive_seed(seed: int, index: int) -> int:
    """Independent seed for stream ``index`` of a master ``seed``."""
    return _mix((seed + (index + 1) * _GAMMA) & _MASK)


class SplitMix64:
    __slots__ = ("state",)

    def __init__(self, seed: int = 0) -> None:
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK
        return _mix(self.state)

    def random(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / 9007199254740992.0)

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.random()

    def below(self, k: int) -> int:
        if k <= 0:
            raise ValueError(f"below() needs a positive bound, got {k}")
        return int(self.random() * k)

    def bernoulli(self, p: float) -> bool:
        return self.random() < p
