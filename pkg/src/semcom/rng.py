"""Portable 64-bit random stream (SplitMix64) and replication seed derivation.

SplitMix64 is used everywhere randomness is needed so that any implementation
of this toolkit, in any language, can replay a simulation trace bit-exactly
from the same seed.  The generator is the published Steele/Lea/Vigna design:
the state advances by the golden-ratio increment and each output is the
avalanching finalizer of the new state.
"""

GOLDEN = 0x9E3779B97F4A7C15  # floor(2^64 / phi), the SplitMix64 state increment

_MASK64 = (1 << 64) - 1
_INV_2_53 = 1.0 / (1 << 53)


def mix64(z: int) -> int:
    """SplitMix64 finalizer: xor-shift/multiply avalanche of a 64-bit word."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


class SplitMix64:
    """SplitMix64 stream: ``state += GOLDEN; output = mix64(state)``.

    The first output of the stream seeded with 0 is 0xE220A8397B1DCDAF, the
    published reference value for this generator.
    """

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_uint64(self) -> int:
        self.state = (self.state + GOLDEN) & _MASK64
        return mix64(self.state)

    def uniform(self) -> float:
        """Uniform draw in [0, 1), built from the top 53 bits of one output."""
        return (self.next_uint64() >> 11) * _INV_2_53


def derive_seed(base: int, index: int) -> int:
    """Deterministic, collision-avoiding seed for replication ``index``.

    Defined bit-exactly as the first SplitMix64 output of the stream whose
    initial state is ``base + index * GOLDEN`` mod 2^64, i.e.
    ``mix64(base + (index + 1) * GOLDEN)``.  In particular
    ``derive_seed(0, 0) == 0xE220A8397B1DCDAF``.
    """
    if index < 0:
        raise ValueError("replication index must be non-negative")
    return mix64((base + (index + 1) * GOLDEN) & _MASK64)
