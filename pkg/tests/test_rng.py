"""SplitMix64 stream and seed derivation against an independent reference."""

import random

from semcom.rng import GOLDEN, SplitMix64, derive_seed, mix64

MASK = (1 << 64) - 1

# first outputs of the published SplitMix64 for initial state 0
SEED0_VECTOR = [
    0xE220A8397B1DCDAF,
    0x6E789E6AA1B965F4,
    0x06C45D188009454F,
    0xF88BB8A8724C81EC,
    0x1B39896A51A8749B,
]


def _reference_stream(seed, k):
    """Straight transcription of the published algorithm, kept separate from
    the implementation under test."""
    out = []
    s = seed & MASK
    for _ in range(k):
        s = (s + 0x9E3779B97F4A7C15) & MASK
        z = s
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        out.append((z ^ (z >> 31)) & MASK)
    return out


def test_seed_zero_published_vector():
    rng = SplitMix64(0)
    assert [rng.next_uint64() for _ in range(5)] == SEED0_VECTOR


def test_matches_reference_for_many_seeds():
    rnd = random.Random(12345)
    for _ in range(50):
        seed = rnd.getrandbits(64)
        rng = SplitMix64(seed)
        assert [rng.next_uint64() for _ in range(200)] == _reference_stream(seed, 200)


def test_state_advances_by_golden_per_draw():
    rng = SplitMix64(987654321)
    for _ in range(17):
        rng.next_uint64()
    assert rng.state == (987654321 + 17 * GOLDEN) & MASK


def test_uniform_range_and_resolution():
    rng = SplitMix64(2024)
    draws = [rng.uniform() for _ in range(10_000)]
    assert all(0.0 <= u < 1.0 for u in draws)
    # top-53-bit construction: every draw is a multiple of 2^-53
    assert all((u * (1 << 53)) == int(u * (1 << 53)) for u in draws)


def test_derive_seed_deterministic():
    assert derive_seed(314159, 7) == derive_seed(314159, 7)


def test_derive_seed_of_zero_is_published_test_vector():
    # first output of the stream seeded 0, i.e. mix64(GOLDEN)
    assert derive_seed(0, 0) == 0xE220A8397B1DCDAF
    assert derive_seed(0, 0) == mix64(GOLDEN)


def test_derive_seed_distinct_across_indices():
    rnd = random.Random(99)
    for _ in range(10_000):
        s = rnd.getrandbits(64)
        assert derive_seed(s, 0) != derive_seed(s, 1)


def test_derive_seed_matches_stream_definition():
    # derive_seed(base, i) is the first output of SplitMix64(base + i*GOLDEN)
    for base in (0, 42, 2**63 + 11):
        for i in range(5):
            assert derive_seed(base, i) == SplitMix64((base + i * GOLDEN) & MASK).next_uint64()
