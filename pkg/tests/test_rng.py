import numpy as np
from hypothesis import given, strategies as st

from superexp.rng import SplitMix64, derive_seed, mix64, randint_block, u64_block


def test_seed_zero_vectors():
    r = SplitMix64(0)
    assert [r.next_u64() for _ in range(3)] == [0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]


def test_derive_seed_distinct_and_stable():
    seeds = [derive_seed(5, i) for i in range(1000)]
    assert len(set(seeds)) == 1000
    assert seeds == [derive_seed(5, i) for i in range(1000)]


@given(st.integers(0, 2 ** 64 - 1), st.integers(0, 50), st.integers(1, 40))
def test_block_matches_scalar_stream(seed, start, count):
    r = SplitMix64(seed)
    for _ in range(start):
        r.next_u64()
    scalar = [r.next_u64() for _ in range(count)]
    assert [int(x) for x in u64_block(seed, start, count)] == scalar


@given(st.integers(0, 2 ** 64 - 1), st.integers(1, 1000))
def test_randint_block_matches_scalar(seed, n):
    r = SplitMix64(seed)
    scalar = [r.randint(n) for _ in range(20)]
    assert randint_block(seed, 0, 20, n).tolist() == scalar
    assert all(1 <= x <= n for x in scalar)


def test_randint_uniform_marginals():
    counts = np.bincount(randint_block(3, 0, 60000, 6), minlength=7)[1:]
    expected = 10000
    assert np.all(np.abs(counts - expected) < 5 * np.sqrt(expected))


def test_mix64_is_bijective_on_sample():
    xs = range(0, 5000)
    assert len({mix64(x) for x in xs}) == 5000


def test_shuffle_is_permutation():
    items = list(range(20))
    SplitMix64(9).shuffle(items)
    assert sorted(items) == list(range(20)) and items != list(range(20))
