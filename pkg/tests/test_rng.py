"""Seed-stream derivation: determinism, range, and independence."""

from collections import Counter

from hypothesis import given
from hypothesis import strategies as st

from gsatlab import mix64, rng_for, substream

U64 = st.integers(min_value=0, max_value=2**64 - 1)


@given(U64)
def test_mix64_stays_in_64_bits(x):
    assert 0 <= mix64(x) < 2**64


@given(U64)
def test_mix64_is_deterministic(x):
    assert mix64(x) == mix64(x)


def test_mix64_known_values():
    # Regression pins: these change only if the mixing constants change,
    # which would silently re-randomize every experiment in the suite.
    assert mix64(0) == 0
    assert mix64(1) == 6238072747940578789
    assert mix64(2**64 - 1) == 13029008266876403067


@given(U64, st.integers(min_value=0, max_value=2**32), st.integers(min_value=0, max_value=2**32))
def test_substream_path_order_matters(seed, a, b):
    if a != b:
        assert substream(seed, a, b) != substream(seed, b, a)


@given(U64, st.lists(st.integers(min_value=0, max_value=2**32), max_size=4))
def test_substream_in_range_and_deterministic(seed, path):
    value = substream(seed, *path)
    assert 0 <= value < 2**64
    assert value == substream(seed, *path)


def test_substream_spreads_consecutive_indices():
    seen = {substream(7, i) for i in range(10_000)}
    assert len(seen) == 10_000


def test_substream_distinct_across_nesting():
    # (seed, a, b) collides with neither (seed, a) nor (seed, b).
    flat = {substream(3, i) for i in range(100)}
    nested = {substream(3, i, j) for i in range(10) for j in range(10)}
    assert not flat & nested


def test_rng_for_reproducible_and_independent():
    first = rng_for(11, 2).random()
    assert first == rng_for(11, 2).random()
    assert first != rng_for(11, 3).random()


def test_rng_for_streams_look_uniform():
    # Coarse sanity: first draws across substreams cover [0, 1) evenly.
    counts = Counter(int(rng_for(0, i).random() * 10) for i in range(2_000))
    assert set(counts) == set(range(10))
    assert all(count > 100 for count in counts.values())
