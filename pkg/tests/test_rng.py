import numpy as np
import pytest

from sumsetlab.experiments import sample_kset
from sumsetlab.rng import draw, sample_kset_elements, sample_ksets, splitmix64, stream_key


def test_splitmix64_reference_vectors():
    assert splitmix64(0, 3) == [0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]


def test_stream_derivation():
    assert stream_key(0, 0) == 0xE220A8397B1DCDAF
    assert draw(0, 1, 0) == splitmix64(stream_key(0, 1), 1)[0]


def test_full_universe():
    for i in range(5):
        assert sample_kset(4, 4, i, seed=i * 7).elements == (0, 1, 2, 3)


def test_deterministic():
    assert sample_kset(10**6, 4, 17, 99) == sample_kset(10**6, 4, 17, 99)
    assert sample_kset(10**6, 4, 17, 99) != sample_kset(10**6, 4, 18, 99)


@pytest.mark.parametrize("q, k", [(10, 3), (1000, 4), (10**6, 4), (9, 9), (50, 1)])
def test_batch_matches_scalar(q, k):
    rows = sample_ksets(q, k, 100, 400, seed=5)
    assert rows.tolist() == [list(sample_kset_elements(q, k, i, 5)) for i in range(100, 400)]
    assert (np.diff(rows, axis=1) > 0).all()


def test_chunking_independent():
    whole = sample_ksets(1000, 4, 0, 1000, 3)
    parts = np.vstack([sample_ksets(1000, 4, lo, lo + 250, 3) for lo in range(0, 1000, 250)])
    assert (whole == parts).all()


def test_element_frequencies_uniform():
    # 4 * 10^5 picks into 100 bins of [0, 10^6): binomial(4e5, 1/100) per bin
    rows = sample_ksets(10**6, 4, 0, 10**5, seed=0xC0FFEE)
    picks = rows.ravel()
    bins = np.bincount(picks // 10**4, minlength=100)
    n, p = picks.size, 0.01
    sigma = np.sqrt(n * p * (1 - p))
    assert np.all(np.abs(bins - n * p) < 5 * sigma)


def test_small_universe_subset_frequencies():
    # every 2-subset of [0,5) should be equally likely: 10 outcomes
    rows = sample_ksets(5, 2, 0, 50000, seed=1)
    codes = rows[:, 0] * 5 + rows[:, 1]
    counts = np.unique(codes, return_counts=True)[1]
    assert len(counts) == 10
    sigma = np.sqrt(50000 * 0.1 * 0.9)
    assert np.all(np.abs(counts - 5000) < 5 * sigma)


def test_universe_limit():
    with pytest.raises(ValueError):
        sample_kset_elements(2**33, 4, 0, 0)
