"""Segment sieve tests: hand values, factorization oracle, split invariance."""

import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from primetrail.errors import CoverageError, RangeError
from primetrail.factorint import norm_inf
from primetrail.sieve import build_base_primes, iter_segments, sieve_segment


def test_base_primes_small():
    assert build_base_primes(10).tolist() == [2, 3, 5, 7]
    assert build_base_primes(2).tolist() == [2]


def test_base_primes_count_1e6():
    sympy = pytest.importorskip("sympy")
    primes = build_base_primes(10**6)
    assert len(primes) == int(sympy.primepi(10**6)) == 78498


def test_first_ten_norms_and_flags():
    seg = sieve_segment(1, 10, build_base_primes(3))
    assert seg.norms.tolist() == [0, 1, 1, 2, 1, 1, 1, 3, 2, 1]
    assert (np.flatnonzero(seg.prime_flags) + 1).tolist() == [2, 3, 5, 7]


def test_oracle_equivalence_to_1e5(norms_1e5):
    seg = sieve_segment(1, 10**5, build_base_primes(400))
    assert np.array_equal(seg.norms, norms_1e5)


def test_far_segment_matches_factorize():
    start = 10**12 - 10**4
    seg = sieve_segment(start, 10**4, build_base_primes(10**6))
    rng = random.Random(3)
    for _ in range(100):
        i = rng.randrange(10**4)
        assert int(seg.norms[i]) == norm_inf(start + i)
    # prime flags spot check on the same window
    sympy = pytest.importorskip("sympy")
    for _ in range(20):
        i = rng.randrange(10**4)
        assert bool(seg.prime_flags[i]) == sympy.isprime(start + i)


def test_insufficient_base_primes_rejected():
    with pytest.raises(CoverageError):
        sieve_segment(1, 10**4, build_base_primes(10))


def test_prime_table_short_by_a_composite_gap_is_fine():
    # primes <= 121 are enough for ranges ending below 127**2 even though
    # the table's last prime is 113
    seg = sieve_segment(1, 14_640, build_base_primes(121))
    assert int(seg.norms[2**13 - 1]) == 13


def test_zero_length_segment():
    seg = sieve_segment(5, 0, build_base_primes(10))
    assert len(seg) == 0


def test_bad_start_rejected():
    with pytest.raises(RangeError):
        sieve_segment(0, 10, build_base_primes(10))


@given(
    st.integers(min_value=1, max_value=5000),
    st.integers(min_value=2, max_value=600),
    st.integers(min_value=1, max_value=599),
)
def test_segment_splitting_invariance(start, total, cut):
    cut = min(cut, total - 1)
    primes = build_base_primes(100)
    whole = sieve_segment(start, total, primes)
    left = sieve_segment(start, cut, primes)
    right = sieve_segment(start + cut, total - cut, primes)
    assert np.array_equal(whole.norms, np.concatenate([left.norms, right.norms]))
    assert np.array_equal(
        whole.prime_flags, np.concatenate([left.prime_flags, right.prime_flags])
    )


def test_iter_segments_order_and_coverage():
    segs = list(iter_segments(1, 10**5, segment_len=2**12, threads=1))
    starts = [s.start for s in segs]
    assert starts == sorted(starts)
    assert sum(len(s) for s in segs) == 10**5
    merged = np.concatenate([s.norms for s in segs])
    one_shot = sieve_segment(1, 10**5, build_base_primes(400))
    assert np.array_equal(merged, one_shot.norms)


def test_iter_segments_thread_count_invariance():
    a = np.concatenate([s.norms for s in iter_segments(1, 10**5, segment_len=2**12, threads=1)])
    b = np.concatenate([s.norms for s in iter_segments(1, 10**5, segment_len=2**12, threads=8)])
    assert np.array_equal(a, b)


def test_contour_share_at_1e7():
    from primetrail.constants import zeta

    total = 0
    for seg in iter_segments(1, 10**7, threads=1):
        total += int(np.count_nonzero(seg.norms == 1))
    share = total / 10**7
    assert abs(share - 1.0 / zeta(2)) < 1e-3
