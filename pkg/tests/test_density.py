"""Window-density counting versus per-number factorization oracles."""

import random

import numpy as np
import pytest

from primetrail.density import (
    BRUTE_ORACLE_CAP,
    brute_oracle,
    empirical_joint_eq,
    empirical_window_lt,
    pair_counts,
)
from primetrail.errors import RangeError
from primetrail.factorint import norm_inf


def brute_window(n, window, mode):
    k = len(window) - 1

    def hit(m):
        if m < k + 1:
            return False
        for j, w in enumerate(window):
            v = norm_inf(m - j)
            if mode == "lt" and not v < w:
                return False
            if mode == "eq" and v != w:
                return False
        return True

    return sum(1 for m in range(1, n + 1) if hit(m))


def test_consecutive_squarefree_pairs_at_20():
    est = empirical_window_lt(20, (2, 2))
    assert est.count == brute_window(20, (2, 2), "lt")
    assert est.density == est.count / 20


def test_eq_pairs_at_100():
    est = empirical_joint_eq(100, (1, 1))
    assert est.count == brute_window(100, (1, 1), "eq") == 32


def test_window_modes_against_brute_random():
    rng = random.Random(17)
    for _ in range(20):
        n = rng.randrange(50, 3000)
        k = rng.randrange(0, 4)
        if rng.random() < 0.5:
            window = tuple(rng.randrange(2, 5) for _ in range(k + 1))
            est = empirical_window_lt(n, window, segment_len=256)
            assert est.count == brute_window(n, window, "lt")
        else:
            window = tuple(rng.randrange(1, 4) for _ in range(k + 1))
            est = empirical_joint_eq(n, window, segment_len=256)
            assert est.count == brute_window(n, window, "eq")


def test_inclusion_exclusion_consistency():
    n = 10**4
    lt = empirical_window_lt(n, (2, 2)).count
    eq11 = empirical_joint_eq(n, (1, 1)).count
    eq10 = empirical_joint_eq(n, (1, 0)).count  # matches only M = 2
    assert eq10 == 1
    assert lt == eq11 + eq10


def test_pair_counts_closure():
    n = 10**5
    counts = pair_counts(n, 50, 50)
    # every M in [3, n] lands in one cell; M = 2 pairs with norm(1) = 0
    assert int(counts.sum()) == n - 2
    assert int(counts[0, 0]) == empirical_joint_eq(n, (1, 1)).count
    assert int(counts[1, 0]) == empirical_joint_eq(n, (2, 1)).count


def test_squarefree_quadruples_never_occur():
    assert empirical_window_lt(10**5, (2, 2, 2, 2)).count == 0


def test_density_converges_to_product():
    from primetrail.constants import EulerProductSpec, pi2

    est = empirical_window_lt(10**6, (2, 2))
    theory = pi2(2, 2, EulerProductSpec(10**5))
    assert abs(est.density - theory) < 1e-3


def test_eq_density_converges_to_pair_product():
    from primetrail.constants import EulerProductSpec, pi2

    est = empirical_joint_eq(10**6, (1, 1))
    assert abs(est.density - pi2(2, 2, EulerProductSpec(10**5))) < 2e-3


def test_split_invariance_of_counts():
    n = 12_345
    window = (2, 3, 2)
    a = empirical_window_lt(n, window, segment_len=64)
    b = empirical_window_lt(n, window, segment_len=4096)
    assert a.count == b.count


def test_brute_oracle_basics():
    assert brute_oracle(10, lambda m: norm_inf(m) == 1) == 6
    assert brute_oracle(10, lambda m: norm_inf(m) == 3) == 1
    assert brute_oracle(0, lambda m: True) == 0


def test_brute_oracle_refuses_large_n():
    with pytest.raises(RangeError):
        brute_oracle(BRUTE_ORACLE_CAP + 1, lambda m: True)


def test_window_validation():
    with pytest.raises(RangeError):
        empirical_window_lt(100, (1, 2))  # lt bounds must be >= 2
    with pytest.raises(RangeError):
        empirical_window_lt(100, (2,) * 5)
    with pytest.raises(RangeError):
        empirical_joint_eq(2, (1, 1, 1))  # n too small for the window
