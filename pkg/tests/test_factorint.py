"""Factorization and norm tests against naive repeated-division oracles."""

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from primetrail.errors import RangeError
from primetrail.factorint import (
    MAX_SUPPORTED,
    PrimeSignature,
    chebyshev_distance,
    factorize,
    is_prime,
    norm_1,
    norm_inf,
)

from .conftest import naive_norm_1, naive_norm_inf, naive_signature


def test_factorize_one_is_empty():
    assert factorize(1).factors == ()
    assert factorize(1).value == 1


def test_factorize_twelve():
    assert factorize(12).factors == ((2, 2), (3, 1))


def test_factorize_large_squarefree_witness():
    # 93377215627231323 appears in the norm sequence as an all-exponent-low
    # window start; its own max exponent is 1.
    sig = factorize(93_377_215_627_231_323)
    assert sig.max_exponent == 1
    assert sig.value == 93_377_215_627_231_323


def test_factorize_rho_path_semiprime():
    p, q = 1_000_000_007, 1_000_000_009
    sig = factorize(p * q)
    assert sig.factors == ((p, 1), (q, 1))


def test_factorize_rho_path_square():
    p = 2_147_483_647
    assert factorize(p * p).factors == ((p, 2),)


def test_range_errors():
    for bad in (0, -1, MAX_SUPPORTED + 1):
        with pytest.raises(RangeError):
            factorize(bad)
    with pytest.raises(RangeError):
        norm_inf(0)


def test_norm_examples():
    assert norm_inf(1) == 0
    for p in (2, 3, 5, 97, 104729):
        assert norm_inf(p) == 1
    assert norm_inf(720) == 4
    assert norm_1(1) == 0
    assert norm_1(8) == 3
    assert norm_1(12) == 3


def test_chebyshev_examples():
    assert chebyshev_distance(7, 7) == 0
    assert chebyshev_distance(12, 9) == 2
    assert chebyshev_distance(8, 1) == 3
    assert chebyshev_distance(9, 12) == 2


def test_oracle_agreement_exhaustive_small():
    for n in range(1, 20_000):
        sig = factorize(n)
        assert sig.value == n
        naive = naive_signature(n)
        assert dict(sig.factors) == naive


def test_oracle_agreement_sampled_to_1e6():
    rng = random.Random(7)
    for _ in range(2000):
        n = rng.randrange(1, 10**6 + 1)
        assert norm_inf(n) == naive_norm_inf(n)
        assert norm_1(n) == naive_norm_1(n)


def test_is_prime_against_oracle():
    sympy = pytest.importorskip("sympy")
    rng = random.Random(11)
    for _ in range(300):
        n = rng.randrange(2, 2**62)
        assert is_prime(n) == sympy.isprime(n)


@given(st.integers(min_value=1, max_value=2**50))
def test_reconstruction(n):
    assert factorize(n).value == n


@given(
    st.integers(min_value=1, max_value=10**6),
    st.integers(min_value=1, max_value=10**6),
    st.integers(min_value=1, max_value=10**6),
)
def test_triangle_inequality(a, b, c):
    assert chebyshev_distance(a, c) <= chebyshev_distance(a, b) + chebyshev_distance(b, c)


@given(st.integers(min_value=2, max_value=10**9))
def test_coprime_consecutive_identity(m):
    assert chebyshev_distance(m, m - 1) == max(norm_inf(m), norm_inf(m - 1))


def test_signature_invariants_enforced():
    with pytest.raises(ValueError):
        PrimeSignature(((3, 1), (2, 1)))
    with pytest.raises(ValueError):
        PrimeSignature(((2, 0),))
