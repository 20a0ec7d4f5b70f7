"""Chebyshev-metric analytics on the prime grid.

Numbers live on an infinite-dimensional grid indexed by the primes, with the
exponent vector of the factorization as coordinates. This package computes
the max-exponent norm in bulk, accumulates the trail length between
consecutive integers, evaluates the limiting trail constants via truncated
Euler products, and analyzes prime gaps and norm words along the way.
"""

from .constants import (
    C0_REFERENCE_DECIMAL,
    EulerProductSpec,
    c0,
    contour_density,
    li,
    mertens_ab,
    pair_mass,
    pi2,
    pi3,
    triple_mass,
    zeta,
)
from .factorint import PrimeSignature, chebyshev_distance, factorize, is_prime, norm_1, norm_inf
from .gaps import check_claims, diff_series, error_exponent, histogram
from .pnt import pi_infty, pnt_table, twin_table
from .sieve import OmegaSegment, build_base_primes, iter_segments, sieve_segment
from .trail import (
    ORIGIN,
    PrimeStopLog,
    TrailCheckpoint,
    extend_trail,
    l1_trail,
    linf_trail,
    load_checkpoint,
    run_trail,
    save_checkpoint,
)
from .words import Word, contains_forbidden, crt_solve, find_word, is_forbidden, verify_occurrence

__version__ = "0.1.0"
