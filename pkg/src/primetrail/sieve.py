"""Bulk computation of max prime-signature exponents over contiguous ranges.

The residual-division sieve computes, for every integer M in a segment
[start, start + length), the largest exponent in M's prime factorization
together with a primality flag, without factorizing the numbers one by one.
Only primes up to sqrt(segment end) are needed, so segments far beyond any
memory-resident factor table work the same way as small ones.
"""

from __future__ import annotations

import os
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import isqrt
from typing import Iterator

import numpy as np

from .errors import CoverageError, RangeError

# Segments use int64 throughout; keeping values below 2**63 guarantees the
# residual array and all distance arithmetic stay exact.
MAX_SIEVE_VALUE = 2**63 - 1

DEFAULT_SEGMENT_LEN = 2**22


def build_base_primes(limit: int) -> np.ndarray:
    """All primes <= limit, ascending, as an int64 array."""
    if limit < 2:
        raise RangeError(f"prime table limit must be >= 2, got {limit}")
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.flatnonzero(sieve).astype(np.int64)


def _check_prime_coverage(base_primes: np.ndarray, root: int) -> None:
    """Raise unless base_primes contains every prime <= root.

    A table whose last entry falls short of root is still sufficient when no
    prime lives in the gap; that narrow window is checked by trial division
    against the table itself.
    """
    if len(base_primes) == 0:
        raise CoverageError(f"empty base prime table, need primes to {root}")
    last = int(base_primes[-1])
    if last >= root:
        return
    table = base_primes.tolist()
    for c in range((last + 1) | 1, root + 1, 2):
        r = isqrt(c)
        composite = False
        for p in table:
            if p > r:
                break
            if c % p == 0:
                composite = True
                break
        if not composite:
            raise CoverageError(f"base primes cover {last}, need {root} (missing {c})")


@dataclass
class OmegaSegment:
    """Norm values and primality flags for the integers [start, start + len).

    norms[i] is the largest exponent in the factorization of start + i
    (0 for the number 1); prime_flags[i] marks primes.
    """

    start: int
    norms: np.ndarray  # uint8
    prime_flags: np.ndarray  # bool

    def __len__(self) -> int:
        return len(self.norms)

    @property
    def end(self) -> int:
        """One past the last covered integer."""
        return self.start + len(self.norms)


def sieve_segment(start: int, length: int, base_primes: np.ndarray) -> OmegaSegment:
    """Sieve max-exponent norms and primality over [start, start + length).

    For each base prime p the residual copy of the range is divided by p once
    per prime power p^k that divides the entry, which strips the full p-part.
    A residual equal to the original value means no base prime divides it, so
    the number is prime; any residual > 1 is a single prime factor and
    contributes exponent 1.

    base_primes must cover every prime <= floor(sqrt(start + length - 1)).
    """
    if start < 1:
        raise RangeError(f"segment start must be >= 1, got {start}")
    if length < 0:
        raise RangeError(f"segment length must be >= 0, got {length}")
    if length == 0:
        return OmegaSegment(start, np.zeros(0, np.uint8), np.zeros(0, bool))
    hi = start + length - 1
    if hi > MAX_SIEVE_VALUE:
        raise RangeError(f"segment end {hi} exceeds 2**63 - 1")
    root = isqrt(hi)
    if root >= 2:
        _check_prime_coverage(base_primes, root)

    norms = np.zeros(length, dtype=np.uint8)
    residual = np.arange(start, start + length, dtype=np.int64)
    cut = int(np.searchsorted(base_primes, root, side="right"))
    for p in base_primes[:cut].tolist():
        q = p
        k = 1
        while q <= hi:
            i0 = (-start) % q
            if i0 < length:
                sl = slice(i0, length, q)
                if k >= 2:
                    np.maximum(norms[sl], k, out=norms[sl])
                residual[sl] //= p
            q *= p
            k += 1

    values = np.arange(start, start + length, dtype=np.int64)
    # Every M >= 2 has norm >= 1; this also folds in a leftover prime
    # factor > sqrt(hi), which can only appear to the first power.
    np.maximum(norms, 1, out=norms)
    flags = residual == values
    if start == 1:
        norms[0] = 0
        flags[0] = False
    # Base primes inside the range divided themselves out of the residual;
    # restore their flags directly.
    lo_i = int(np.searchsorted(base_primes, start, side="left"))
    hi_i = int(np.searchsorted(base_primes, min(hi, root), side="right"))
    for p in base_primes[lo_i:hi_i].tolist():
        flags[p - start] = True
    return OmegaSegment(start, norms, flags)


def resolve_threads(threads: int) -> int:
    """Map the user-facing thread count (0 = auto) to a worker count."""
    if threads < 0:
        raise RangeError(f"threads must be >= 0, got {threads}")
    if threads == 0:
        return min(8, os.cpu_count() or 1)
    return threads


def iter_segments(
    lo: int,
    hi: int,
    *,
    segment_len: int = DEFAULT_SEGMENT_LEN,
    threads: int = 0,
    base_primes: np.ndarray | None = None,
) -> Iterator[OmegaSegment]:
    """Yield consecutive segments covering [lo, hi] in ascending order.

    Segments may be sieved by a worker pool, but they are always yielded in
    range order, so consumers see identical data for any thread count.
    """
    if lo > hi:
        return
    if segment_len < 4:
        raise RangeError(f"segment length must be >= 4, got {segment_len}")
    if base_primes is None:
        base_primes = build_base_primes(max(2, isqrt(hi)))
    starts = list(range(lo, hi + 1, segment_len))
    workers = resolve_threads(threads)
    if workers <= 1 or len(starts) <= 1:
        for s in starts:
            yield sieve_segment(s, min(segment_len, hi - s + 1), base_primes)
        return
    with ThreadPoolExecutor(max_workers=workers) as pool:
        pending: deque = deque()
        it = iter(starts)
        for s in starts[: workers + 2]:
            next(it)
            pending.append(pool.submit(sieve_segment, s, min(segment_len, hi - s + 1), base_primes))
        while pending:
            seg = pending.popleft().result()
            s = next(it, None)
            if s is not None:
                pending.append(
                    pool.submit(sieve_segment, s, min(segment_len, hi - s + 1), base_primes)
                )
            yield seg
