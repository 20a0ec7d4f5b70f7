"""Empirical densities of norm windows over consecutive integers.

A window condition constrains the norms of M, M-1, ..., M-K for K up to 3,
either by strict upper bounds (lt mode) or by exact values (eq mode). Counts
are exact integers accumulated in one streaming pass; densities are formed
only at output time.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import RangeError
from .sieve import DEFAULT_SEGMENT_LEN, iter_segments

BRUTE_ORACLE_CAP = 10**7


@dataclass(frozen=True)
class DensityEstimate:
    """Exact window count over M <= n plus the derived density."""

    n: int
    window: tuple[int, ...]
    mode: str  # "lt" or "eq"
    count: int

    @property
    def density(self) -> float:
        return self.count / self.n


def _validate_window(n: int, window: Sequence[int], mode: str) -> tuple[int, ...]:
    w = tuple(int(x) for x in window)
    if not 1 <= len(w) <= 4:
        raise RangeError(f"window length must be 1 to 4 symbols, got {len(w)}")
    k = len(w) - 1
    if n < k + 2:
        raise RangeError(f"n must be >= {k + 2} for a {k + 1}-symbol window")
    if mode == "lt":
        if any(x < 2 for x in w):
            raise RangeError(f"lt bounds must be >= 2, got {w}")
    else:
        # 0 is legal in eq mode; it matches only the integer 1.
        if any(x < 0 for x in w):
            raise RangeError(f"eq norms must be >= 0, got {w}")
    return w


def _count_windows(
    n: int,
    window: tuple[int, ...],
    predicate: Callable[[np.ndarray, int], np.ndarray],
    segment_len: int,
    threads: int,
) -> int:
    """Count M in [K+1, n] with predicate(norm(M-j), omega_j) true for all j.

    Segments are extended by a K-value carry so windows that straddle a
    boundary are evaluated exactly once, in the segment holding M.
    """
    k = len(window) - 1
    count = 0
    carry = np.zeros(k, dtype=np.uint8)
    for seg in iter_segments(1, n, segment_len=segment_len, threads=threads):
        ext = np.concatenate([carry, seg.norms]) if k else seg.norms
        lo = max(seg.start, k + 1)
        off = lo - seg.start
        length = len(seg.norms) - off
        if length > 0:
            cond = predicate(ext[k + off : k + off + length], window[0])
            for j in range(1, k + 1):
                cond &= predicate(ext[k + off - j : k + off - j + length], window[j])
            count += int(np.count_nonzero(cond))
        if k:
            carry = seg.norms[-k:] if len(seg.norms) >= k else np.concatenate(
                [carry, seg.norms]
            )[-k:]
    return count


def empirical_window_lt(
    n: int,
    bounds: Sequence[int],
    *,
    segment_len: int = DEFAULT_SEGMENT_LEN,
    threads: int = 0,
) -> DensityEstimate:
    """Count M <= n with norm(M-j) < bounds[j] for every window position j."""
    w = _validate_window(n, bounds, "lt")
    count = _count_windows(n, w, lambda a, x: a < x, segment_len, threads)
    return DensityEstimate(n, w, "lt", count)


def empirical_joint_eq(
    n: int,
    norms: Sequence[int],
    *,
    segment_len: int = DEFAULT_SEGMENT_LEN,
    threads: int = 0,
) -> DensityEstimate:
    """Count M <= n with norm(M-j) == norms[j] for every window position j."""
    w = _validate_window(n, norms, "eq")
    count = _count_windows(n, w, lambda a, x: a == x, segment_len, threads)
    return DensityEstimate(n, w, "eq", count)


def pair_counts(
    n: int,
    kmax: int,
    lmax: int,
    *,
    segment_len: int = DEFAULT_SEGMENT_LEN,
    threads: int = 0,
) -> np.ndarray:
    """Joint histogram of (norm(M), norm(M-1)) for M in [2, n] in one pass.

    Entry [k-1, l-1] counts windows with norms exactly (k, l); pairs with a
    coordinate above the bounds are dropped.
    """
    if n < 2:
        raise RangeError(f"n must be >= 2, got {n}")
    out = np.zeros((kmax, lmax), dtype=np.int64)
    prev = np.zeros(1, dtype=np.uint8)
    for seg in iter_segments(1, n, segment_len=segment_len, threads=threads):
        ext = np.concatenate([prev, seg.norms])
        lo = max(seg.start, 2)
        off = lo - seg.start
        cur = ext[1 + off :].astype(np.int64)
        before = ext[off : off + len(cur)].astype(np.int64)
        keep = (cur >= 1) & (cur <= kmax) & (before >= 1) & (before <= lmax)
        flat = (cur[keep] - 1) * lmax + (before[keep] - 1)
        out += np.bincount(flat, minlength=kmax * lmax).reshape(kmax, lmax)
        prev = seg.norms[-1:]
    return out


def brute_oracle(n: int, predicate: Callable[[int], bool]) -> int:
    """Count M in [1, n] satisfying predicate, one number at a time.

    Meant as an independent verification path: the predicate typically
    factorizes its argument directly, sharing nothing with the sieve.
    """
    if n < 0:
        raise RangeError(f"n must be >= 0, got {n}")
    if n > BRUTE_ORACLE_CAP:
        raise RangeError(f"brute oracle refuses n > {BRUTE_ORACLE_CAP}")
    return sum(1 for m in range(1, n + 1) if predicate(m))
