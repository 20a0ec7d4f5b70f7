"""Prime counting along the trail and the twin-prime norm distribution.

The trail-space counter pi_inf(N) is the number of primes whose cumulative
trail position is at most N; by construction pi_inf at the position of the
k-th prime equals k, so comparison tables against N/log N and the
logarithmic integral follow from the stop log alone. Twin pairs are further
classified by the norm of the even number between them.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import fsum, log

import numpy as np

from .constants import EulerProductSpec, TWIN_THEORY_SPEC, li, triple_mass
from .errors import CoverageError, RangeError
from .sieve import DEFAULT_SEGMENT_LEN, iter_segments
from .trail import PrimeStopLog


def pi_infty(n: int, log_: PrimeStopLog) -> int:
    """Number of primes with trail position <= n, from a stop log.

    The log must start at the first prime and extend past n, otherwise the
    answer cannot be certified.
    """
    if n < 0:
        raise RangeError(f"n must be >= 0, got {n}")
    if log_.start_k != 1:
        raise CoverageError("stop log must start at the first prime")
    linf = log_.linf
    if len(linf) == 0 or int(linf[-1]) <= n:
        raise CoverageError(f"stop log ends at {int(linf[-1]) if len(linf) else 0}, need > {n}")
    return int(np.searchsorted(linf, n, side="right"))


@dataclass(frozen=True)
class PntRow:
    """Comparison row at the k-th prime: counters divided by the PNT terms."""

    k: int
    p_k: int
    n: int  # trail position of p_k
    ratio_log: float  # k * ln(n) / n
    ratio_li: float  # k / li(n)


def pnt_table(k_list: list[int], log_: PrimeStopLog) -> list[PntRow]:
    """Rows for the requested prime indices; the log must cover max(k_list)."""
    rows = []
    for k in k_list:
        k, p, n = log_.entry(k)
        rows.append(PntRow(k, p, n, k * log(n) / n, k / li(n)))
    return rows


@dataclass(frozen=True)
class TwinHistogram:
    """Norm distribution of p+1 over the first `count` twin pairs (p, p+2)."""

    count: int
    freq: dict[int, float]  # middle norm -> relative frequency

    def counts(self) -> dict[int, int]:
        return {k: round(v * self.count) for k, v in self.freq.items()}


def twin_middle_counts(
    count: int,
    *,
    segment_len: int = DEFAULT_SEGMENT_LEN,
    threads: int = 0,
) -> dict[int, int]:
    """Tally norm(p+1) over the first `count` twin pairs, ordered by p.

    Pairs straddling a segment boundary are caught by re-examining the last
    two positions of the previous segment together with the new one.
    """
    if count < 1:
        raise RangeError(f"count must be >= 1, got {count}")
    tallies: dict[int, int] = {}
    found = 0
    carry_norms = np.zeros(0, np.uint8)
    carry_flags = np.zeros(0, bool)
    start = 1
    # Upper estimate only sizes the segment iterator; the scan stops early
    # and extends if twins are rarer than the crude bound suggests.
    horizon = max(10**6, 60 * count)
    while found < count:
        for seg in iter_segments(
            start, horizon, segment_len=segment_len, threads=threads
        ):
            flags = np.concatenate([carry_flags, seg.prime_flags])
            norms = np.concatenate([carry_norms, seg.norms])
            base = seg.start - len(carry_flags)
            twin_at = np.flatnonzero(flags[:-2] & flags[2:])
            for i in twin_at.tolist():
                mid = int(norms[i + 1])
                tallies[mid] = tallies.get(mid, 0) + 1
                found += 1
                if found == count:
                    return tallies
            carry_flags = flags[-2:]
            carry_norms = norms[-2:]
        start = horizon + 1
        horizon *= 2
    return tallies


def twin_table(
    count: int,
    ell_max: int,
    *,
    spec: EulerProductSpec = TWIN_THEORY_SPEC,
    segment_len: int = DEFAULT_SEGMENT_LEN,
    threads: int = 0,
) -> tuple[TwinHistogram, dict[int, float]]:
    """Empirical twin-pair middle-norm frequencies plus the theory column.

    The theory column is the limiting norm distribution of a number flanked
    by two squarefree neighbors: triple masses (1, ell, 1) normalized over
    ell up to the spec cutoff.
    """
    tallies = twin_middle_counts(count, segment_len=segment_len, threads=threads)
    freq = {k: v / count for k, v in sorted(tallies.items())}
    return TwinHistogram(count, freq), twin_theory_column(ell_max, spec=spec)


def twin_theory_column(
    ell_max: int, *, spec: EulerProductSpec = TWIN_THEORY_SPEC
) -> dict[int, float]:
    """Conditional masses P(middle norm = ell | both neighbors squarefree)."""
    if ell_max < 1:
        raise RangeError(f"ell_max must be >= 1, got {ell_max}")
    cutoff = max(spec.norm_cutoff, ell_max)
    masses = [triple_mass(1, ell, 1, spec) for ell in range(1, cutoff + 1)]
    denom = fsum(masses)
    return {ell: masses[ell - 1] / denom for ell in range(1, ell_max + 1)}
