"""Prime-gap series on the number trail, structural claims, and the error
exponent of the trail's linear growth.

The first-order gap at prime index k is the trail-length difference between
consecutive primes; second-order gaps difference those again. Unlike the
ordinary prime gaps, these take odd values, but never 3 or 5, and the small
even values 2, 4, 6 are characterized exactly by the norms of the composites
between the primes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import log
from typing import Sequence

import numpy as np

from .constants import C0_REFERENCE_DECIMAL
from .errors import RangeError
from .sieve import DEFAULT_SEGMENT_LEN
from .trail import ORIGIN, PrimeStopLog, TrailCheckpoint, trail_stream

_GAP_LIMIT = 2**15 - 1  # gap values are stored as int16


@dataclass(frozen=True)
class GapSeries:
    """First- or second-order differences of trail values at prime stops."""

    order: int
    values: np.ndarray  # int16

    def __post_init__(self):
        if self.order not in (1, 2):
            raise RangeError(f"order must be 1 or 2, got {self.order}")

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class Histogram:
    """Sorted value -> count map with only nonzero counts."""

    bins: dict[int, int]

    def total(self) -> int:
        return sum(self.bins.values())


def diff_series(log: PrimeStopLog, order: int) -> GapSeries:
    """Consecutive differences of the logged trail values, once or twice."""
    if order not in (1, 2):
        raise RangeError(f"order must be 1 or 2, got {order}")
    if len(log) < order + 1:
        raise RangeError(f"need at least {order + 1} stops, have {len(log)}")
    d = np.diff(log.linf)
    if order == 2:
        d = np.diff(d)
    if np.any(np.abs(d) > _GAP_LIMIT):
        raise RangeError("gap value exceeds int16 range")
    return GapSeries(order, d.astype(np.int16))


def histogram(series: GapSeries) -> Histogram:
    values, counts = np.unique(series.values, return_counts=True)
    return Histogram({int(v): int(c) for v, c in zip(values, counts)})


def write_histogram_csv(path, hist: Histogram, *, header: bool = False) -> None:
    """Lines "value,count" in ascending value order."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        if header:
            fh.write("value,count\n")
        for v in sorted(hist.bins):
            fh.write(f"{v},{hist.bins[v]}\n")


# -- structural claims ---------------------------------------------------------


@dataclass
class ClaimReport:
    """Violations of the gap-value claims over all consecutive primes <= limit.

    never_3_5: pairs with first-order gap 3 or 5 (prime index k >= 2).
    twin_rule: twin pairs where the gap differs from twice the middle norm.
    characterization: pairs where gap == v and its exact structural
    condition disagree, for v in 2, 4, 6.
    """

    limit: int
    pairs_checked: int = 0
    twin_pairs: int = 0
    never_3_5: list = field(default_factory=list)
    twin_rule: list = field(default_factory=list)
    characterization: list = field(default_factory=list)
    final_checkpoint: TrailCheckpoint = ORIGIN

    @property
    def ok(self) -> bool:
        return not (self.never_3_5 or self.twin_rule or self.characterization)


_MAX_VIOLATIONS_KEPT = 20


class _PairScanner:
    """Streams consecutive-prime pairs with the norms following the left prime.

    For a pair (p, q) the checks need the norms of p+1, p+2, p+3 (the latter
    two only when q = p + 4). Those positions can spill past a segment
    boundary, so up to three values are carried and completed from the head
    of the next segment.
    """

    def __init__(self, report: ClaimReport):
        self.report = report
        self.pair_index = 0  # index k of the last completed pair's left prime
        self.prev_p: int | None = None
        self.prev_linf = 0
        self.after: list[int | None] = [None, None, None]  # norms at prev_p + 1..3

    def feed(self, seg, cum) -> None:
        norms = seg.norms
        start = seg.start
        pos = np.flatnonzero(seg.prime_flags)
        if self.prev_p is not None:
            for j in (1, 2, 3):
                if self.after[j - 1] is None:
                    idx = self.prev_p + j - start
                    if 0 <= idx < len(norms):
                        self.after[j - 1] = int(norms[idx])
        if len(pos) == 0:
            return
        p_vals = pos + start
        l_vals = cum[pos]
        if self.prev_p is not None:
            self.pair_index += 1
            self._check_one(
                self.pair_index,
                self.prev_p,
                int(p_vals[0]),
                int(l_vals[0]) - self.prev_linf,
                self.after[0],
                self.after[1],
                self.after[2],
            )
        if len(pos) >= 2:
            self._check_vector(p_vals, l_vals, norms, pos)
            self.pair_index += len(pos) - 1
        self.prev_p = int(p_vals[-1])
        self.prev_linf = int(l_vals[-1])
        self.after = [None, None, None]
        for j in (1, 2, 3):
            idx = int(pos[-1]) + j
            if idx < len(norms):
                self.after[j - 1] = int(norms[idx])

    def _record(self, bucket: list, item) -> None:
        if len(bucket) < _MAX_VIOLATIONS_KEPT:
            bucket.append(item)

    def _check_one(self, k, p, q, d1, a, b, c) -> None:
        rep = self.report
        rep.pairs_checked += 1
        gap = q - p
        if k >= 2 and d1 in (3, 5):
            self._record(rep.never_3_5, (k, p, q, d1))
        if gap == 2:
            rep.twin_pairs += 1
            if d1 != 2 * a:
                self._record(rep.twin_rule, (k, p, d1, a))
        right2 = gap == 2 and a == 1
        right4 = gap == 2 and a == 2
        right6 = (gap == 2 and a == 3) or (gap == 4 and b == 1 and a + c == 3)
        for v, right in ((2, right2), (4, right4), (6, right6)):
            if (d1 == v) != right:
                self._record(rep.characterization, (k, p, q, d1, v))

    def _check_vector(self, p_vals, l_vals, norms, pos) -> None:
        rep = self.report
        k0 = self.pair_index + 1  # index of the first pair in this batch
        gaps = np.diff(p_vals)
        d1 = np.diff(l_vals)
        npairs = len(gaps)
        rep.pairs_checked += npairs
        a = norms[pos[:-1] + 1].astype(np.int64)
        # p + 2 and p + 3 exist inside the segment whenever gap >= 4
        b = np.zeros(npairs, np.int64)
        c = np.zeros(npairs, np.int64)
        wide = np.flatnonzero(gaps >= 4)
        b[wide] = norms[pos[:-1][wide] + 2]
        c[wide] = norms[pos[:-1][wide] + 3]

        twin = gaps == 2
        rep.twin_pairs += int(np.count_nonzero(twin))
        bad = np.flatnonzero((d1 == 3) | (d1 == 5))
        for i in bad:
            k = k0 + int(i)
            if k >= 2:
                self._record(
                    rep.never_3_5, (k, int(p_vals[i]), int(p_vals[i + 1]), int(d1[i]))
                )
        bad = np.flatnonzero(twin & (d1 != 2 * a))
        for i in bad:
            self._record(rep.twin_rule, (k0 + int(i), int(p_vals[i]), int(d1[i]), int(a[i])))

        right2 = twin & (a == 1)
        right4 = twin & (a == 2)
        right6 = (twin & (a == 3)) | ((gaps == 4) & (b == 1) & (a + c == 3))
        for v, right in ((2, right2), (4, right4), (6, right6)):
            bad = np.flatnonzero((d1 == v) != right)
            for i in bad:
                self._record(
                    rep.characterization,
                    (k0 + int(i), int(p_vals[i]), int(p_vals[i + 1]), int(d1[i]), v),
                )


def check_claims(
    limit: int,
    *,
    segment_len: int = DEFAULT_SEGMENT_LEN,
    threads: int = 0,
) -> ClaimReport:
    """Check the gap-value claims over all consecutive primes up to limit.

    The gap-6 characterization is checked in the sharp form established by
    the twin-gap identity: gap 6 happens iff the pair is twin with middle
    norm 3, or the primes differ by 4 with the midpoint squarefree and the
    two even neighbors carrying norms {1, 2}.
    """
    if limit < 3:
        raise RangeError(f"limit must be >= 3, got {limit}")
    report = ClaimReport(limit=limit)
    scanner = _PairScanner(report)
    cp = ORIGIN
    for seg, cum in trail_stream(limit, segment_len=segment_len, threads=threads):
        scanner.feed(seg, cum)
        cp = TrailCheckpoint(seg.end - 1, int(cum[-1]), int(seg.norms[-1]))
    report.final_checkpoint = cp
    return report


# -- error exponent ------------------------------------------------------------


def error_exponent(
    samples: Sequence[tuple[int, int]],
    c0_decimal: str = C0_REFERENCE_DECIMAL,
) -> list[tuple[int, float | None]]:
    """alpha(N) = log|trail(N) - C0*N| / log N for exact (N, trail) samples.

    The difference cancels a dozen leading digits at large N, so it is formed
    in exact rational arithmetic from the decimal reference constant; None
    marks the (measure-zero) case of an exact hit.
    """
    c0_frac = Fraction(c0_decimal)
    out: list[tuple[int, float | None]] = []
    for n, linf in samples:
        if n < 2:
            raise RangeError(f"samples need N >= 2, got {n}")
        err = abs(Fraction(linf) - c0_frac * n)
        if err == 0:
            out.append((n, None))
            continue
        alpha = (log(err.numerator) - log(err.denominator)) / log(n)
        out.append((n, alpha))
    return out
