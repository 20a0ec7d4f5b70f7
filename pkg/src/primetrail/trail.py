"""Cumulative trail length over the prime grid, with resumable checkpoints.

The trail visits 2, 3, 4, ... in order; each hop from M-1 to M costs
max(norm(M), norm(M-1)) because consecutive integers are coprime. The
running total is accumulated segment by segment; a checkpoint carries the
two values needed to resume (the total so far and the last norm seen).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import isqrt
from typing import Iterator

import numpy as np

from .errors import CheckpointFormatError, RangeError, SequencingError
from .sieve import DEFAULT_SEGMENT_LEN, OmegaSegment, build_base_primes, iter_segments

L1_TRAIL_CAP = 10**8


@dataclass(frozen=True)
class TrailCheckpoint:
    """Resumable trail state after consuming all integers up to n_end."""

    n_end: int
    cumsum: int
    last_norm: int


ORIGIN = TrailCheckpoint(n_end=1, cumsum=0, last_norm=0)


class PrimeStopLog:
    """Append-only record of the cumulative trail value at each prime.

    Entry k (1-based, p_1 = 2) holds the k-th prime and the trail length at
    that prime. Primes and trail values are strictly increasing; batches are
    kept as chunks and concatenated lazily.
    """

    def __init__(self, start_k: int = 1):
        if start_k < 1:
            raise RangeError(f"start_k must be >= 1, got {start_k}")
        self.start_k = start_k
        self._p_chunks: list[np.ndarray] = []
        self._l_chunks: list[np.ndarray] = []
        self._count = 0
        self._last_p = 0
        self._last_l = 0

    def __len__(self) -> int:
        return self._count

    def append_batch(self, primes: np.ndarray, linf: np.ndarray) -> None:
        if len(primes) != len(linf):
            raise ValueError("primes and linf batches must have equal length")
        if len(primes) == 0:
            return
        if int(primes[0]) <= self._last_p or int(linf[0]) <= self._last_l:
            raise SequencingError("prime stops must be strictly increasing")
        if len(primes) > 1 and (np.any(np.diff(primes) <= 0) or np.any(np.diff(linf) <= 0)):
            raise SequencingError("prime stops must be strictly increasing")
        self._p_chunks.append(np.asarray(primes, dtype=np.int64))
        self._l_chunks.append(np.asarray(linf, dtype=np.int64))
        self._count += len(primes)
        self._last_p = int(primes[-1])
        self._last_l = int(linf[-1])

    def _consolidate(self) -> None:
        if len(self._p_chunks) > 1:
            self._p_chunks = [np.concatenate(self._p_chunks)]
            self._l_chunks = [np.concatenate(self._l_chunks)]

    @property
    def primes(self) -> np.ndarray:
        self._consolidate()
        return self._p_chunks[0] if self._p_chunks else np.zeros(0, np.int64)

    @property
    def linf(self) -> np.ndarray:
        self._consolidate()
        return self._l_chunks[0] if self._l_chunks else np.zeros(0, np.int64)

    def entry(self, k: int) -> tuple[int, int, int]:
        """The (k, p_k, trail value) triple for the k-th prime."""
        i = k - self.start_k
        if not 0 <= i < self._count:
            raise RangeError(f"log holds k in [{self.start_k}, {self.start_k + self._count - 1}]")
        return k, int(self.primes[i]), int(self.linf[i])


def segment_cumsum(cp: TrailCheckpoint, seg: OmegaSegment) -> np.ndarray:
    """Trail totals for each integer in seg, continuing from checkpoint cp."""
    if seg.start != cp.n_end + 1:
        raise SequencingError(f"segment starts at {seg.start}, checkpoint ends at {cp.n_end}")
    norms = seg.norms
    hops = np.empty(len(norms), dtype=np.uint8)
    hops[0] = max(int(norms[0]), cp.last_norm)
    np.maximum(norms[1:], norms[:-1], out=hops[1:])
    cum = np.cumsum(hops, dtype=np.int64)
    cum += cp.cumsum
    return cum


def extend_trail(
    cp: TrailCheckpoint, seg: OmegaSegment, log: PrimeStopLog | None = None
) -> TrailCheckpoint:
    """Consume one segment, appending prime stops to log when given."""
    cum = segment_cumsum(cp, seg)
    if log is not None:
        idx = np.flatnonzero(seg.prime_flags)
        log.append_batch(seg.start + idx, cum[idx])
    return TrailCheckpoint(seg.end - 1, int(cum[-1]), int(seg.norms[-1]))


def trail_stream(
    to_n: int,
    *,
    checkpoint: TrailCheckpoint = ORIGIN,
    segment_len: int = DEFAULT_SEGMENT_LEN,
    threads: int = 0,
    base_primes: np.ndarray | None = None,
) -> Iterator[tuple[OmegaSegment, np.ndarray]]:
    """Yield (segment, cumulative totals) pairs covering checkpoint+1 .. to_n.

    Stitching is strictly sequential, so output is byte-identical for any
    thread count.
    """
    cp = checkpoint
    if to_n <= cp.n_end:
        return
    for seg in iter_segments(
        cp.n_end + 1, to_n, segment_len=segment_len, threads=threads, base_primes=base_primes
    ):
        cum = segment_cumsum(cp, seg)
        yield seg, cum
        cp = TrailCheckpoint(seg.end - 1, int(cum[-1]), int(seg.norms[-1]))


def run_trail(
    to_n: int,
    *,
    checkpoint: TrailCheckpoint = ORIGIN,
    segment_len: int = DEFAULT_SEGMENT_LEN,
    threads: int = 0,
    log: PrimeStopLog | None = None,
    base_primes: np.ndarray | None = None,
) -> TrailCheckpoint:
    """Advance the trail to to_n, returning the final checkpoint."""
    cp = checkpoint
    for seg, cum in trail_stream(
        to_n,
        checkpoint=checkpoint,
        segment_len=segment_len,
        threads=threads,
        base_primes=base_primes,
    ):
        if log is not None:
            idx = np.flatnonzero(seg.prime_flags)
            log.append_batch(seg.start + idx, cum[idx])
        cp = TrailCheckpoint(seg.end - 1, int(cum[-1]), int(seg.norms[-1]))
    return cp


def linf_trail(n: int, **kwargs) -> int:
    """Trail length up to n computed from scratch (0 for n = 1)."""
    if n < 1:
        raise RangeError(f"n must be >= 1, got {n}")
    return run_trail(n, **kwargs).cumsum


def l1_trail(n: int) -> int:
    """Trail length up to n in the total-exponent metric.

    Equals norm_1(n) + 2 * sum of norm_1(M) for M = 2 .. n-1, evaluated
    exactly via floor sums over prime powers.
    """
    from .factorint import norm_1

    if n < 1:
        raise RangeError(f"n must be >= 1, got {n}")
    if n > L1_TRAIL_CAP:
        raise RangeError(f"l1_trail supports n <= {L1_TRAIL_CAP}, got {n}")
    if n == 1:
        return 0
    x = n - 1
    # sum_{M<=x} norm_1(M) = sum over prime powers q <= x of floor(x/q)
    primes = build_base_primes(max(2, x))
    total = int(np.sum(x // primes))
    for p in primes[: int(np.searchsorted(primes, isqrt(x), side="right"))].tolist():
        q = p * p
        while q <= x:
            total += x // q
            q *= p
    return norm_1(n) + 2 * total


# -- checkpoint and stop-log files -------------------------------------------

_CHECKPOINT_KEYS = ("n_end", "cumsum", "last_norm")


def save_checkpoint(cp: TrailCheckpoint, path) -> None:
    """Write cp as a single JSON object with decimal-string counters."""
    obj = {"n_end": str(cp.n_end), "cumsum": str(cp.cumsum), "last_norm": cp.last_norm}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh)
        fh.write("\n")


def load_checkpoint(path) -> TrailCheckpoint:
    """Read a checkpoint written by save_checkpoint; strict about fields."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise CheckpointFormatError("<root>", f"not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise CheckpointFormatError("<root>", "top level must be a JSON object")
    for key in obj:
        if key not in _CHECKPOINT_KEYS:
            raise CheckpointFormatError(key, "unknown key")
    for key in _CHECKPOINT_KEYS:
        if key not in obj:
            raise CheckpointFormatError(key, "missing")
    values = {}
    for key in ("n_end", "cumsum"):
        raw = obj[key]
        if not isinstance(raw, str) or not raw.isdigit():
            raise CheckpointFormatError(key, f"expected a decimal string, got {raw!r}")
        values[key] = int(raw)
    last_norm = obj["last_norm"]
    if isinstance(last_norm, bool) or not isinstance(last_norm, int):
        raise CheckpointFormatError("last_norm", f"expected an integer, got {last_norm!r}")
    if not 0 <= last_norm <= 255:
        raise CheckpointFormatError("last_norm", f"out of range: {last_norm}")
    if values["n_end"] < 1:
        raise CheckpointFormatError("n_end", f"must be >= 1, got {values['n_end']}")
    return TrailCheckpoint(values["n_end"], values["cumsum"], last_norm)


def write_stops_csv(path, log: PrimeStopLog, *, append: bool = False) -> None:
    """Write "k,p,linf" rows; the header is emitted only for a fresh file."""
    mode = "a" if append else "w"
    with open(path, mode, encoding="utf-8", newline="\n") as fh:
        if not append:
            fh.write("k,p,linf\n")
        p = log.primes
        l = log.linf
        for i in range(len(log)):
            fh.write(f"{log.start_k + i},{int(p[i])},{int(l[i])}\n")


def write_stops_raw(path, log: PrimeStopLog, *, append: bool = False) -> None:
    """Write trail values as little-endian u64; concatenation-safe."""
    mode = "ab" if append else "wb"
    with open(path, mode) as fh:
        log.linf.astype("<u8").tofile(fh)


def read_stops_csv(path) -> PrimeStopLog:
    data = np.loadtxt(path, delimiter=",", skiprows=1, dtype=np.int64, ndmin=2)
    if data.size == 0:
        return PrimeStopLog()
    log = PrimeStopLog(start_k=int(data[0, 0]))
    log.append_batch(data[:, 1], data[:, 2])
    return log


def read_stops_raw(path, *, start_k: int = 1) -> np.ndarray:
    """The raw stream stores only trail values; k is implicit from position."""
    del start_k  # documented convention; values alone are returned
    return np.fromfile(path, dtype="<u8").astype(np.int64)
