#!/usr/bin/env python3
"""Long-range batched trail driver with on-disk carryover.

Runs the trail in fixed-size batches, persisting the checkpoint after each
batch and appending the prime-stop trail values to a raw little-endian u64
file, so an interrupted run resumes exactly where it stopped and per-batch
stop files can simply be concatenated. This is the shape of the run that
produced the reference totals at 5e10 (114418475903) and 1e12
(2288369511216); at those scales expect days, not minutes.
"""
import argparse
import os
import time

from primetrail.trail import (
    ORIGIN,
    PrimeStopLog,
    load_checkpoint,
    run_trail,
    save_checkpoint,
    write_stops_raw,
)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--to", required=True, help="final trail endpoint, e.g. 1e12")
    ap.add_argument("--batch", default="5e8", help="integers per batch")
    ap.add_argument("--checkpoint", default="trail_checkpoint.json")
    ap.add_argument("--stops", default="prime_stops.u64", help="raw stop file (appended)")
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--segment-len", type=int, default=2**22)
    args = ap.parse_args()

    to_n = int(float(args.to))
    batch = int(float(args.batch))
    cp = ORIGIN
    if os.path.exists(args.checkpoint):
        cp = load_checkpoint(args.checkpoint)
        print(f"resuming at n={cp.n_end:,} cumsum={cp.cumsum:,}")

    while cp.n_end < to_n:
        target = min(cp.n_end + batch, to_n)
        log = PrimeStopLog()
        t0 = time.time()
        cp = run_trail(
            target,
            checkpoint=cp,
            segment_len=args.segment_len,
            threads=args.threads,
            log=log,
        )
        write_stops_raw(args.stops, log, append=os.path.exists(args.stops))
        save_checkpoint(cp, args.checkpoint)
        print(
            f"batch done: n={cp.n_end:,} cumsum={cp.cumsum:,} last_norm={cp.last_norm} "
            f"stops+={len(log):,} ({time.time() - t0:.1f}s)"
        )


if __name__ == "__main__":
    main()
