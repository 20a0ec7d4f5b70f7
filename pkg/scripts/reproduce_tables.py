#!/usr/bin/env python3
"""Regenerate the headline number tables at configurable desk scale.

Emits four blocks: the growth-constant approximation grid, the modified
prime-counting ratios, the twin-prime middle-norm distribution, and the
first-order gap histogram head. Everything is recomputed from scratch, so
expect roughly a minute at the defaults.
"""
import argparse
import time

from primetrail.constants import EulerProductSpec, c0
from primetrail.gaps import diff_series, histogram
from primetrail.pnt import pnt_table, twin_table
from primetrail.trail import ORIGIN, PrimeStopLog, run_trail


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m-grid", default="1e3,1e4,1e5", help="prime counts for the C0 grid")
    ap.add_argument("--n-grid", default="30,40,50", help="norm cutoffs for the C0 grid")
    ap.add_argument("--pnt-k", default="1e4,1e5,1e6", help="prime indices for the PNT table")
    ap.add_argument("--twin-count", default="1e5", help="number of twin pairs to scan")
    ap.add_argument("--hist-to", default="1e6", help="trail endpoint for the gap histogram")
    args = ap.parse_args()

    to_int = lambda s: int(float(s))
    m_grid = [to_int(x) for x in args.m_grid.split(",")]
    n_grid = [to_int(x) for x in args.n_grid.split(",")]

    print("== growth constant approximations ==")
    print("m \\ n " + " ".join(f"{n:>17}" for n in n_grid))
    for m in m_grid:
        row = [f"{c0(EulerProductSpec(m, n)):.15f}" for n in n_grid]
        print(f"{m:>8,} " + " ".join(row))

    print("\n== modified prime counting ==")
    k_list = sorted(to_int(x) for x in args.pnt_k.split(","))
    log = PrimeStopLog()
    cp = ORIGIN
    horizon = max(100, k_list[-1] * 25)
    t0 = time.time()
    while len(log) < k_list[-1]:
        cp = run_trail(horizon, checkpoint=cp, log=log)
        horizon *= 2
    print(f"(trail to p_{k_list[-1]:,} = {log.entry(k_list[-1])[1]:,} in {time.time()-t0:.1f}s)")
    print("k,p_k,N,ratio_log,ratio_li")
    for row in pnt_table(k_list, log):
        print(f"{row.k},{row.p_k},{row.n},{row.ratio_log:.8f},{row.ratio_li:.8f}")

    print("\n== twin-prime middle norms ==")
    hist_t, theory = twin_table(to_int(args.twin_count), 6)
    print("ell,empirical,theory")
    for ell in range(1, 7):
        print(f"{ell},{hist_t.freq.get(ell, 0.0):.8f},{theory[ell]:.10f}")

    print("\n== first-order gap histogram (head) ==")
    log2 = PrimeStopLog()
    run_trail(to_int(args.hist_to), log=log2)
    h = histogram(diff_series(log2, 1))
    for v in sorted(h.bins)[:20]:
        print(f"{v},{h.bins[v]}")


if __name__ == "__main__":
    main()
