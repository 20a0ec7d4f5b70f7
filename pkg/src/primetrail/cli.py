"""Command-line front end.

All numeric output uses '.' decimals and 15 significant digits for reals;
outputs are byte-identical for any --threads value because segment stitching
is sequential everywhere.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from decimal import Decimal

import numpy as np

from . import constants, density, gaps, pnt, trail, words
from .errors import PrimetrailError
from .trail import ORIGIN, PrimeStopLog


def _fmt(x: float) -> str:
    return format(x, ".15g")


def _int_arg(text: str) -> int:
    """Integer argument, allowing scientific notation like 1e8 or 5e10."""
    try:
        if any(c in text for c in "eE."):
            d = Decimal(text)
            if d != d.to_integral_value():
                raise ValueError
            return int(d)
        return int(text)
    except (ValueError, ArithmeticError):
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")


def _int_list(text: str) -> list[int]:
    return [_int_arg(part) for part in text.split(",") if part]


def _spec_from(args) -> constants.EulerProductSpec:
    return constants.EulerProductSpec(
        prime_count=args.primes, norm_cutoff=args.norm_cutoff
    )


def _c0_digits(digits: int) -> str:
    ref = constants.C0_REFERENCE_DECIMAL
    sig = ref.replace(".", "")
    if not 3 <= digits <= len(sig):
        raise PrimetrailError(f"--c0-digits must be in [3, {len(sig)}]")
    return ref[: digits + 1]  # one char for the decimal point


# -- subcommand implementations -------------------------------------------------


def _cmd_trail(args) -> int:
    cp = ORIGIN
    resume = False
    if args.checkpoint and os.path.exists(args.checkpoint):
        cp = trail.load_checkpoint(args.checkpoint)
        resume = True
    if args.to <= cp.n_end:
        raise PrimetrailError(f"--to {args.to} does not extend past checkpoint {cp.n_end}")

    log = None
    stops_append = False
    start_k = 1
    if args.stops:
        stops_exist = os.path.exists(args.stops)
        if resume and cp.n_end > 1:
            if stops_exist:
                stops_append = True
                if args.stops_format == "csv":
                    start_k = _last_csv_k(args.stops) + 1
                else:
                    start_k = os.path.getsize(args.stops) // 8 + 1
            elif args.stops_format == "csv":
                raise PrimetrailError(
                    "cannot number csv stops when resuming without the prior stops file"
                )
        log = PrimeStopLog(start_k=start_k)

    final = trail.run_trail(
        args.to,
        checkpoint=cp,
        segment_len=args.segment_len,
        threads=args.threads,
        log=log,
    )
    if args.stops:
        if args.stops_format == "csv":
            trail.write_stops_csv(args.stops, log, append=stops_append)
        else:
            trail.write_stops_raw(args.stops, log, append=stops_append)
    if args.checkpoint:
        trail.save_checkpoint(final, args.checkpoint)
    print(
        json.dumps(
            {
                "n_end": str(final.n_end),
                "cumsum": str(final.cumsum),
                "last_norm": final.last_norm,
            }
        )
    )
    return 0


def _last_csv_k(path: str) -> int:
    last = None
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("k,"):
                last = line
    if last is None:
        return 0
    return int(last.split(",")[0])


def _cmd_constants(args) -> int:
    if args.what == "c0":
        print(_fmt(constants.c0(_spec_from(args))))
    elif args.what == "pi":
        omegas = args.omega
        if not 2 <= len(omegas) <= 3:
            raise PrimetrailError("--omega takes 2 or 3 comma-separated exponents")
        print(_fmt(constants.truncated_product(omegas, args.primes)))
    elif args.what == "contour":
        print(_fmt(constants.contour_density(args.k)))
    elif args.what == "li":
        print(_fmt(constants.li(args.x)))
    else:  # mertens
        a, b = constants.mertens_ab()
        print(f"A={_fmt(a)} B={_fmt(b)}")
    return 0


def _cmd_density(args) -> int:
    window = args.window
    mode = args.mode
    if mode == "lt":
        est = density.empirical_window_lt(
            args.n, window, segment_len=args.segment_len, threads=args.threads
        )
    else:
        est = density.empirical_joint_eq(
            args.n, window, segment_len=args.segment_len, threads=args.threads
        )
    theory = _density_theory(window, mode, args.primes)
    payload = {
        "n": est.n,
        "window": list(est.window),
        "mode": mode,
        "count": est.count,
        "density": est.density,
        "theory": theory,
        "abs_err": None if theory is None else abs(est.density - theory),
    }
    if args.oracle:
        from .factorint import norm_inf

        k = len(window) - 1
        if mode == "lt":
            pred = lambda m: m > k and all(
                norm_inf(m - j) < window[j] for j in range(k + 1)
            )
        else:
            pred = lambda m: m > k and all(
                norm_inf(m - j) == window[j] for j in range(k + 1)
            )
        payload["oracle_count"] = density.brute_oracle(args.n, pred)
        payload["oracle_agrees"] = payload["oracle_count"] == est.count
    print(json.dumps(payload))
    return 0


def _density_theory(window, mode: str, primes: int) -> float | None:
    spec = constants.EulerProductSpec(prime_count=primes)
    if mode == "lt":
        return constants.truncated_product(window, primes)
    if any(w < 1 for w in window):
        return None
    if len(window) == 1:
        return constants.contour_density(window[0])
    if len(window) == 2:
        return constants.pair_mass(window[0], window[1], spec)
    if len(window) == 3:
        return constants.triple_mass(window[0], window[1], window[2], spec)
    return None  # no proven product formula for exact 4-windows


def _cmd_gaps(args) -> int:
    if args.what == "hist":
        log = _trail_log_to(args.to, args.segment_len, args.threads)
        hist = gaps.histogram(gaps.diff_series(log, args.order))
        gaps.write_histogram_csv(args.out, hist, header=args.header)
        print(f"wrote {len(hist.bins)} bins to {args.out}")
        return 0
    report = gaps.check_claims(args.to, segment_len=args.segment_len, threads=args.threads)
    print(f"pairs checked: {report.pairs_checked}")
    print(f"twin pairs: {report.twin_pairs}")
    print(f"gap in {{3,5}} violations: {len(report.never_3_5)}")
    print(f"twin rule violations: {len(report.twin_rule)}")
    print(f"characterization violations: {len(report.characterization)}")
    for name, bucket in (
        ("gap-3/5", report.never_3_5),
        ("twin-rule", report.twin_rule),
        ("characterization", report.characterization),
    ):
        for item in bucket:
            print(f"VIOLATION {name}: {item}")
    print("claims:", "pass" if report.ok else "FAIL")
    return 0 if report.ok else 1


def _trail_log_to(n: int, segment_len: int, threads: int) -> PrimeStopLog:
    log = PrimeStopLog()
    trail.run_trail(n, segment_len=segment_len, threads=threads, log=log)
    return log


def _cmd_pnt(args) -> int:
    k_list = args.k
    kmax = max(k_list)
    log = PrimeStopLog()
    cp = ORIGIN
    horizon = max(100, int(kmax * 20))
    while len(log) < kmax:
        cp = trail.run_trail(
            horizon, checkpoint=cp, segment_len=args.segment_len,
            threads=args.threads, log=log,
        )
        horizon *= 2
    print("k,p_k,N,ratio_log,ratio_li")
    for row in pnt.pnt_table(k_list, log):
        print(f"{row.k},{row.p_k},{row.n},{_fmt(row.ratio_log)},{_fmt(row.ratio_li)}")
    return 0


def _cmd_twin(args) -> int:
    spec = constants.EulerProductSpec(
        prime_count=args.primes, norm_cutoff=args.norm_cutoff
    )
    hist, theory = pnt.twin_table(
        args.count, args.ell_max, spec=spec,
        segment_len=args.segment_len, threads=args.threads,
    )
    print("ell,empirical,theory")
    for ell in range(1, args.ell_max + 1):
        print(f"{ell},{_fmt(hist.freq.get(ell, 0.0))},{_fmt(theory[ell])}")
    return 0


def _cmd_words(args) -> int:
    word = words.Word(tuple(args.word))
    if args.what == "check":
        print(
            json.dumps(
                {
                    "word": list(word.symbols),
                    "forbidden": words.is_forbidden(word),
                    "contains_forbidden": words.contains_forbidden(word),
                }
            )
        )
        return 0
    if args.what == "verify":
        print(
            json.dumps(
                {
                    "x": args.x,
                    "word": list(word.symbols),
                    "valid": words.verify_occurrence(args.x, word),
                }
            )
        )
        return 0
    occ = words.find_word(word, args.primes, args.max_k)
    if occ is None:
        print(json.dumps({"found": False, "word": list(word.symbols)}))
        return 0
    print(
        json.dumps(
            {
                "found": True,
                "x": occ.x,
                "k": occ.k,
                "M": occ.modulus,
                "primes": list(occ.prime_assignment),
            }
        )
    )
    return 0


def _cmd_error_exponent(args) -> int:
    log = trail.read_stops_csv(args.stops)
    samples = [(int(p), int(l)) for p, l in zip(log.primes, log.linf)]
    c0_ref = _c0_digits(args.c0_digits)
    print("N,alpha")
    for n, alpha in gaps.error_exponent(samples, c0_ref):
        print(f"{n},{'undefined' if alpha is None else format(alpha, '.6f')}")
    return 0


# -- parser ---------------------------------------------------------------------


def _add_run_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--threads", type=int, default=1, help="worker threads (0 = auto)")
    p.add_argument(
        "--segment-len", type=_int_arg, default=trail.DEFAULT_SEGMENT_LEN,
        help="integers per sieve segment",
    )


def _add_spec_opts(p: argparse.ArgumentParser, primes_default: int, cutoff_default: int) -> None:
    p.add_argument("--primes", type=_int_arg, default=primes_default,
                   help="number of primes in truncated products")
    p.add_argument("--norm-cutoff", type=_int_arg, default=cutoff_default,
                   help="norm cutoff in truncated sums")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="primetrail",
        description="Trail lengths, gap statistics, and limit constants on the prime grid",
    )
    parser.add_argument("--config", help="JSON file with default option values")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("trail", help="accumulate the trail up to N")
    p.add_argument("--to", type=_int_arg, required=True)
    p.add_argument("--checkpoint", help="checkpoint file (resumed when present)")
    p.add_argument("--stops", help="prime-stop output file")
    p.add_argument("--stops-format", choices=("csv", "raw"), default="csv")
    _add_run_opts(p)
    p.set_defaults(func=_cmd_trail)

    p = sub.add_parser("constants", help="evaluate limit constants")
    p.add_argument("what", choices=("c0", "pi", "contour", "li", "mertens"))
    p.add_argument("--omega", type=_int_list, default=[])
    p.add_argument("--k", type=_int_arg, default=1)
    p.add_argument("--x", type=float, default=2.0)
    _add_spec_opts(p, 10**7, 50)
    p.set_defaults(func=_cmd_constants)

    p = sub.add_parser("density", help="empirical window densities over the norms")
    p.add_argument("--window", type=_int_list, required=True)
    p.add_argument("--mode", choices=("lt", "eq"), default="lt")
    p.add_argument("--n", type=_int_arg, required=True)
    p.add_argument("--oracle", action="store_true",
                   help="cross-check with per-number factorization")
    p.add_argument("--primes", type=_int_arg, default=10**7)
    _add_run_opts(p)
    p.set_defaults(func=_cmd_density)

    p = sub.add_parser("gaps", help="gap histograms and structural claims")
    p.add_argument("what", choices=("hist", "claims"))
    p.add_argument("--to", type=_int_arg, required=True)
    p.add_argument("--order", type=int, choices=(1, 2), default=1)
    p.add_argument("--out", help="histogram output file")
    p.add_argument("--header", action="store_true")
    _add_run_opts(p)
    p.set_defaults(func=_cmd_gaps)

    p = sub.add_parser("pnt", help="modified prime-counting table")
    p.add_argument("table", choices=("table",))
    p.add_argument("--k", type=_int_list, required=True)
    _add_run_opts(p)
    p.set_defaults(func=_cmd_pnt)

    p = sub.add_parser("twin", help="twin-prime middle-norm table")
    p.add_argument("table", choices=("table",))
    p.add_argument("--count", type=_int_arg, required=True)
    p.add_argument("--ell-max", type=_int_arg, default=6)
    _add_spec_opts(p, constants.TWIN_THEORY_SPEC.prime_count,
                   constants.TWIN_THEORY_SPEC.norm_cutoff)
    _add_run_opts(p)
    p.set_defaults(func=_cmd_twin)

    p = sub.add_parser("words", help="word search and verification in the norms")
    p.add_argument("what", choices=("find", "check", "verify"))
    p.add_argument("--word", type=_int_list, required=True)
    p.add_argument("--primes", type=_int_list, default=None)
    p.add_argument("--max-k", type=_int_arg, default=10_000)
    p.add_argument("--x", type=_int_arg, default=0)
    p.set_defaults(func=_cmd_words)

    p = sub.add_parser("error-exponent", help="growth error exponent from a stops file")
    p.add_argument("--stops", required=True, help="csv stops file (k,p,linf)")
    p.add_argument("--c0-digits", type=int, default=16)
    p.set_defaults(func=_cmd_error_exponent)

    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    config_path = None
    for i, a in enumerate(argv):
        if a == "--config" and i + 1 < len(argv):
            config_path = argv[i + 1]
        elif a.startswith("--config="):
            config_path = a.split("=", 1)[1]
    parser = build_parser()
    if config_path:
        try:
            with open(config_path, "r", encoding="utf-8") as fh:
                defaults = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            print(f"error: cannot read config {config_path}: {exc}", file=sys.stderr)
            return 1
        parser.set_defaults(**{k.replace("-", "_"): v for k, v in defaults.items()})
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PrimetrailError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
