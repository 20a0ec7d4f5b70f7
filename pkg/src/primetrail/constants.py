"""Numeric constants: zeta values, truncated Euler products, and the trail
growth constant.

Truncated products over the first m primes are evaluated by splitting the
prime range: the first 64 primes contribute exact per-prime log1p terms, and
the remaining primes enter through power sums sum(p^-s) combined via the
log(1-x) series. The split keeps full double accuracy for the small primes
(where factors are far from 1) while the tail series converges in a handful
of terms. Measured against a high-precision oracle the products are exact to
a couple of ulps, which keeps the growth-constant grid below 1e-13 error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from math import comb, fsum, log1p
from typing import Iterator, Sequence

import numpy as np
from scipy.special import expi

from .errors import ConsistencyError, RangeError
from .sieve import build_base_primes

# Reference value of the limiting ratio trail_length / N, from the stabilized
# truncation (first 10**7 primes, norm cutoff 50+); digits beyond the 13th are
# truncation-limited.
C0_REFERENCE_DECIMAL = "2.288369512646155"

_HEAD_COUNT = 64  # primes given exact per-prime factors
_S_MAX = 30  # tail power sums kept up to this exponent
_T_MAX = 8  # depth of the tail log series
_CROSS_CHECK_TOL = 1e-12


@dataclass(frozen=True)
class EulerProductSpec:
    """Truncation parameters: first `prime_count` primes, sums to `norm_cutoff`."""

    prime_count: int = 10**7
    norm_cutoff: int = 50
    precision: float = 1e-12

    def __post_init__(self):
        if self.prime_count < 1:
            raise RangeError(f"prime_count must be >= 1, got {self.prime_count}")
        if self.norm_cutoff < 2:
            raise RangeError(f"norm_cutoff must be >= 2, got {self.norm_cutoff}")


DEFAULT_SPEC = EulerProductSpec()

# Truncation reproducing the published twin-prime norm distribution: first
# 10**5 primes with the conditional pmf normalized over middle norms <= 15.
TWIN_THEORY_SPEC = EulerProductSpec(prime_count=10**5, norm_cutoff=15)


def first_primes(m: int) -> np.ndarray:
    """The first m primes, via a sieve sized from the p_m upper bound."""
    if m < 1:
        raise RangeError(f"m must be >= 1, got {m}")
    if m < 6:
        bound = 15
    else:
        lm = math.log(m)
        bound = int(m * (lm + math.log(lm))) + 10
    primes = build_base_primes(bound)
    if len(primes) < m:  # pragma: no cover - bound is provably sufficient
        primes = build_base_primes(2 * bound)
    return primes[:m]


class _PowerSums:
    """Power sums over the first m primes, split into head and tail parts."""

    def __init__(self, m: int):
        primes = first_primes(m)
        self.m = m
        self.head = [int(p) for p in primes[: min(m, _HEAD_COUNT)]]
        self.tail_sums = np.zeros(_S_MAX + 1)
        if m > _HEAD_COUNT:
            inv = 1.0 / primes[_HEAD_COUNT:].astype(np.float64)
            pw = inv * inv
            for s in range(2, _S_MAX + 1):
                if s > 2:
                    pw *= inv
                acc = np.longdouble if s <= 10 else np.float64
                self.tail_sums[s] = float(np.sum(pw, dtype=acc))


@lru_cache(maxsize=4)
def _power_sums(m: int) -> _PowerSums:
    return _PowerSums(m)


def _compositions(t: int, k: int) -> Iterator[tuple[int, ...]]:
    if k == 1:
        yield (t,)
        return
    for first in range(t + 1):
        for rest in _compositions(t - first, k - 1):
            yield (first, *rest)


def _multinomial(t: int, composition: Sequence[int]) -> int:
    out = 1
    rem = t
    for c in composition:
        out *= comb(rem, c)
        rem -= c
    return out


@lru_cache(maxsize=200_000)
def _log_product_cached(omegas: tuple[int, ...], m: int) -> float:
    ps = _power_sums(m)
    head_terms = []
    for p in ps.head:
        x = fsum(float(p) ** -w for w in omegas)
        if x >= 1.0:
            return -math.inf
        head_terms.append(log1p(-x))
    head = fsum(head_terms)
    if ps.m <= _HEAD_COUNT:
        return head
    tail_terms = []
    for t in range(1, _T_MAX + 1):
        for composition in _compositions(t, len(omegas)):
            s = sum(w * i for w, i in zip(omegas, composition))
            if s <= _S_MAX:
                coef = _multinomial(t, composition) / t
                tail_terms.append(-coef * ps.tail_sums[s])
    return head + fsum(tail_terms)


def log_truncated_product(omegas: Sequence[int], m: int) -> float:
    """log of prod over the first m primes of (1 - sum_j p^-omega_j).

    Returns -inf when some factor is <= 0 (possible only at p = 2, e.g. four
    exponents all equal to 2), in which case the product is exactly 0. The
    product is invariant under permutations of the exponents, so arguments
    are canonicalized by sorting.
    """
    if not 1 <= len(omegas) <= 4:
        raise RangeError(f"1 to 4 window exponents supported, got {len(omegas)}")
    for w in omegas:
        if not isinstance(w, (int, np.integer)) or isinstance(w, bool) or w < 2:
            raise RangeError(f"window exponents must be integers >= 2, got {tuple(omegas)}")
    return _log_product_cached(tuple(sorted(int(w) for w in omegas)), m)


def truncated_product(omegas: Sequence[int], m: int) -> float:
    """prod over the first m primes of (1 - sum_j p^-omega_j); 0 if degenerate."""
    lg = log_truncated_product(omegas, m)
    return 0.0 if lg == -math.inf else math.exp(lg)


def pi2(omega0: int, omega1: int, spec: EulerProductSpec = DEFAULT_SPEC) -> float:
    """Pair product: limiting density of two consecutive norms below the bounds."""
    return truncated_product((omega0, omega1), spec.prime_count)


def pi3(omega0: int, omega1: int, omega2: int, spec: EulerProductSpec = DEFAULT_SPEC) -> float:
    """Triple product; exactly 0 for degenerate exponent combinations."""
    return truncated_product((omega0, omega1, omega2), spec.prime_count)


# -- zeta and contour densities ----------------------------------------------


def zeta(k: int) -> float:
    """Riemann zeta at an integer k >= 2, by direct series plus tail terms.

    Partial sum to J = 2000 with the Euler-Maclaurin tail
    J^(1-k)/(k-1) - J^-k/2 + k J^-(k+1)/12 - k(k+1)(k+2) J^-(k+3)/720;
    the first omitted term is below 1e-26 for every k >= 2.
    """
    if not isinstance(k, int) or isinstance(k, bool) or k <= 1:
        raise RangeError(f"zeta requires an integer k >= 2, got {k!r}")
    J = 2000
    terms = []
    for j in range(1, J + 1):
        t = float(j) ** -k
        if t == 0.0:
            break
        terms.append(t)
    fj = float(J)
    tail = (
        fj ** (1 - k) / (k - 1)
        - fj**-k / 2.0
        + k * fj ** -(k + 1) / 12.0
        - k * (k + 1) * (k + 2) * fj ** -(k + 3) / 720.0
    )
    return fsum(terms) + tail


def contour_density(k: int) -> float:
    """Asymptotic share of integers whose max exponent is exactly k.

    Equals 1/zeta(k+1) - 1/zeta(k), with 1/zeta(1) taken as 0 because zeta
    diverges at 1.
    """
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise RangeError(f"contour_density requires an integer k >= 1, got {k!r}")
    lower = 0.0 if k == 1 else 1.0 / zeta(k)
    return 1.0 / zeta(k + 1) - lower


# -- joint norm distributions and the growth constant -------------------------


@dataclass(frozen=True)
class JointMass:
    """Truncated joint pmf of the norms of two consecutive integers."""

    pmf: dict[tuple[int, int], float]
    spec: EulerProductSpec

    def total(self) -> float:
        return fsum(self.pmf.values())


def pair_mass(k: int, l: int, spec: EulerProductSpec = DEFAULT_SPEC) -> float:
    """Limiting probability that two consecutive norms equal (k, l).

    Second difference of the pair products in the interior; first differences
    on the k = 1 and l = 1 boundary rows, and the consecutive-squarefree
    density at (1, 1).
    """
    if min(k, l) < 1:
        raise RangeError(f"norms must be >= 1, got {(k, l)}")
    m = spec.prime_count

    def pair(a: int, b: int) -> float:
        return truncated_product((a, b), m)

    if k == 1 and l == 1:
        return pair(2, 2)
    if k == 1:
        return pair(2, l + 1) - pair(2, l)
    if l == 1:
        return pair(k + 1, 2) - pair(k, 2)
    return pair(k + 1, l + 1) - pair(k + 1, l) - pair(k, l + 1) + pair(k, l)


def joint_mass2(spec: EulerProductSpec = DEFAULT_SPEC) -> JointMass:
    """Limiting pmf of (norm(M), norm(M-1)) up to the spec cutoff."""
    n = spec.norm_cutoff
    pmf: dict[tuple[int, int], float] = {}
    for k in range(1, n + 1):
        for l in range(1, n + 1):
            pmf[(k, l)] = pair_mass(k, l, spec)
    return JointMass(pmf, spec)


def triple_mass(k: int, l: int, r: int, spec: EulerProductSpec = DEFAULT_SPEC) -> float:
    """Limiting probability that three consecutive norms equal (k, l, r).

    Alternating-sign differencing over the non-unit coordinates, with unit
    coordinates pinned at exponent 2.
    """
    if min(k, l, r) < 1:
        raise RangeError(f"norms must be >= 1, got {(k, l, r)}")
    m = spec.prime_count
    axes = []
    for v in (k, l, r):
        axes.append([(2, +1)] if v == 1 else [(v + 1, +1), (v, -1)])
    terms = []
    for xa, sa in axes[0]:
        for xb, sb in axes[1]:
            for xc, sc in axes[2]:
                terms.append(sa * sb * sc * truncated_product((xa, xb, xc), m))
    return fsum(terms)


def joint_mass3(
    spec: EulerProductSpec = DEFAULT_SPEC, cutoff: int | None = None
) -> dict[tuple[int, int, int], float]:
    """Truncated pmf of three consecutive norms, keyed by (k, l, r)."""
    n = cutoff if cutoff is not None else spec.norm_cutoff
    out: dict[tuple[int, int, int], float] = {}
    for k in range(1, n + 1):
        for l in range(1, n + 1):
            for r in range(1, n + 1):
                out[(k, l, r)] = triple_mass(k, l, r, spec)
    return out


def c0(spec: EulerProductSpec = DEFAULT_SPEC) -> float:
    """Expected hop length of the limiting norm pair, truncated per spec.

    Evaluates the expectation sum max(k, l) * mass(k, l) over k, l up to the
    cutoff, then cross-checks against the telescoped tail form
    n * pi(n+1, n+1) - sum_t pi(t, t), which is the same truncation assembled
    without differencing. Disagreement beyond 1e-12 raises, since the two
    routes are algebraically identical.
    """
    n = spec.norm_cutoff
    m = spec.prime_count

    def pair(a: int, b: int) -> float:
        return truncated_product((a, b), m)

    terms = [pair(2, 2)]
    for k in range(2, n + 1):
        terms.append(2.0 * k * (pair(2, k + 1) - pair(2, k)))
    for k in range(2, n + 1):
        for l in range(2, n + 1):
            mass = pair(k + 1, l + 1) - pair(k + 1, l) - pair(k, l + 1) + pair(k, l)
            terms.append(max(k, l) * mass)
    primary = fsum(terms)
    tail_form = n * pair(n + 1, n + 1) - fsum(pair(t, t) for t in range(2, n + 1))
    if abs(primary - tail_form) > _CROSS_CHECK_TOL:
        raise ConsistencyError(f"growth-constant forms disagree: {primary!r} vs {tail_form!r}")
    return primary


# -- logarithmic integral and prime-sum constants ------------------------------


def li(x: float) -> float:
    """Offset logarithmic integral: integral from 2 to x of dy/ln(y).

    Computed through the exponential integral as Ei(ln x) - Ei(ln 2).
    """
    if x < 2:
        raise RangeError(f"li requires x >= 2, got {x}")
    return float(expi(math.log(x)) - expi(math.log(2.0)))


_MERTENS_PRIME_LIMIT = 2 * 10**6


def mertens_ab(prime_limit: int = _MERTENS_PRIME_LIMIT) -> tuple[float, float]:
    """The prime-sum constants (A, B) to about 1e-9.

    A is the limit of sum(1/p) - log log x, evaluated through the equivalent
    convergent series gamma + sum over p of (log(1 - 1/p) + 1/p) with an
    integral estimate for the tail; B is sum over p of 1/(p (p - 1)) with the
    matching tail estimate. The tail integrals have the closed form
    integral from P to inf of dt / (t^k ln t) = E1((k-1) ln P).
    """
    from scipy.special import exp1

    primes = build_base_primes(prime_limit).astype(np.float64)
    inv = 1.0 / primes
    a_head = float(np.sum(np.log1p(-inv) + inv, dtype=np.longdouble))
    b_head = float(np.sum(inv * inv / (1.0 - inv), dtype=np.longdouble))
    log_p = math.log(prime_limit)
    t2 = float(exp1(log_p))
    t3 = float(exp1(2.0 * log_p))
    a = float(np.euler_gamma) + a_head - (t2 / 2.0 + t3 / 3.0)
    b = b_head + (t2 + t3)
    return a, b
