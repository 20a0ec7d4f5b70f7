"""Exact factorization, prime signatures, and signature norms.

Numbers are factored by trial division over a fixed table of primes up to
10**6; any remaining cofactor is handled by a deterministic Miller-Rabin
test plus Brent-cycle splitting. Everything here is pure and reentrant, and
the factorization path is fully deterministic (fixed Brent parameters, no
randomness), so repeated runs produce identical results.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from .errors import RangeError
from .sieve import build_base_primes

# Largest modulus for which the fixed Miller-Rabin base set below is a proven
# deterministic primality test (first twelve primes, Sorenson-Webster bound).
MAX_SUPPORTED = 3_317_044_064_679_887_385_961_981
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_TRIAL_LIMIT = 10**6
_trial_primes: list[int] | None = None


def _trial_table() -> list[int]:
    # Benign race: concurrent first calls build identical tables and the
    # final assignment is atomic, so readers never see a partial table.
    global _trial_primes
    if _trial_primes is None:
        _trial_primes = build_base_primes(_TRIAL_LIMIT).tolist()
    return _trial_primes


@dataclass(frozen=True)
class PrimeSignature:
    """Ordered (prime, exponent) pairs of a natural number; empty means 1."""

    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        last = 1
        for p, e in self.factors:
            if p <= last:
                raise ValueError(f"primes must be strictly increasing, got {self.factors}")
            if e < 1:
                raise ValueError(f"exponents must be >= 1, got {self.factors}")
            last = p

    @property
    def value(self) -> int:
        """The natural number this signature factors."""
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out

    @property
    def max_exponent(self) -> int:
        return max((e for _, e in self.factors), default=0)

    @property
    def total_exponent(self) -> int:
        return sum(e for _, e in self.factors)


def _check_range(n: int, what: str = "n") -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise RangeError(f"{what} must be an integer, got {type(n).__name__}")
    if not 1 <= n <= MAX_SUPPORTED:
        raise RangeError(f"{what} must be in [1, {MAX_SUPPORTED}], got {n}")


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for 1 <= n <= MAX_SUPPORTED."""
    _check_range(n)
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int) -> int:
    """A nontrivial factor of composite odd n > 1, deterministically.

    Brent's cycle variant with batched gcd; the polynomial offset c walks a
    fixed sequence so results never depend on a random source.
    """
    if n % 2 == 0:
        return 2
    for c in range(1, 256):
        y, r, q = 2, 1, 1
        g, ys, x = 1, 0, 0
        m = 128
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"cycle splitting failed for {n}")  # pragma: no cover


def _split(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _brent_rho(n)
    _split(d, out)
    _split(n // d, out)


def factorize(n: int) -> PrimeSignature:
    """Full prime signature of n; the empty signature represents 1."""
    _check_range(n)
    factors: list[tuple[int, int]] = []
    rest = n
    for p in _trial_table():
        if p * p > rest:
            break
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            factors.append((p, e))
    if 1 < rest <= _TRIAL_LIMIT**2 or (rest > 1 and is_prime(rest)):
        # Either below the trial square (hence prime) or certified prime.
        factors.append((rest, 1))
    elif rest > 1:
        extra: dict[int, int] = {}
        _split(rest, extra)
        factors.extend(sorted(extra.items()))
    return PrimeSignature(tuple(factors))


def norm_inf(n: int) -> int:
    """Largest exponent in the factorization of n; 0 only for n = 1."""
    return factorize(n).max_exponent


def norm_1(n: int) -> int:
    """Number of prime factors of n counted with multiplicity; 0 for n = 1."""
    return factorize(n).total_exponent


def chebyshev_distance(a: int, b: int) -> int:
    """Max absolute exponent difference between the signatures of a and b.

    Symmetric, zero iff a == b, and for coprime a, b it equals
    max(norm_inf(a), norm_inf(b)).
    """
    sa = factorize(a).factors
    sb = factorize(b).factors
    out = 0
    i = j = 0
    while i < len(sa) or j < len(sb):
        if j >= len(sb) or (i < len(sa) and sa[i][0] < sb[j][0]):
            out = max(out, sa[i][1])
            i += 1
        elif i >= len(sa) or sb[j][0] < sa[i][0]:
            out = max(out, sb[j][1])
            j += 1
        else:
            out = max(out, abs(sa[i][1] - sb[j][1]))
            i += 1
            j += 1
    return out
