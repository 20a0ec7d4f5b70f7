"""Words over the norm sequence: forbidden patterns and occurrence search.

A word is a finite string of norm values. Any 2^(n+1) consecutive integers
contain one divisible by 2^(n+1), hence with norm > n, so words of length
2^(n+1) whose symbols all stay below n + 1 can never occur. For admissible
words, a candidate position is built by the Chinese remainder theorem from
one prime power per letter, then shifted by multiples of the modulus until
every norm matches exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

from .errors import RangeError
from .factorint import MAX_SUPPORTED, is_prime, norm_inf


@dataclass(frozen=True)
class Word:
    """Norm string omega_1 .. omega_n; all symbols are positive integers."""

    symbols: tuple[int, ...]

    def __post_init__(self):
        if len(self.symbols) == 0:
            raise ValueError("a word needs at least one symbol")
        if any(not isinstance(s, int) or isinstance(s, bool) or s < 1 for s in self.symbols):
            raise ValueError(f"symbols must be integers >= 1, got {self.symbols}")

    def __len__(self) -> int:
        return len(self.symbols)


@dataclass(frozen=True)
class Occurrence:
    """A verified appearance of a word: norms match exactly at x, x+1, ..."""

    x: int  # first position, already shifted by k * modulus
    k: int
    modulus: int
    prime_assignment: tuple[int, ...]


def is_forbidden(word: Word) -> bool:
    """True iff the word can never occur: length 2^(n+1) with symbols < n+1."""
    length = len(word)
    if length < 4 or length & (length - 1):
        return False
    n = length.bit_length() - 2  # length == 2**(n+1)
    return max(word.symbols) < n + 1


def contains_forbidden(word: Word) -> bool:
    """True iff some window of consecutive symbols forms a forbidden word."""
    length = len(word)
    n = 1
    while 2 ** (n + 1) <= length:
        w = 2 ** (n + 1)
        for i in range(length - w + 1):
            if max(word.symbols[i : i + w]) < n + 1:
                return True
        n += 1
    return False


def crt_solve(word: Word, primes: tuple[int, ...] | list[int]) -> tuple[int, int]:
    """Solve x + i - 1 == 0 mod primes[i]^symbols[i] for all letters.

    Returns (x, M) with x in [1, M], M the product of the prime powers.
    Primes must be distinct (the moduli are then pairwise coprime, so the
    solution is unique mod M).
    """
    primes = tuple(int(p) for p in primes)
    if len(primes) != len(word):
        raise ValueError(f"need {len(word)} primes, got {len(primes)}")
    if len(set(primes)) != len(primes):
        raise ValueError(f"primes must be distinct, got {primes}")
    for p in primes:
        if p < 2 or not is_prime(p):
            raise ValueError(f"{p} is not prime")
    moduli = [p**w for p, w in zip(primes, word.symbols)]
    big_m = prod(moduli)
    if big_m > MAX_SUPPORTED:
        raise RangeError(f"modulus {big_m} exceeds the supported range")
    x, m = 0, 1
    for i, q in enumerate(moduli):
        # lift x (mod m) to also satisfy x == -i (mod q)
        r = (-i - x) % q
        inv = pow(m % q, -1, q)
        x += m * ((r * inv) % q)
        m *= q
    x %= big_m
    return (x if x >= 1 else big_m), big_m


def verify_occurrence(x: int, word: Word) -> bool:
    """True iff the norms at x, x+1, ... equal the word symbols exactly."""
    if x < 1 or x + len(word) - 1 > MAX_SUPPORTED:
        raise RangeError(f"window [{x}, {x + len(word) - 1}] out of supported range")
    return all(norm_inf(x + i) == w for i, w in enumerate(word.symbols))


def find_word(
    word: Word,
    primes: tuple[int, ...] | list[int] | None = None,
    max_k: int = 10_000,
) -> Occurrence | None:
    """Search for the word at positions x + k*M, k = 0 .. max_k.

    Words containing a forbidden subword are rejected outright. When no
    prime assignment is given, the first len(word) primes are used. Returns
    the smallest-k verified occurrence, or None if the scan is exhausted.
    """
    if contains_forbidden(word):
        raise ValueError(
            "word contains a forbidden subword (a 2^(n+1) window with all "
            "symbols below n+1) and never occurs"
        )
    if primes is None:
        primes = _first_k_primes(len(word))
    x, big_m = crt_solve(word, primes)
    length = len(word)
    for k in range(max_k + 1):
        base = x + k * big_m
        if base + length - 1 > MAX_SUPPORTED:
            raise RangeError(f"candidate {base} exceeds the supported range at k={k}")
        if _quick_reject(base, word, primes):
            continue
        if verify_occurrence(base, word):
            return Occurrence(base, k, big_m, tuple(int(p) for p in primes))
    return None


def _quick_reject(base: int, word: Word, primes) -> bool:
    # The CRT guarantees exponent >= symbol at each letter; one extra power
    # of the assigned prime already rules the candidate out.
    for i, (p, w) in enumerate(zip(primes, word.symbols)):
        if (base + i) % p ** (w + 1) == 0:
            return True
    return False


def _first_k_primes(k: int) -> tuple[int, ...]:
    out = []
    n = 2
    while len(out) < k:
        if is_prime(n):
            out.append(n)
        n += 1
    return tuple(out)
