"""Multiplicative order of 10, primitive roots, repunit divisibility and factoring."""

from __future__ import annotations

import random
from array import array
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd, isqrt

from .primality import is_prime, sieve_primes

TRIAL_DIVISION_LIMIT = 10**6
DEFAULT_RHO_EFFORT = 200_000
RHO_SEED = 1729


class FactorizationIncomplete(ArithmeticError):
    """Raised when the effort bound runs out before a cofactor is split."""

    def __init__(self, base: int, cofactor: int, partial: list[tuple[int, int]]):
        self.base = base
        self.cofactor = cofactor
        self.partial = partial
        super().__init__(f"could not factor cofactor {cofactor} of {base} within the effort bound")


@dataclass(frozen=True)
class OrderRecord:
    p: int
    h: int
    primitive_root_10: bool


@dataclass(frozen=True)
class Factorization:
    base: int
    factors: list[tuple[int, int]] = field(default_factory=list)

    def product(self) -> int:
        out = 1
        for prime, exp in self.factors:
            out *= prime**exp
        return out

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " · ".join(str(p) if e == 1 else f"{p}^{e}" for p, e in self.factors)


def pow_mod(base: int, exp: int, m: int) -> int:
    """``base**exp % m`` by right-to-left square-and-multiply."""
    if m < 2:
        raise ValueError("modulus must be at least 2")
    if exp < 0:
        raise ValueError("exponent must be non-negative")
    result = 1
    base %= m
    while exp:
        if exp & 1:
            result = result * base % m
        base = base * base % m
        exp >>= 1
    return result


def _require_order_prime(p: int) -> None:
    if p in (2, 5):
        raise ValueError(f"10 is not invertible modulo {p}")
    if not is_prime(p).is_prime:
        raise ValueError(f"{p} is not prime")


@lru_cache(maxsize=None)
def multiplicative_order_10(p: int) -> OrderRecord:
    """Least h > 0 with 10**h == 1 (mod p).

    Start from h = p - 1 and strip each prime factor q of p - 1 while
    10**(h/q) is still 1.
    """
    _require_order_prime(p)
    if p == 3:
        return OrderRecord(3, 1, False)
    h = p - 1
    for q, e in factorize(p - 1).factors:
        for _ in range(e):
            if pow_mod(10, h // q, p) == 1:
                h //= q
            else:
                break
    return OrderRecord(p, h, h == p - 1)


def is_primitive_root_10(p: int) -> bool:
    return multiplicative_order_10(p).primitive_root_10


def repunit_divisible(n: int, p: int) -> bool:
    """Whether the n-digit repunit is divisible by the prime p (p > 5)."""
    if n < 1:
        raise ValueError("repunit digit count must be at least 1")
    if p <= 3 or p == 5:
        raise ValueError(f"repunit divisibility by order needs a prime p > 3, p != 5; got {p}")
    return n % multiplicative_order_10(p).h == 0


@lru_cache(maxsize=1)
def _smallest_factor_table() -> array:
    # descending so the smallest prime writes last
    spf = array("I", bytes(4 * (TRIAL_DIVISION_LIMIT + 1)))
    for p in reversed(sieve_primes(isqrt(TRIAL_DIVISION_LIMIT))):
        start = p * p
        count = len(range(start, TRIAL_DIVISION_LIMIT + 1, p))
        spf[start::p] = array("I", [p]) * count
    return spf


def _brent_rho(n: int, rng: random.Random, budget: int) -> tuple[int | None, int]:
    """One Brent-rho attempt. Returns (factor or None, iterations spent)."""
    y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
    g = r = q = 1
    spent = 0
    x = ys = y
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
        spent += r
        r *= 2
        if spent > budget:
            return None, spent
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = gcd(abs(x - ys), n)
            if g > 1:
                break
    return (g if g != n else None), spent


def _split(n: int, rng: random.Random, budget: list[int]) -> int | None:
    while budget[0] > 0:
        f, spent = _brent_rho(n, rng, budget[0])
        budget[0] -= spent
        if f is not None:
            return f
    return None


def factorize(x: int, effort: int = DEFAULT_RHO_EFFORT) -> Factorization:
    """Full prime factorization of ``x``.

    Trial division by primes below 10**6 (table lookup when x itself is below
    10**6), then Brent's rho with a fixed seed.  Raises FactorizationIncomplete
    rather than returning an unverified answer.
    """
    if x < 1:
        raise ValueError("can only factor positive integers")
    counts: dict[int, int] = {}
    rest = x
    if rest <= TRIAL_DIVISION_LIMIT:
        spf = _smallest_factor_table()
        while rest > 1:
            p = spf[rest] or rest
            counts[p] = counts.get(p, 0) + 1
            rest //= p
        return Factorization(x, sorted(counts.items()))

    for p in sieve_primes(TRIAL_DIVISION_LIMIT):
        if p * p > rest:
            break
        while rest % p == 0:
            counts[p] = counts.get(p, 0) + 1
            rest //= p
    if rest > 1 and rest < TRIAL_DIVISION_LIMIT**2:
        # no factor below 10**6 and below 10**12: rest is prime
        counts[rest] = counts.get(rest, 0) + 1
        rest = 1

    rng = random.Random(RHO_SEED)
    budget = [effort]
    stack = [rest] if rest > 1 else []
    while stack:
        n = stack.pop()
        if is_prime(n).is_prime:
            counts[n] = counts.get(n, 0) + 1
            continue
        f = _split(n, rng, budget)
        if f is None:
            partial = sorted(counts.items())
            raise FactorizationIncomplete(x, n, partial)
        stack.extend((f, n // f))
    return Factorization(x, sorted(counts.items()))


def find_divisor(x: int, effort: int = DEFAULT_RHO_EFFORT) -> int | None:
    """Smallest prime factor of composite ``x`` if it can be found cheaply."""
    try:
        primes = factorize(x, effort).primes()
    except FactorizationIncomplete as exc:
        if exc.partial:
            return exc.partial[0][0]
        return None
    if len(primes) == 1 and primes[0] == x:
        return None
    return primes[0] if primes else None
