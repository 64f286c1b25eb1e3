"""Primality testing with checkable evidence.

Below 10**18 (numbers of at most 18 decimal digits) the answer is proven:
Miller-Rabin with the first twelve prime bases {2, 3, ..., 37} has no strong
pseudoprime below 3.317e24 (Sorenson and Webster, "Strong pseudoprimes to
twelve prime bases", Math. Comp. 86 (2017)).  From 19 digits on, seeded
random-base Miller-Rabin gives a probable prime with error at most
4**-rounds.  The proven tier stops at 18 digits on purpose, so 19-digit
repunits are reported as probable primes like every other large repunit.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from functools import lru_cache

DETERMINISTIC_LIMIT = 10**18
DETERMINISTIC_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# 4**-41 < 2**-80
DEFAULT_ROUNDS = 41
DEFAULT_SEED = 0x5EED

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)


class Status(str, enum.Enum):
    PRIME = "Prime"
    PROBABLE_PRIME = "ProbablePrime"
    COMPOSITE = "Composite"


@dataclass(frozen=True)
class PrimalityVerdict:
    status: Status
    factor: int | None = None
    witness: int | None = None
    rounds: int | None = None
    note: str | None = None

    @property
    def is_prime(self) -> bool:
        """True for both proven and probable primes."""
        return self.status is not Status.COMPOSITE

    def recheck(self, x: int) -> bool:
        """Re-verify composite evidence against ``x``; other verdicts pass through."""
        if self.status is not Status.COMPOSITE:
            return True
        if x < 2:
            return True
        if self.factor is not None:
            return 1 < self.factor < x and x % self.factor == 0
        if self.witness is not None:
            return not strong_probable_prime(x, self.witness)
        return False


def _decompose(n: int) -> tuple[int, int]:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    return d, s


def strong_probable_prime(n: int, base: int) -> bool:
    """Whether odd ``n > 2`` passes the strong probable-prime test to ``base``."""
    base %= n
    if base in (0, 1, n - 1):
        return True
    d, s = _decompose(n)
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(x: int, rounds: int = DEFAULT_ROUNDS, seed: int = DEFAULT_SEED) -> PrimalityVerdict:
    if x < 2:
        return PrimalityVerdict(Status.COMPOSITE, note="below 2")
    for p in _SMALL_PRIMES:
        if x == p:
            return PrimalityVerdict(Status.PRIME)
        if x % p == 0:
            return PrimalityVerdict(Status.COMPOSITE, factor=p)
    if x < _SMALL_PRIMES[-1] ** 2:
        return PrimalityVerdict(Status.PRIME)

    if x < DETERMINISTIC_LIMIT:
        for base in DETERMINISTIC_BASES:
            if not strong_probable_prime(x, base):
                return PrimalityVerdict(Status.COMPOSITE, witness=base)
        return PrimalityVerdict(Status.PRIME)

    # a fresh generator per call keeps verdicts independent of call order
    rng = random.Random(seed)
    for _ in range(rounds):
        base = rng.randrange(2, x - 1)
        if not strong_probable_prime(x, base):
            return PrimalityVerdict(Status.COMPOSITE, witness=base)
    return PrimalityVerdict(Status.PROBABLE_PRIME, rounds=rounds)


def sieve_primes(limit: int) -> list[int]:
    if limit < 2:
        raise ValueError("sieve limit must be at least 2")
    return list(_sieve(limit))


@lru_cache(maxsize=8)
def _sieve(limit: int) -> tuple[int, ...]:
    flags = bytearray(b"\x01") * (limit + 1)
    flags[0:2] = b"\x00\x00"
    p = 2
    while p * p <= limit:
        if flags[p]:
            flags[p * p::p] = bytes(len(range(p * p, limit + 1, p)))
        p += 1
    return tuple(i for i, f in enumerate(flags) if f)
