"""Exhaustive searches: absolute primes by digit count, near-repunit scans, useful primes."""

from __future__ import annotations

import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Any

from .certify import (
    AbsolutePrime,
    Certificate,
    Composite,
    Kind,
    Limits,
    LIMIT_PRESETS,
    lemma6_constraint,
    verdict,
)
from .digits import (
    ODD_UNIT_DIGITS,
    DigitMultiset,
    distinct_permutations,
    multiset_of,
    near_repunit_digits,
    value_of,
)
from .modular import OrderRecord, find_divisor, multiplicative_order_10
from .primality import PrimalityVerdict, is_prime, sieve_primes

MAX_ENUMERATION_DIGITS = 7
MAX_SCAN_DIGITS = 40
SCAN_ORDER_PRIMES = (7, 17, 19)
# divisors tried against each arrangement before the general small primes
SCAN_PREFERRED_DIVISORS = (3, 7, 17, 19)
SCAN_SMALL_PRIMES = SCAN_PREFERRED_DIVISORS + tuple(p for p in sieve_primes(1000) if p not in SCAN_PREFERRED_DIVISORS)


@dataclass(frozen=True)
class FoundPrime:
    value: int
    primality: PrimalityVerdict


@dataclass(frozen=True)
class ScanRow:
    a: int
    b: int
    n: int
    certificate: Certificate | None


@dataclass
class SearchReport:
    parameters: dict[str, Any]
    found: list[FoundPrime] = field(default_factory=list)
    rejected_count: dict[str, int] = field(default_factory=dict)
    accepted_count: int = 0
    unknown: list[str] = field(default_factory=list)
    candidate_count: int = 0
    rows: list[ScanRow] = field(default_factory=list)
    elapsed: float = field(default=0.0, compare=False)

    @property
    def values(self) -> list[int]:
        return [f.value for f in self.found]


def _multisets(n: int, alphabet: tuple[int, ...]):
    for combo in combinations_with_replacement(alphabet, n):
        if any(combo):
            yield DigitMultiset.from_mapping(Counter(combo))


def _judge(ms: DigitMultiset, limits: Limits):
    return ms, verdict(ms, limits)


def enumerate_absolute_primes(
    n: int,
    limits: Limits | None = None,
    max_digits: int = MAX_ENUMERATION_DIGITS,
    workers: int = 1,
) -> SearchReport:
    """All n-digit absolute primes, by running the verdict pipeline on every digit multiset.

    From four digits on only 1, 3, 7 and 9 are enumerated; any other digit can be
    moved to the units place.
    """
    if not 1 <= n <= max_digits:
        raise ValueError(f"digit count must be in 1..{max_digits}, got {n}")
    limits = limits or LIMIT_PRESETS["default"]
    alphabet = tuple(range(10)) if n <= 3 else ODD_UNIT_DIGITS
    started = time.perf_counter()
    candidates = list(_multisets(n, alphabet))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            judged = list(pool.map(_judge, candidates, [limits] * len(candidates), chunksize=16))
    else:
        judged = [_judge(ms, limits) for ms in candidates]

    report = SearchReport(
        parameters={
            "digits": n,
            "alphabet": "".join(map(str, alphabet)),
            "alphabet_reason": "all digits" if n <= 3 else "other digits go to the units place",
            "filters": True,
        },
        candidate_count=len(candidates),
    )
    found = []
    rejected: Counter[str] = Counter()
    for ms, v in judged:
        if isinstance(v, AbsolutePrime):
            report.accepted_count += 1
            found.extend(FoundPrime(value_of(p), pv) for p, pv in v.evidence)
        elif isinstance(v, Composite):
            rejected[v.certificate.kind.value] += 1
        else:
            report.unknown.append(str(ms))
    report.found = sorted(found, key=lambda f: f.value)
    report.rejected_count = dict(sorted(rejected.items()))
    report.elapsed = time.perf_counter() - started
    return report


def brute_force_absolute_primes(n: int) -> list[int]:
    """n-digit absolute primes with no filters: test every permutation of every n-digit number."""
    if n < 1:
        raise ValueError("digit count must be positive")
    memo: dict[DigitMultiset, bool] = {}
    out = []
    for x in range(10 ** (n - 1) if n > 1 else 0, 10**n):
        ms = DigitMultiset.of_number(x)
        ok = memo.get(ms)
        if ok is None:
            ok = all(is_prime(value_of(p)).is_prime for p in distinct_permutations(ms))
            memo[ms] = ok
        if ok:
            out.append(x)
    return out


def _scan_one(a: int, b: int, n: int, limits: Limits) -> Certificate | None:
    ds = near_repunit_digits(a, b, n)
    ms = multiset_of(ds)
    if ds.digit_sum() % 3 == 0:
        return Certificate(Kind.DIGIT_SUM3, ds, 3, "digit-sum")
    for p in SCAN_ORDER_PRIMES:
        outcome = lemma6_constraint(a, b, n, p)
        if isinstance(outcome, Certificate):
            return outcome
    perms = list(distinct_permutations(ms))
    values = [value_of(perm) for perm in perms]
    for p in SCAN_SMALL_PRIMES:
        for perm, value in zip(perms, values):
            if value % p == 0 and value > p:
                return Certificate(Kind.PERMUTATION_DIVISOR, perm, p, "small-prime")
    for perm in perms:
        value = value_of(perm)
        tested = is_prime(value, limits.rounds)
        if not tested.is_prime:
            divisor = tested.factor or find_divisor(value, limits.factor_effort)
            if divisor is not None:
                return Certificate(Kind.PERMUTATION_DIVISOR, perm, divisor, "exhaustive")
    return None


def scan_near_repunits(n_lo: int, n_hi: int, limits: Limits | None = None, max_n: int = MAX_SCAN_DIGITS) -> SearchReport:
    """Try to certify every a..ab with a != b in {1, 3, 7, 9} and n_lo <= n <= n_hi composite."""
    if not 7 <= n_lo <= n_hi <= max_n:
        raise ValueError(f"need 7 <= from <= to <= {max_n}, got {n_lo}..{n_hi}")
    limits = limits or LIMIT_PRESETS["default"]
    started = time.perf_counter()
    report = SearchReport(parameters={"from": n_lo, "to": n_hi, "order_primes": list(SCAN_ORDER_PRIMES)})
    rejected: Counter[str] = Counter()
    for a in ODD_UNIT_DIGITS:
        for b in ODD_UNIT_DIGITS:
            if a == b:
                continue
            for n in range(n_lo, n_hi + 1):
                report.candidate_count += 1
                cert = _scan_one(a, b, n, limits)
                if cert is not None:
                    cert.verify(multiset_of(near_repunit_digits(a, b, n)))
                    rejected[cert.kind.value] += 1
                else:
                    # every arrangement passed; hand the multiset to the full verdict
                    v = verdict(multiset_of(near_repunit_digits(a, b, n)), limits)
                    if isinstance(v, AbsolutePrime):
                        report.accepted_count += 1
                        report.found.extend(FoundPrime(value_of(p), pv) for p, pv in v.evidence)
                    elif isinstance(v, Composite):
                        cert = v.certificate
                        rejected[cert.kind.value] += 1
                    else:
                        report.unknown.append(f"B({a},{b},{n})")
                report.rows.append(ScanRow(a, b, n, cert))
    report.rows.sort(key=lambda r: (r.a, r.b, r.n))
    report.found.sort(key=lambda f: f.value)
    report.rejected_count = dict(sorted(rejected.items()))
    report.elapsed = time.perf_counter() - started
    return report


def useful_primes(limit: int) -> list[OrderRecord]:
    """Primes p <= limit, p > 5, for which 10 is a primitive root."""
    if limit < 7:
        raise ValueError("limit must be at least 7")
    return [rec for p in sieve_primes(limit) if p > 5 for rec in [multiplicative_order_10(p)] if rec.primitive_root_10]


def bound_primes(limit: int) -> list[OrderRecord]:
    """Useful primes that may feed the digit-count bound: those above 7."""
    return [rec for rec in useful_primes(limit) if rec.p > 7]
