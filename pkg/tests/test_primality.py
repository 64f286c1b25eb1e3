import pytest
import sympy
from hypothesis import given, settings, strategies as st

from permprime.digits import repunit_value
from permprime.primality import (
    DETERMINISTIC_LIMIT,
    PrimalityVerdict,
    Status,
    is_prime,
    sieve_primes,
    strong_probable_prime,
)


def test_examples():
    assert is_prime(11).status is Status.PRIME
    v = is_prime(111)
    assert v.status is Status.COMPOSITE and v.factor == 3
    assert is_prime(repunit_value(19)).status is Status.PROBABLE_PRIME
    one = is_prime(1)
    assert one.status is Status.COMPOSITE and one.note == "below 2"
    assert is_prime(0).status is Status.COMPOSITE


def test_sieve_examples():
    assert sieve_primes(10) == [2, 3, 5, 7]
    assert sieve_primes(30)[-2:] == [23, 29]
    assert 983 in sieve_primes(1000)
    assert sieve_primes(2) == [2]
    with pytest.raises(ValueError):
        sieve_primes(1)


@pytest.mark.slow
def test_agrees_with_sieve_below_one_million():
    primes = set(sieve_primes(10**6))
    wrong = [x for x in range(10**6) if is_prime(x).is_prime != (x in primes)]
    assert wrong == []
    assert not any(is_prime(p).status is Status.PROBABLE_PRIME for p in (999983, 2, 97))


@pytest.mark.parametrize(
    "n",
    [
        2047,  # base 2
        1373653,  # bases 2, 3
        3215031751,  # bases 2, 3, 5, 7
        3825123056546413051,  # bases 2..23
        318665857834031151167461,  # bases 2..37, past the proven tier
    ],
)
def test_strong_pseudoprimes_are_caught(n):
    v = is_prime(n)
    assert v.status is Status.COMPOSITE
    assert v.recheck(n)


def test_probable_prime_only_above_proven_tier():
    assert is_prime(10**18 - 11).status is Status.PRIME  # largest 18-digit prime
    assert is_prime(2**61 - 1).status is Status.PROBABLE_PRIME
    q = 2**89 - 1
    v = is_prime(q)
    assert v.status is Status.PROBABLE_PRIME and v.rounds == 41
    # 4**-41 < 2**-80
    assert 4.0**-v.rounds < 2.0**-80


def test_deterministic_across_calls():
    n = (2**89 - 1) * (2**61 - 1)
    assert is_prime(n) == is_prime(n)


@settings(max_examples=300)
@given(st.integers(0, DETERMINISTIC_LIMIT - 1))
def test_word_range_matches_sympy(x):
    v = is_prime(x)
    assert v.is_prime == sympy.isprime(x)
    assert v.status is not Status.PROBABLE_PRIME
    assert v.recheck(x)


@settings(max_examples=100)
@given(st.integers(DETERMINISTIC_LIMIT, 2**200))
def test_large_range_matches_sympy(x):
    v = is_prime(x)
    assert v.is_prime == sympy.isprime(x)
    assert v.status is not Status.PRIME
    assert v.recheck(x)


@settings(max_examples=200)
@given(st.integers(2, 2**40), st.integers(2, 2**40))
def test_composite_evidence_rechecks(a, b):
    n = a * b
    v = is_prime(n)
    assert v.status is Status.COMPOSITE
    assert v.recheck(n)
    if v.factor is not None:
        assert n % v.factor == 0 and 1 < v.factor < n
    else:
        assert not strong_probable_prime(n, v.witness)


def test_recheck_rejects_bogus_evidence():
    assert not PrimalityVerdict(Status.COMPOSITE, factor=5).recheck(91)
    assert not PrimalityVerdict(Status.COMPOSITE, witness=2).recheck(97)
