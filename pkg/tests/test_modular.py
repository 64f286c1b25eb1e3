import threading

import pytest
from hypothesis import given, settings, strategies as st

from permprime.digits import repunit_digits, repunit_value, residue
from permprime.modular import (
    FactorizationIncomplete,
    factorize,
    find_divisor,
    is_primitive_root_10,
    multiplicative_order_10,
    pow_mod,
    repunit_divisible,
)
from permprime.primality import sieve_primes

PRIMES_1000 = [p for p in sieve_primes(1000) if p > 5]


def brute_order(p):
    h, x = 1, 10 % p
    while x != 1:
        x = x * 10 % p
        h += 1
    return h


@pytest.mark.parametrize("args, expected", [((10, 3, 7), 6), ((10, 6, 13), 1), ((10, 0, 7), 1)])
def test_pow_mod_examples(args, expected):
    assert pow_mod(*args) == expected


def test_pow_mod_powers_of_ten_mod_seven():
    assert [pow_mod(10, i, 7) for i in range(6)] == [1, 3, 2, 6, 4, 5]


@given(st.integers(-(10**30), 10**30), st.integers(0, 10**6), st.integers(2, 10**20))
def test_pow_mod_matches_builtin(b, e, m):
    assert pow_mod(b, e, m) == pow(b, e, m)


def test_pow_mod_rejects_bad_arguments():
    with pytest.raises(ValueError):
        pow_mod(10, 2, 1)
    with pytest.raises(ValueError):
        pow_mod(10, -1, 7)


@pytest.mark.parametrize("p, h, root", [(7, 6, True), (13, 6, False), (239, 7, False), (4649, 7, False)])
def test_order_examples(p, h, root):
    rec = multiplicative_order_10(p)
    assert (rec.p, rec.h, rec.primitive_root_10) == (p, h, root)


@pytest.mark.parametrize("p, expected", [(17, True), (19, True), (23, True), (29, True), (13, False), (7, True)])
def test_primitive_root_examples(p, expected):
    assert is_primitive_root_10(p) is expected


@pytest.mark.parametrize("p", [1, 2, 5, 9, 91])
def test_order_rejects(p):
    with pytest.raises(ValueError):
        multiplicative_order_10(p)


def test_order_matches_brute_force_below_10000():
    for p in sieve_primes(10**4):
        if p in (2, 5):
            continue
        rec = multiplicative_order_10(p)
        assert pow_mod(10, rec.h, p) == 1
        assert (p - 1) % rec.h == 0
        assert rec.h == brute_order(p)
        assert rec.primitive_root_10 == (rec.h == p - 1)


def test_order_of_large_prime():
    p = 10**18 - 11
    rec = multiplicative_order_10(p)
    assert pow(10, rec.h, p) == 1
    for q in factorize(rec.h).primes():
        assert pow(10, rec.h // q, p) != 1


@pytest.mark.parametrize("n, p", [(6, 7), (3, 37), (7, 239)])
def test_repunit_divisible_examples(n, p):
    assert repunit_divisible(n, p)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_repunit_divisible_rejects_small(p):
    with pytest.raises(ValueError):
        repunit_divisible(6, p)


def test_repunit_divisibility_by_order_matches_residue():
    for p in PRIMES_1000:
        for n in range(1, 201):
            assert repunit_divisible(n, p) == (residue(repunit_digits(n), p) == 0), (n, p)


@pytest.mark.parametrize(
    "x, factors",
    [(111, [(3, 1), (37, 1)]), (11111, [(41, 1), (271, 1)]), (1111111, [(239, 1), (4649, 1)]), (1, []), (2**10, [(2, 10)])],
)
def test_factorize_examples(x, factors):
    f = factorize(x)
    assert f.factors == factors
    assert f.product() == x


def test_factors_of_prime_length_repunit_share_its_order():
    for p in factorize(repunit_value(7)).primes():
        assert multiplicative_order_10(p).h == 7


@pytest.mark.slow
def test_factorize_every_integer_up_to_one_million():
    primes = set(sieve_primes(10**6))
    for x in range(1, 10**6 + 1):
        f = factorize(x)
        assert f.product() == x
        assert all(p in primes for p in f.primes())


@settings(max_examples=50, deadline=None)
@given(st.integers(10**6, 10**30))
def test_factorize_large(x):
    f = factorize(x)
    assert f.product() == x
    assert f.primes() == sorted(f.primes())


def test_factorize_repunits():
    for n in range(8, 25):
        f = factorize(repunit_value(n))
        assert f.product() == repunit_value(n)


def test_factorize_reports_incomplete_cofactor():
    p, q = 1000000000039, 1000000000061
    with pytest.raises(FactorizationIncomplete) as info:
        factorize(6 * p * q, effort=10)
    assert info.value.cofactor == p * q
    assert info.value.partial == [(2, 1), (3, 1)]


def test_find_divisor():
    assert find_divisor(91) == 7
    assert find_divisor(97) is None
    assert find_divisor(1000000007 * 1000000009) == 1000000007
    assert find_divisor(1000000000039 * 1000000000061, effort=10) is None


def test_order_cache_under_threads():
    results = []

    def work():
        results.append([multiplicative_order_10(p) for p in PRIMES_1000])

    threads = [threading.Thread(target=work) for _ in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r == results[0] for r in results)
