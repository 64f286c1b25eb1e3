"""Compositeness certificates for digit multisets and the absolute-prime verdict.

A digit multiset is an absolute prime candidate when every distinct arrangement
of its digits is prime.  Each filter below either proves some arrangement
composite, returning a ``Certificate`` that names the arrangement and a proper
divisor, or returns ``None``.  Every certificate is re-checked before it leaves
this module.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass
from math import gcd
from typing import Sequence, Union

from .digits import (
    ODD_UNIT_DIGITS,
    DigitMultiset,
    DigitString,
    distinct_permutations,
    multiset_of,
    near_repunit_digits,
    repunit_digits,
    repunit_value,
    residue,
    value_of,
    with_digit_at,
)
from .modular import OrderRecord, find_divisor, multiplicative_order_10
from .primality import DEFAULT_ROUNDS, PrimalityVerdict, is_prime

EVEN_OR_FIVE = (0, 2, 4, 5, 6, 8)

# last four digits K_i with K_i = i (mod 7)
FOUR_DIGIT_TAILS = ("7931", "1793", "9137", "7913", "7193", "1937", "7139")

# (i, j) with 10**i + 10**j = 0, 1, ..., 6 (mod 7) in that order
THREE_TWO_POSITIONS = ((4, 1), (3, 2), (3, 1), (2, 0), (1, 0), (4, 0), (4, 2))

# primes tried by the order constraint inside verdict(); 10 is a primitive root of each
ORDER_CHAIN = (7, 17, 19, 23, 29)


class CertificateError(AssertionError):
    """A certificate failed re-verification. Always a bug in the emitter."""


class HypothesisNotMet(ValueError):
    """The digit pair's argument needs a property of n that does not hold."""


class Kind(str, enum.Enum):
    UNITS_PLACE = "UnitsPlace"
    PERMUTATION_DIVISOR = "PermutationDivisor"
    DIGIT_SUM3 = "DigitSum3"
    ALGEBRAIC_FACTOR = "AlgebraicFactor"
    TRIVIAL_FACTOR = "TrivialFactor"


@dataclass(frozen=True)
class Certificate:
    """An arrangement of the digits together with a proper divisor of its value.

    ``divisor`` is None only for a TrivialFactor whose witness is 0 or 1.
    """

    kind: Kind
    witness: DigitString
    divisor: int | None
    lemma_tag: str

    @property
    def value(self) -> int:
        return value_of(self.witness)

    def problems(self, ms: DigitMultiset | None = None) -> list[str]:
        """Everything wrong with this certificate; empty when it is sound."""
        out = []
        if ms is not None and multiset_of(self.witness) != ms:
            out.append(f"witness {self.witness} is not an arrangement of {ms}")
        value = self.value
        d = self.divisor
        if d is None:
            if not (self.kind is Kind.TRIVIAL_FACTOR and value < 2):
                out.append("missing divisor")
            return out
        if not 1 < d < value:
            out.append(f"divisor {d} is not strictly between 1 and {value}")
        elif value % d:
            out.append(f"{d} does not divide {value}")
        if self.kind is Kind.UNITS_PLACE:
            if self.witness.digits[-1] not in EVEN_OR_FIVE or d not in (2, 5) or value <= 5:
                out.append("units-place witness must end in 0, 2, 4, 5, 6 or 8 and exceed 5")
        elif self.kind is Kind.DIGIT_SUM3:
            if d != 3 or self.witness.digit_sum() % 3:
                out.append("digit-sum witness must have digit sum divisible by 3")
        return out

    def verify(self, ms: DigitMultiset | None = None) -> None:
        bad = self.problems(ms)
        if bad:
            raise CertificateError(f"{self.kind.value} certificate rejected: " + "; ".join(bad))

    def equation(self) -> str:
        """One line a reader can check by hand."""
        value = self.value
        if self.divisor is None:
            return f"{value} < 2, not prime"
        line = f"{value} = {self.divisor} × {value // self.divisor}"
        if self.kind is Kind.DIGIT_SUM3:
            line += f" (digit sum {self.witness.digit_sum()})"
        return line


def _emit(cert: Certificate, ms: DigitMultiset | None = None) -> Certificate:
    cert.verify(ms)
    return cert


def _as_digits(prefix: DigitString | str | Sequence[int]) -> tuple[int, ...]:
    if isinstance(prefix, DigitString):
        return prefix.digits
    if isinstance(prefix, str):
        return DigitString.parse(prefix).digits if prefix else ()
    return tuple(prefix)


def _check_pair(a: int, b: int) -> None:
    if a not in ODD_UNIT_DIGITS or b not in ODD_UNIT_DIGITS or a == b:
        raise ValueError(f"need two different digits from {ODD_UNIT_DIGITS}, got ({a}, {b})")


# -- digit filters ----------------------------------------------------------


def certify_digit_set(ms: DigitMultiset) -> Certificate | None:
    """Move a digit 0, 2, 4, 5, 6 or 8 to the units place."""
    if ms.total < 2:
        return None
    for d in EVEN_OR_FIVE:
        if not ms.counts[d]:
            continue
        rest = sorted(ms.without([d]), reverse=True)
        witness = DigitString(tuple(rest) + (d,))
        if value_of(witness) > 5:
            return _emit(Certificate(Kind.UNITS_PLACE, witness, 5 if d == 5 else 2, "units-digit"), ms)
    return None


def certify_four_digits(ms: DigitMultiset) -> Certificate | None:
    """When 1, 3, 7 and 9 all occur, one of seven tails makes the number a multiple of 7."""
    if not all(ms.counts[d] for d in ODD_UNIT_DIGITS):
        return None
    prefix = tuple(ms.without(ODD_UNIT_DIGITS))
    for tail in FOUR_DIGIT_TAILS:
        witness = DigitString(prefix + DigitString.parse(tail).digits)
        if residue(witness, 7) == 0:
            return _emit(Certificate(Kind.PERMUTATION_DIVISOR, witness, 7, "four-digits-mod-7"), ms)
    raise CertificateError("no tail hit 0 mod 7")


def certify_three_two(ms: DigitMultiset) -> Certificate | None:
    """Three copies of a and two of b: place the b's at two of the last five places."""
    for a in ms.present():
        if ms.counts[a] < 3:
            continue
        for b in ms.present():
            if b == a or ms.counts[b] < 2 or (b - a) % 7 == 0:
                continue
            prefix = tuple(ms.without([a, a, a, b, b]))
            for i, j in THREE_TWO_POSITIONS:
                tail = [a] * 5
                tail[4 - i] = b
                tail[4 - j] = b
                witness = DigitString(prefix + tuple(tail))
                if residue(witness, 7) == 0:
                    return _emit(Certificate(Kind.PERMUTATION_DIVISOR, witness, 7, "three-two-mod-7"), ms)
            raise CertificateError("no position pair hit 0 mod 7")
    return None


def lemma4_filter(prefix: DigitString | str | Sequence[int], a: int, b: int) -> Certificate | None:
    """Permute a six-digit tail a^5 b behind ``prefix``.

    The six arrangements cover every nonzero residue mod 7, so unless the prefix
    is itself a multiple of 7 one of them is.
    """
    _check_pair(a, b)
    head = _as_digits(prefix)
    if not head or residue(DigitString(head), 7) == 0:
        return None
    for i in range(6):
        witness = with_digit_at(a, 6, i, b, head)
        if residue(witness, 7) == 0:
            return _emit(Certificate(Kind.PERMUTATION_DIVISOR, witness, 7, "six-digit-tail-mod-7"), multiset_of(witness))
    raise CertificateError("no tail arrangement hit 0 mod 7")


def certify_three_distinct(ms: DigitMultiset) -> Certificate | None:
    """Shape a^(n-2) b c with n > 6: the two prefixes a..ac and a..ab differ by |b - c|."""
    n = ms.total
    present = ms.present()
    if n <= 6 or len(present) != 3 or not set(present) <= set(ODD_UNIT_DIGITS):
        return None
    a = max(present, key=lambda d: ms.counts[d])
    b, c = (d for d in present if d != a)
    if ms.counts[a] != n - 2:
        return None
    stem = (a,) * (n - 7)
    for head, last in ((stem + (c,), b), (stem + (b,), c)):
        cert = lemma4_filter(head, a, last)
        if cert is not None:
            return _emit(Certificate(cert.kind, cert.witness, cert.divisor, "three-distinct-mod-7"), ms)
    raise CertificateError("both prefixes divisible by 7")


def _uniform_digit(ms: DigitMultiset) -> Certificate | None:
    present = ms.present()
    if ms.total < 2 or len(present) != 1 or present[0] == 1:
        return None
    d = present[0]
    witness = DigitString((d,) * ms.total)
    divisor = repunit_value(ms.total) if d else None
    return _emit(Certificate(Kind.TRIVIAL_FACTOR, witness, divisor, "uniform-digit"), ms)


# -- classification ---------------------------------------------------------


@dataclass(frozen=True)
class SingleDigit:
    digit: int


@dataclass(frozen=True)
class RepunitForm:
    n: int


@dataclass(frozen=True)
class NearRepunitForm:
    a: int
    b: int
    n: int


@dataclass(frozen=True)
class ResidualForm:
    """Up to six digits that no digit filter rules out and that is not a near-repunit."""

    n: int


@dataclass(frozen=True)
class Excluded:
    certificate: Certificate


CandidateClass = Union[SingleDigit, RepunitForm, NearRepunitForm, ResidualForm, Excluded]


def _near_repunit_shape(ms: DigitMultiset) -> NearRepunitForm | None:
    present = ms.present()
    if len(present) != 2 or not set(present) <= set(ODD_UNIT_DIGITS):
        return None
    x, y = present
    n = ms.total
    if ms.counts[y] == 1:
        # for n = 2 both digits occur once; the smaller one is taken as the repeated digit
        return NearRepunitForm(x, y, n)
    if ms.counts[x] == 1:
        return NearRepunitForm(y, x, n)
    return None


def classify(ms: DigitMultiset) -> CandidateClass:
    if ms.total == 1:
        return SingleDigit(ms.present()[0])
    if ms.present() == [1]:
        return RepunitForm(ms.total)
    for rule in (certify_digit_set, _uniform_digit, certify_four_digits, certify_three_two, certify_three_distinct):
        cert = rule(ms)
        if cert is not None:
            return Excluded(cert)
    shape = _near_repunit_shape(ms)
    if shape is not None:
        return shape
    if ms.total > 6:
        raise CertificateError(f"{ms} escaped every filter")
    return ResidualForm(ms.total)


# -- order-based constraints ------------------------------------------------


@dataclass(frozen=True)
class Satisfied:
    p: int


@dataclass(frozen=True)
class NotApplicable:
    reason: str


def _repunit_mod(k: int, p: int) -> int:
    # 10**k = 1 (mod 9), so the division below is exact
    return (pow(10, k, 9 * p) - 1) // 9 % p


def lemma6_constraint(a: int, b: int, n: int, p: int) -> Satisfied | NotApplicable | Certificate:
    """If 10 is a primitive root mod p, an absolute prime a..ab of length n > p-1 needs (p-1) | n.

    Otherwise the last p-1 digits can be permuted into a multiple of p, and the
    returned certificate is that arrangement.
    """
    _check_pair(a, b)
    if not is_prime(p).is_prime:
        raise ValueError(f"{p} is not prime")
    if p in (2, 5):
        return NotApplicable(f"10 is not invertible modulo {p}")
    if not multiplicative_order_10(p).primitive_root_10:
        return NotApplicable(f"10 is not a primitive root modulo {p}")
    if gcd(a, p) > 1:
        return NotApplicable(f"digit {a} shares a factor with {p}")
    if n <= p - 1:
        return NotApplicable(f"length {n} does not exceed {p - 1}")
    if n % (p - 1) == 0:
        return Satisfied(p)
    head_len = n - (p - 1)
    fixed = (a * pow(10, p - 1, p) * _repunit_mod(head_len, p) + a * _repunit_mod(p - 1, p)) % p
    need = -fixed % p
    step = (b - a) % p
    power = 1
    for i in range(p - 1):
        if step * power % p == need:
            witness = with_digit_at(a, p - 1, i, b, (a,) * head_len)
            return _emit(Certificate(Kind.PERMUTATION_DIVISOR, witness, p, "primitive-root-order"), multiset_of(witness))
        power = power * 10 % p
    raise CertificateError(f"no displacement gives 0 mod {p}")


def theorem2_bound(qualifying: Sequence[OrderRecord], start: int = 17) -> int:
    """Modulus M that the digit count of any long a..ab absolute prime must be a multiple of.

    Each prime p may only be used once the proven lower bound on n exceeds p - 1.
    After using p, n is a multiple of M and at least the old bound, so the bound
    moves up to the next multiple of M.
    """
    if start < 1:
        raise ValueError("start must be a positive lower bound")
    records = sorted(qualifying, key=lambda r: r.p)
    modulus, bound = 1, start
    for rec in records:
        if not rec.primitive_root_10:
            raise ValueError(f"10 is not a primitive root modulo {rec.p}")
        if any(gcd(d, rec.p) > 1 for d in ODD_UNIT_DIGITS):
            raise ValueError(f"prime {rec.p} divides an admissible digit")
        if bound <= rec.p - 1:
            raise ValueError(f"prime {rec.p} is not justified: only n >= {bound} is known")
        modulus = modulus * (rec.p - 1) // gcd(modulus, rec.p - 1)
        bound = -(-bound // modulus) * modulus
    return modulus


def _power_of_two_part(n: int) -> int:
    return n & -n


def theorem3_certificate(a: int, b: int, n: int) -> Certificate | None:
    """Algebraic or digit-sum certificates for six of the twelve digit pairs."""
    _check_pair(a, b)
    if n <= 3:
        raise ValueError("digit-pair certificates need n > 3")
    ms = DigitMultiset.from_mapping({a: n - 1, b: 1})
    if (a, b) == (9, 7):
        if n % 2:
            raise HypothesisNotMet(f"(9, 7) needs n even, got {n}")
        r = _power_of_two_part(n)
        if r == n:
            raise HypothesisNotMet(f"(9, 7) needs n not a power of two, got {n}")
        # 9..9 - 2*10**r: 10**n + 1 is a multiple of 10**r + 1 since n/r is odd
        witness = with_digit_at(9, n, r, 7)
        return _emit(Certificate(Kind.PERMUTATION_DIVISOR, witness, 10**r + 1, "pair-9-7"), ms)
    if (a, b) == (9, 1):
        if n % 2:
            raise HypothesisNotMet(f"(9, 1) needs n even, got {n}")
        # 10**n - 9 = (10**(n/2) - 3)(10**(n/2) + 3)
        witness = near_repunit_digits(9, 1, n)
        return _emit(Certificate(Kind.ALGEBRAIC_FACTOR, witness, 10 ** (n // 2) - 3, "pair-9-1"), ms)
    if (a, b) in ((1, 7), (7, 1)):
        if n % 3:
            raise HypothesisNotMet(f"({a}, {b}) needs 3 | n, got {n}")
        return _emit(Certificate(Kind.DIGIT_SUM3, near_repunit_digits(a, b, n), 3, "pair-digit-sum"), ms)
    if (a, b) in ((3, 9), (9, 3)):
        return _emit(Certificate(Kind.DIGIT_SUM3, near_repunit_digits(a, b, n), 3, "pair-digit-sum"), ms)
    return None


# -- verdict ----------------------------------------------------------------


@dataclass(frozen=True)
class Limits:
    """How much work verdict() may do before answering Unknown."""

    max_permutations: int = 100_000
    max_digits: int = 1200
    factor_effort: int = 200_000
    rounds: int = DEFAULT_ROUNDS


LIMIT_PRESETS = {
    "quick": Limits(max_permutations=5_040, max_digits=64, factor_effort=20_000),
    "default": Limits(),
    "thorough": Limits(max_permutations=2_000_000, max_digits=12_000, factor_effort=5_000_000),
}


def limits_from_env(preset: str | None = None) -> Limits:
    """The named preset, else $PERMPRIME_LIMITS, else the default preset."""
    name = preset or os.environ.get("PERMPRIME_LIMITS") or "default"
    try:
        return LIMIT_PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown limits preset {name!r}; choose from {sorted(LIMIT_PRESETS)}") from None


@dataclass(frozen=True)
class UnknownReason:
    message: str
    permutation_count: int
    digit_count: int


@dataclass(frozen=True)
class AbsolutePrime:
    evidence: tuple[tuple[DigitString, PrimalityVerdict], ...]


@dataclass(frozen=True)
class Composite:
    certificate: Certificate


@dataclass(frozen=True)
class Unknown:
    reason: UnknownReason


Verdict = Union[AbsolutePrime, Composite, Unknown]


def _smallest_prime_factor(n: int) -> int:
    p = 2
    while p * p <= n:
        if n % p == 0:
            return p
        p += 1
    return n


def _certify_by_testing(perm: DigitString, tested: PrimalityVerdict, limits: Limits) -> Certificate | None:
    value = value_of(perm)
    if value < 2:
        return Certificate(Kind.TRIVIAL_FACTOR, perm, None, "exhaustive")
    divisor = tested.factor or find_divisor(value, limits.factor_effort)
    if divisor is None:
        return None
    return Certificate(Kind.PERMUTATION_DIVISOR, perm, divisor, "exhaustive")


def _exhaustive(ms: DigitMultiset, limits: Limits) -> Verdict:
    count = ms.permutation_count()
    if count > limits.max_permutations or ms.total > limits.max_digits:
        return Unknown(UnknownReason("exhaustive testing exceeds the configured limits", count, ms.total))
    evidence = []
    for perm in distinct_permutations(ms):
        tested = is_prime(value_of(perm), limits.rounds)
        if not tested.is_prime:
            cert = _certify_by_testing(perm, tested, limits)
            if cert is None:
                return Unknown(UnknownReason(f"{perm} is composite but no factor was found within the effort bound", count, ms.total))
            return Composite(_emit(cert, ms))
        evidence.append((perm, tested))
    return AbsolutePrime(tuple(evidence))


def _repunit_verdict(n: int, limits: Limits) -> Verdict:
    ds = repunit_digits(n)
    ms = multiset_of(ds)
    d = _smallest_prime_factor(n)
    if d < n:
        # A_d divides A_n whenever d divides n
        return Composite(_emit(Certificate(Kind.TRIVIAL_FACTOR, ds, repunit_value(d), "repunit-length"), ms))
    return _exhaustive(ms, limits)


def verdict(ms: DigitMultiset, limits: Limits | None = None) -> Verdict:
    """Absolute-prime verdict for a digit multiset, cheapest filters first."""
    limits = limits or LIMIT_PRESETS["default"]
    cls = classify(ms)
    if isinstance(cls, Excluded):
        return Composite(cls.certificate)
    if isinstance(cls, RepunitForm):
        return _repunit_verdict(cls.n, limits)
    if isinstance(cls, NearRepunitForm) and cls.n > 3:
        cert = near_repunit_certificate(cls.a, cls.b, cls.n)
        if cert is not None:
            return Composite(cert)
    return _exhaustive(ms, limits)


def near_repunit_certificate(a: int, b: int, n: int, chain: Sequence[int] = ORDER_CHAIN) -> Certificate | None:
    """Digit-pair certificate, then the order constraint for each prime in ``chain``."""
    try:
        cert = theorem3_certificate(a, b, n)
    except HypothesisNotMet:
        cert = None
    if cert is not None:
        return cert
    for p in chain:
        outcome = lemma6_constraint(a, b, n, p)
        if isinstance(outcome, Certificate):
            return outcome
    return None


def first_certificate(ms: DigitMultiset, limits: Limits | None = None) -> Certificate | None:
    v = verdict(ms, limits)
    return v.certificate if isinstance(v, Composite) else None
