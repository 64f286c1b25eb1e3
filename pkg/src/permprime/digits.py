"""Decimal digit strings, digit multisets, repunits and near-repunits.

Everything here is pure; values are immutable once built.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Iterable, Iterator

ODD_UNIT_DIGITS = (1, 3, 7, 9)

# residue() switches to big-integer reduction above this modulus
_HORNER_MODULUS_LIMIT = 1 << 31


@dataclass(frozen=True)
class DigitString:
    """Digits most significant first. Leading zeros are allowed."""

    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.digits:
            raise ValueError("a digit string needs at least one digit")
        for d in self.digits:
            if not isinstance(d, int) or not 0 <= d <= 9:
                raise ValueError(f"not a decimal digit: {d!r}")

    @classmethod
    def parse(cls, text: str) -> DigitString:
        text = text.strip()
        if not text or not text.isascii() or not text.isdigit():
            raise ValueError(f"not a decimal digit string: {text!r}")
        return cls(tuple(ord(c) - 48 for c in text))

    @classmethod
    def from_int(cls, value: int) -> DigitString:
        if value < 0:
            raise ValueError("negative values have no digit string")
        return cls.parse(_int_to_digits(value))

    def __str__(self) -> str:
        return "".join(chr(48 + d) for d in self.digits)

    def __len__(self) -> int:
        return len(self.digits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.digits)

    def digit_sum(self) -> int:
        return sum(self.digits)


@dataclass(frozen=True)
class DigitMultiset:
    """How many times each digit 0..9 occurs."""

    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.counts) != 10 or any(c < 0 for c in self.counts):
            raise ValueError("counts must be ten non-negative integers")
        if sum(self.counts) < 1:
            raise ValueError("a digit multiset needs at least one digit")

    @classmethod
    def from_mapping(cls, counts: dict[int, int]) -> DigitMultiset:
        row = [0] * 10
        for d, c in counts.items():
            if not 0 <= d <= 9:
                raise ValueError(f"not a decimal digit: {d!r}")
            row[d] += c
        return cls(tuple(row))

    @classmethod
    def of_number(cls, number: int | str) -> DigitMultiset:
        if isinstance(number, int):
            return multiset_of(DigitString.from_int(number))
        return multiset_of(DigitString.parse(number))

    @property
    def total(self) -> int:
        return sum(self.counts)

    def present(self) -> list[int]:
        """Distinct digits, ascending."""
        return [d for d in range(10) if self.counts[d]]

    def as_mapping(self) -> dict[int, int]:
        return {d: c for d, c in enumerate(self.counts) if c}

    def sorted_digits(self) -> tuple[int, ...]:
        return tuple(d for d in range(10) for _ in range(self.counts[d]))

    def without(self, removed: Iterable[int]) -> list[int]:
        """Ascending digits left after taking out one copy of each removed digit."""
        row = list(self.counts)
        for d in removed:
            if row[d] == 0:
                raise ValueError(f"digit {d} not available")
            row[d] -= 1
        return [d for d in range(10) for _ in range(row[d])]

    def permutation_count(self) -> int:
        count = factorial(self.total)
        for c in self.counts:
            count //= factorial(c)
        return count

    def __str__(self) -> str:
        return "{" + ", ".join(f"{d}:{c}" for d, c in self.as_mapping().items()) + "}"


def repunit_value(n: int) -> int:
    if n < 1:
        raise ValueError("repunit digit count must be at least 1")
    return (10**n - 1) // 9


def repunit_digits(n: int) -> DigitString:
    if n < 1:
        raise ValueError("repunit digit count must be at least 1")
    return DigitString((1,) * n)


def _check_pair(a: int, b: int) -> None:
    if a not in ODD_UNIT_DIGITS or b not in ODD_UNIT_DIGITS:
        raise ValueError(f"digits must come from {ODD_UNIT_DIGITS}, got ({a}, {b})")
    if a == b:
        raise ValueError("near-repunit digits must differ")


def near_repunit_digits(a: int, b: int, n: int) -> DigitString:
    """n-1 copies of ``a`` followed by a single ``b``."""
    _check_pair(a, b)
    if n < 2:
        raise ValueError("near-repunit needs at least two digits")
    return DigitString((a,) * (n - 1) + (b,))


def near_repunit_value(a: int, b: int, n: int) -> int:
    _check_pair(a, b)
    if n < 2:
        raise ValueError("near-repunit needs at least two digits")
    return a * repunit_value(n) + (b - a)


def multiset_of(ds: DigitString) -> DigitMultiset:
    row = [0] * 10
    for d in ds.digits:
        row[d] += 1
    return DigitMultiset(tuple(row))


def distinct_permutations(ms: DigitMultiset) -> Iterator[DigitString]:
    """Every distinct arrangement of ``ms`` once, in ascending lexicographic order."""
    cur = list(ms.sorted_digits())
    n = len(cur)
    while True:
        yield DigitString(tuple(cur))
        # next lexicographic permutation
        i = n - 2
        while i >= 0 and cur[i] >= cur[i + 1]:
            i -= 1
        if i < 0:
            return
        j = n - 1
        while cur[j] <= cur[i]:
            j -= 1
        cur[i], cur[j] = cur[j], cur[i]
        cur[i + 1:] = reversed(cur[i + 1:])


def residue(ds: DigitString, m: int) -> int:
    """Value of ``ds`` modulo ``m`` by Horner's rule."""
    if m < 2:
        raise ValueError("modulus must be at least 2")
    if m >= _HORNER_MODULUS_LIMIT:
        return value_of(ds) % m
    r = 0
    for d in ds.digits:
        r = (r * 10 + d) % m
    return r


def value_of(ds: DigitString) -> int:
    return _digits_to_int(str(ds))


# int()/str() refuse more than 4300 digits by default, so long values are split
_CHUNK = 4000


def _digits_to_int(text: str) -> int:
    if len(text) <= _CHUNK:
        return int(text)
    half = len(text) // 2
    low = text[half:]
    return _digits_to_int(text[:half]) * 10 ** len(low) + _digits_to_int(low)


def _int_to_digits(value: int) -> str:
    if value < 10**_CHUNK:
        return str(value)
    k = (value.bit_length() * 3 // 10) // 2  # roughly half the decimal length
    high, low = divmod(value, 10**k)
    return _int_to_digits(high) + _int_to_digits(low).rjust(k, "0")


def with_digit_at(base: int, length: int, position: int, digit: int, prefix: Iterable[int] = ()) -> DigitString:
    """``prefix`` followed by ``length`` copies of ``base`` with ``digit`` at 10**position."""
    if not 0 <= position < length:
        raise ValueError("position outside the suffix")
    tail = [base] * length
    tail[length - 1 - position] = digit
    return DigitString(tuple(prefix) + tuple(tail))
