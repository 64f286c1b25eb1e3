import json

import pytest
from hypothesis import given, settings, strategies as st

from permprime.certify import Limits, verdict
from permprime.digits import DigitMultiset
from permprime.document import (
    SCHEMA_VERSION,
    OutputDocument,
    factorization_from_dict,
    factorization_to_dict,
    order_from_dict,
    order_to_dict,
    report_from_dict,
    report_to_dict,
    verdict_from_dict,
    verdict_to_dict,
)
from permprime.modular import factorize, multiplicative_order_10
from permprime.search import enumerate_absolute_primes, scan_near_repunits


def through_json(d):
    return json.loads(json.dumps(d))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**7))
def test_verdict_round_trip(n):
    v = verdict(DigitMultiset.of_number(n))
    assert verdict_from_dict(through_json(verdict_to_dict(v))) == v


def test_unknown_round_trip():
    v = verdict(DigitMultiset.of_number(11113), Limits(max_permutations=2))
    assert verdict_from_dict(through_json(verdict_to_dict(v))) == v


def test_report_round_trip():
    for report in (enumerate_absolute_primes(3), scan_near_repunits(7, 9)):
        assert report_from_dict(through_json(report_to_dict(report))) == report


def test_order_and_factorization_round_trip():
    rec = multiplicative_order_10(983)
    assert order_from_dict(through_json(order_to_dict(rec))) == rec
    f = factorize(10**20 - 1)
    assert factorization_from_dict(through_json(factorization_to_dict(f))) == f


def test_big_numbers_are_strings():
    v = verdict(DigitMultiset.from_mapping({9: 39, 1: 1}))
    d = verdict_to_dict(v)
    assert isinstance(d["certificate"]["divisor"], str)
    assert d["certificate"]["divisor"] == str(10**20 - 3)


def test_document_round_trip_and_single_line():
    doc = OutputDocument("check", {"number": "373"}, verdict_to_dict(verdict(DigitMultiset.of_number(373))))
    text = doc.serialize()
    assert "\n" not in text
    assert OutputDocument.parse(text) == doc
    assert text.startswith('{"schema_version":"%s","command":"check"' % SCHEMA_VERSION)


def test_document_rejects_other_schema():
    with pytest.raises(ValueError):
        OutputDocument.parse('{"schema_version":"other/9","command":"x","inputs":{},"result":null}')
