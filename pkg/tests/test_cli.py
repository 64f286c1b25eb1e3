import json
import subprocess
import sys

import pytest

from permprime.cli import run
from permprime.document import OutputDocument


def invoke(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def structured(capsys, *argv):
    code, out, err = invoke(capsys, *argv, "--format", "structured", "--stable")
    return code, OutputDocument.parse(out.strip())


def test_check_absolute_prime(capsys):
    code, doc = structured(capsys, "check", "373")
    assert code == 0
    assert doc.result["status"] == "AbsolutePrime"
    assert [e["permutation"] for e in doc.result["evidence"]] == ["337", "373", "733"]


def test_check_composite_is_success(capsys):
    code, doc = structured(capsys, "check", "19")
    assert code == 0
    assert doc.result["certificate"]["witness"] == "91"
    assert doc.result["certificate"]["divisor"] == "7"


def test_text_output_has_equation(capsys):
    code, out, _ = invoke(capsys, "check", "19", "--stable")
    assert code == 0 and "91 = 7 × 13" in out
    code, out, _ = invoke(capsys, "certify", "7931", "--stable")
    assert "7931 = 7 × 1133" in out


def test_bound(capsys):
    code, out, _ = invoke(capsys, "bound", "--primes", "17,19,23,29", "--stable")
    assert code == 0 and out.strip() == "11088"
    code, doc = structured(capsys, "bound", "--primes", "17,19,23,29")
    assert doc.result == {"bound": "11088", "primes": [17, 19, 23, 29]}


def test_bound_up_to(capsys):
    code, doc = structured(capsys, "bound", "--up-to", "30")
    assert code == 0 and doc.result["bound"] == "11088" and doc.result["primes"] == [17, 19, 23, 29]


def test_order_and_useful_primes(capsys):
    code, doc = structured(capsys, "order", "13")
    assert doc.result == {"p": 13, "h": 6, "primitive_root_10": False}
    code, doc = structured(capsys, "useful-primes", "--up-to", "30")
    assert [r["p"] for r in doc.result] == [7, 17, 19, 23, 29]


def test_repunit(capsys):
    code, doc = structured(capsys, "repunit", "7", "--factor")
    assert doc.result["primality"]["status"] == "Composite"
    assert doc.result["factorization"]["factors"] == [["239", 1], ["4649", 1]]
    code, doc = structured(capsys, "repunit", "23")
    assert doc.result["primality"]["status"] == "ProbablePrime"


def test_search_and_scan(capsys):
    code, doc = structured(capsys, "search", "--digits", "2", "--threads", "1")
    assert [f["value"] for f in doc.result["found"]] == ["11", "13", "17", "31", "37", "71", "73", "79", "97"]
    code, doc = structured(capsys, "search", "--digits", "4", "--brute-force")
    assert doc.result["found"] == []
    code, doc = structured(capsys, "scan", "--from", "7", "--to", "8")
    assert len(doc.result["rows"]) == 24


def test_certify_without_certificate(capsys):
    code, doc = structured(capsys, "certify", "373")
    assert code == 0 and doc.result is None


@pytest.mark.parametrize(
    "argv",
    [["frob"], ["check"], ["check", "12x"], ["check", "19", "--format", "yaml"], ["order", "21"], ["bound", "--primes", "13"],
     ["scan", "--from", "3", "--to", "5"], ["search", "--digits", "9"], ["bound"], ["check", "19", "--limits", "nope"]],
)
def test_usage_errors_exit_1(capsys, argv):
    code, out, err = invoke(capsys, *argv)
    assert code == 1
    assert out == "" and err


def test_strict_unknown_exits_2(capsys):
    argv = ["check", "1" * 67, "--limits", "quick", "--stable"]
    code, out, _ = invoke(capsys, *argv)
    assert code == 0 and "unknown" in out
    code, _, _ = invoke(capsys, *argv, "--strict")
    assert code == 2


def test_env_preset_and_flag_precedence(capsys, monkeypatch):
    number = "1" * 67  # prime-length repunit, 67 digits exceeds the quick preset
    monkeypatch.setenv("PERMPRIME_LIMITS", "quick")
    _, doc = structured(capsys, "check", number)
    assert doc.result["status"] == "Unknown"
    _, doc = structured(capsys, "check", number, "--limits", "default")
    assert doc.result["status"] != "Unknown"


def test_timing_only_without_stable(capsys):
    code, out, _ = invoke(capsys, "check", "373", "--format", "structured")
    assert "timing" in json.loads(out)
    code, out, _ = invoke(capsys, "check", "373", "--format", "structured", "--stable")
    assert "timing" not in json.loads(out)


@pytest.mark.parametrize("argv", [["check", "991"], ["search", "--digits", "3"], ["bound", "--primes", "17,19,23,29"], ["scan", "--from", "7", "--to", "9"]])
def test_stable_output_is_byte_identical(capsys, argv):
    first = invoke(capsys, *argv, "--format", "structured", "--stable")[1]
    second = invoke(capsys, *argv, "--format", "structured", "--stable")[1]
    assert first == second and first


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "permprime", "check", "373", "--stable"], capture_output=True, text=True)
    assert out.returncode == 0 and "absolute prime" in out.stdout
