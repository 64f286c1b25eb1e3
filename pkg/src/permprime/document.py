"""Structured output: one JSON object per line, with a schema version.

Arbitrary-precision quantities (witness digits, divisors, values, bounds) are
written as decimal strings so that no consumer has to guess at integer width.
Key order is fixed by construction, so identical inputs give identical bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .certify import (
    AbsolutePrime,
    Certificate,
    Composite,
    Kind,
    Unknown,
    UnknownReason,
    Verdict,
)
from .digits import DigitString
from .modular import Factorization, OrderRecord
from .primality import PrimalityVerdict, Status
from .search import FoundPrime, ScanRow, SearchReport

SCHEMA_VERSION = "permprime/1"


def _opt_int(x: int | None) -> str | None:
    return None if x is None else str(x)


def _parse_opt_int(x: str | None) -> int | None:
    return None if x is None else int(x)


def certificate_to_dict(cert: Certificate) -> dict[str, Any]:
    return {
        "kind": cert.kind.value,
        "witness": str(cert.witness),
        "divisor": _opt_int(cert.divisor),
        "lemma_tag": cert.lemma_tag,
    }


def certificate_from_dict(d: dict[str, Any]) -> Certificate:
    return Certificate(Kind(d["kind"]), DigitString.parse(d["witness"]), _parse_opt_int(d["divisor"]), d["lemma_tag"])


def primality_to_dict(v: PrimalityVerdict) -> dict[str, Any]:
    return {
        "status": v.status.value,
        "factor": _opt_int(v.factor),
        "witness": _opt_int(v.witness),
        "rounds": v.rounds,
        "note": v.note,
    }


def primality_from_dict(d: dict[str, Any]) -> PrimalityVerdict:
    return PrimalityVerdict(
        Status(d["status"]), _parse_opt_int(d["factor"]), _parse_opt_int(d["witness"]), d["rounds"], d["note"]
    )


def verdict_to_dict(v: Verdict) -> dict[str, Any]:
    if isinstance(v, AbsolutePrime):
        return {
            "status": "AbsolutePrime",
            "evidence": [{"permutation": str(p), "primality": primality_to_dict(pv)} for p, pv in v.evidence],
        }
    if isinstance(v, Composite):
        return {"status": "Composite", "certificate": certificate_to_dict(v.certificate)}
    r = v.reason
    return {
        "status": "Unknown",
        "reason": {"message": r.message, "permutation_count": str(r.permutation_count), "digit_count": r.digit_count},
    }


def verdict_from_dict(d: dict[str, Any]) -> Verdict:
    status = d["status"]
    if status == "AbsolutePrime":
        return AbsolutePrime(
            tuple((DigitString.parse(e["permutation"]), primality_from_dict(e["primality"])) for e in d["evidence"])
        )
    if status == "Composite":
        return Composite(certificate_from_dict(d["certificate"]))
    if status == "Unknown":
        r = d["reason"]
        return Unknown(UnknownReason(r["message"], int(r["permutation_count"]), r["digit_count"]))
    raise ValueError(f"unknown verdict status {status!r}")


def order_to_dict(rec: OrderRecord) -> dict[str, Any]:
    return {"p": rec.p, "h": rec.h, "primitive_root_10": rec.primitive_root_10}


def order_from_dict(d: dict[str, Any]) -> OrderRecord:
    return OrderRecord(d["p"], d["h"], d["primitive_root_10"])


def factorization_to_dict(f: Factorization) -> dict[str, Any]:
    return {"base": str(f.base), "factors": [[str(p), e] for p, e in f.factors]}


def factorization_from_dict(d: dict[str, Any]) -> Factorization:
    return Factorization(int(d["base"]), [(int(p), e) for p, e in d["factors"]])


def report_to_dict(r: SearchReport) -> dict[str, Any]:
    """Elapsed time is left out; it belongs to the document's timing block."""
    return {
        "parameters": r.parameters,
        "candidate_count": r.candidate_count,
        "accepted_count": r.accepted_count,
        "rejected_count": r.rejected_count,
        "unknown": r.unknown,
        "found": [{"value": str(f.value), "primality": primality_to_dict(f.primality)} for f in r.found],
        "rows": [
            {
                "a": row.a,
                "b": row.b,
                "n": row.n,
                "certificate": None if row.certificate is None else certificate_to_dict(row.certificate),
            }
            for row in r.rows
        ],
    }


def report_from_dict(d: dict[str, Any]) -> SearchReport:
    return SearchReport(
        parameters=d["parameters"],
        found=[FoundPrime(int(f["value"]), primality_from_dict(f["primality"])) for f in d["found"]],
        rejected_count=dict(d["rejected_count"]),
        accepted_count=d["accepted_count"],
        unknown=list(d["unknown"]),
        candidate_count=d["candidate_count"],
        rows=[
            ScanRow(
                row["a"],
                row["b"],
                row["n"],
                None if row["certificate"] is None else certificate_from_dict(row["certificate"]),
            )
            for row in d["rows"]
        ],
    )


@dataclass
class OutputDocument:
    command: str
    inputs: dict[str, Any]
    result: Any
    schema_version: str = SCHEMA_VERSION
    timing: dict[str, float] | None = None

    def serialize(self) -> str:
        body: dict[str, Any] = {
            "schema_version": self.schema_version,
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
        }
        if self.timing is not None:
            body["timing"] = self.timing
        return json.dumps(body, ensure_ascii=False, separators=(",", ":"))

    @classmethod
    def parse(cls, text: str) -> OutputDocument:
        body = json.loads(text)
        if body.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema version {body.get('schema_version')!r}")
        return cls(body["command"], body["inputs"], body["result"], body["schema_version"], body.get("timing"))
