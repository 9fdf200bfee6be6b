"""Reading and validating the sweep CSV contract.

Files carry a ``# schema: <name>`` first line, then a header row.  This
module refuses anything whose schema tag or column set does not match; no
numerical work happens here beyond parsing.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

PROFILE_SCHEMA = "profiles-v1"
SUMMARY_SCHEMA = "nu-summary-v1"

PROFILE_COLUMNS = ["L", "alpha", "mu", "beta", "l", "corr"]
SUMMARY_COLUMNS = ["alpha", "mu", "beta", "L", "nu", "rms_residual", "excluded_bound", "pass"]


class SchemaError(ValueError):
    """The CSV does not match the documented contract."""


def _parse_float(raw: str) -> float:
    if raw == "inf":
        return math.inf
    return float(raw)


def _parse_optional(raw: str) -> float | None:
    return None if raw == "" else _parse_float(raw)


@dataclass
class ProfileRow:
    L: int
    alpha: float
    mu: float
    beta: float
    l: int
    corr: float


@dataclass
class SummaryRow:
    alpha: float
    mu: float
    beta: float
    L: int
    nu: float | None
    rms_residual: float | None
    excluded_bound: float | None
    passed: str  # "true" / "false" / ""


def _read_tagged_csv(path: str, schema: str, columns: list[str]) -> list[dict[str, str]]:
    with open(path, encoding="utf-8") as fh:
        tag = fh.readline().strip()
        if tag != f"# schema: {schema}":
            raise SchemaError(f"{path}: expected '# schema: {schema}', found {tag!r}")
        reader = csv.DictReader(fh)
        if reader.fieldnames != columns:
            raise SchemaError(
                f"{path}: expected columns {columns}, found {reader.fieldnames}"
            )
        return list(reader)


def read_profiles(path: str) -> list[ProfileRow]:
    rows = []
    for rec in _read_tagged_csv(path, PROFILE_SCHEMA, PROFILE_COLUMNS):
        rows.append(
            ProfileRow(
                L=int(rec["L"]),
                alpha=_parse_float(rec["alpha"]),
                mu=_parse_float(rec["mu"]),
                beta=_parse_float(rec["beta"]),
                l=int(rec["l"]),
                corr=_parse_float(rec["corr"]),
            )
        )
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return rows


def read_summary(path: str) -> list[SummaryRow]:
    rows = []
    for rec in _read_tagged_csv(path, SUMMARY_SCHEMA, SUMMARY_COLUMNS):
        rows.append(
            SummaryRow(
                alpha=_parse_float(rec["alpha"]),
                mu=_parse_float(rec["mu"]),
                beta=_parse_float(rec["beta"]),
                L=int(rec["L"]),
                nu=_parse_optional(rec["nu"]),
                rms_residual=_parse_optional(rec["rms_residual"]),
                excluded_bound=_parse_optional(rec["excluded_bound"]),
                passed=rec["pass"],
            )
        )
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return rows
