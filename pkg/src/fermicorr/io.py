"""CSV/JSON emission with stable schemas and round-trip float formatting.

Every CSV starts with a ``# schema: <name>`` line followed by the header
row.  Floats are written in shortest round-trip form so identical inputs
produce byte-identical files; ``inf`` encodes the ground state in beta
columns.
"""

from __future__ import annotations

import json
import math
import os
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "fmt_value",
    "parse_beta",
    "write_csv",
    "write_json",
    "save_matrix_csv",
    "save_matrix_npy",
    "export_spectrum_csv",
]


def fmt_value(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return repr(x)
    return str(x)


def parse_beta(raw) -> float:
    """Accept numbers or the literal string 'inf' for the ground state."""
    if isinstance(raw, str):
        raw = raw.strip().lower()
        if raw == "inf":
            return math.inf
        return float(raw)
    return float(raw)


def write_csv(path: str, schema: str, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# schema: {schema}\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(fmt_value(x) for x in row) + "\n")


def write_json(path: str, payload: dict) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def save_matrix_npy(path: str, M: np.ndarray) -> None:
    np.save(path, M)


def save_matrix_csv(path: str, M: np.ndarray) -> None:
    M = np.asarray(M)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("# schema: dense-matrix-v1\n")
        for row in M:
            fh.write(",".join(fmt_value(complex(x)) if np.iscomplexobj(M) else fmt_value(float(x)) for x in row) + "\n")


def export_spectrum_csv(path: str, energies: np.ndarray) -> None:
    write_csv(
        path,
        "spectrum-v1",
        ["index", "energy"],
        ((k, float(e)) for k, e in enumerate(energies)),
    )
