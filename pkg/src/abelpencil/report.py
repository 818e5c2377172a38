"""Structured reports: one JSON document per run.

Symbolic values are serialized as canonical strings (sorted monomials,
reduced fractions), so identical inputs produce byte-identical symbolic
sections.  Numeric leaves carry the tolerance they were computed under.
Timing lives in its own subtree so consumers can diff everything else.
"""

from __future__ import annotations

import json

import numpy as np

from .exact.linalg import RatMatrix


def matrix_strings(M: RatMatrix) -> list[list[str]]:
    return [[str(e) for e in row] for row in M.data]


def complex_pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def complex_matrix(m: np.ndarray) -> list[list[list[float]]]:
    return [[complex_pair(z) for z in row] for row in m.tolist()]


def render(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, allow_nan=False)


def write(report: dict, out_path: str | None) -> None:
    text = render(report)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
