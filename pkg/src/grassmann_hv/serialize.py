"""JSON/CSV encodings shared by the CLI."""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

import numpy as np

from .algebra import Multivector, mask_indices
from .parsing import format_coefficient, format_mv
from .scalars import Coefficient, GaussianRational

__all__ = [
    "coefficient_to_json",
    "coefficient_from_json",
    "multivector_to_json",
    "matrix_to_json",
    "laurent_matrix_to_json",
    "format_float",
    "dumps",
    "rows_to_csv",
]


def format_float(x: float) -> str:
    """Stable short text for a float; rounding noise below 1e-12 is cleared."""
    return f"{round(float(x), 12) + 0.0:.12g}"


def coefficient_to_json(c: Coefficient) -> dict:
    """{exponent: [re, im]} with rational strings."""
    return {str(e): [str(g.re), str(g.im)] for e, g in c.items()}


def coefficient_from_json(data: dict) -> Coefficient:
    return Coefficient({int(e): GaussianRational(Fraction(v[0]), Fraction(v[1])) for e, v in data.items()})


def multivector_to_json(x: Multivector) -> dict:
    return {
        "text": format_mv(x),
        "terms": [{"monomial": [x.ctx.names[k] for k in mask_indices(m)],
                   "coefficient": coefficient_to_json(c)} for m, c in x.items()],
    }


def _pair(v):
    if isinstance(v, GaussianRational):
        return [str(v.re), str(v.im)]
    z = complex(v)
    return [float(z.real), float(z.imag)]


def matrix_to_json(x) -> list:
    """Row-major rows of [re, im]; exact entries use rational strings."""
    if isinstance(x, np.ndarray):
        return [[[float(v.real), float(v.imag)] for v in row] for row in x]
    return [[_pair(v) for v in row] for row in x]


def laurent_matrix_to_json(x) -> list:
    return [[coefficient_to_json(Coefficient.coerce(v)) for v in row] for row in x]


def laurent_text(c) -> str:
    return format_coefficient(Coefficient.coerce(c))


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def rows_to_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()
