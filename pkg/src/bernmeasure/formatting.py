"""Parsing and printing of scalars and result tables for the CLI.

Rationals print as ``a/b``, floats with 17 significant digits, complex
numbers as ``re+imi``.  JSON output has the shape::

    {"command": str, "columns": [str, ...], "rows": [[str, ...], ...]}

with every cell holding the same string the CSV output would.
"""

from __future__ import annotations

import csv
import io
import json
import numbers
import re
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

_RATIONAL = re.compile(r"[+-]?\d+(/\d+)?")


def parse_scalar(text: str):
    """``"3"``, ``"1/2"`` -> Fraction; ``"0.25"`` -> float; ``"1+0.5i"`` -> complex."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty number")
    if _RATIONAL.fullmatch(s):
        return Fraction(s)
    if s[-1] in "ij":
        s = re.sub(r"(?<![\d.])[ij]", "1j", s).replace("i", "j")
        return complex(s)
    return float(s)


def format_scalar(x) -> str:
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, numbers.Integral):
        return str(int(x))
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, (float, mpmath.mpf)):
        return format(float(x), ".17g")
    if isinstance(x, (complex, mpmath.mpc)):
        z = complex(x)
        if z.imag == 0:
            return format(z.real, ".17g")
        return f"{z.real:.17g}{z.imag:+.17g}i"
    if isinstance(x, numbers.Rational):
        return format_scalar(Fraction(int(x.numerator), int(x.denominator)))
    if hasattr(x, "x") and hasattr(x, "y"):  # Gaussian rational
        re_, im = Fraction(str(x.x)), Fraction(str(x.y))
        if im == 0:
            return format_scalar(re_)
        sign = "-" if im < 0 else "+"
        return f"{format_scalar(re_)}{sign}{format_scalar(abs(im))}i"
    return str(x)


@dataclass
class Table:
    command: str
    columns: list[str]
    rows: list[list] = field(default_factory=list)

    def add(self, *cells) -> None:
        self.rows.append([format_scalar(c) if not isinstance(c, str) else c for c in cells])

    def render(self, fmt: str = "csv") -> str:
        if fmt == "json":
            payload = {"command": self.command, "columns": self.columns, "rows": self.rows}
            return json.dumps(payload, indent=2) + "\n"
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        writer.writerows(self.rows)
        return buf.getvalue()

    @classmethod
    def from_json(cls, text: str) -> "Table":
        payload = json.loads(text)
        return cls(payload["command"], list(payload["columns"]), [list(r) for r in payload["rows"]])
