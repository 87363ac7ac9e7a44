"""Exact polynomials over Z[i].

Dense ascending-coefficient polynomials with GaussInt entries: ring
arithmetic, formal derivative, evaluation, exact division by a monic
divisor, a fraction-free resultant/discriminant, and the JSON form
{"coeffs": ["a+bi", ...]} used by CLI commands and cache files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .errors import InputError, NotDivisible, ParseError
from .gaussint import GaussInt, GaussIntLike, ZERO, ONE, as_gauss, exact_div, format_gauss, parse_gauss


def _trim(coeffs: list[GaussInt]) -> tuple[GaussInt, ...]:
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True, slots=True)
class PolyZi:
    """Polynomial over Z[i]; coeffs ascending, leading nonzero, zero = ()."""

    coeffs: tuple[GaussInt, ...]

    @staticmethod
    def make(coeffs: Iterable[GaussIntLike]) -> "PolyZi":
        return PolyZi(_trim([as_gauss(c) for c in coeffs]))

    def degree(self) -> int:
        """Degree; the zero polynomial reports -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == ONE

    def leading(self) -> GaussInt:
        if not self.coeffs:
            raise InputError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, k: int) -> GaussInt:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def __add__(self, other: "PolyZi") -> "PolyZi":
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyZi(_trim([self[k] + other[k] for k in range(n)]))

    def __sub__(self, other: "PolyZi") -> "PolyZi":
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyZi(_trim([self[k] - other[k] for k in range(n)]))

    def __neg__(self) -> "PolyZi":
        return PolyZi(tuple(-c for c in self.coeffs))

    def __mul__(self, other: Union["PolyZi", GaussInt, int]) -> "PolyZi":
        if not isinstance(other, PolyZi):
            scalar = as_gauss(other)
            return PolyZi(_trim([c * scalar for c in self.coeffs]))
        if self.is_zero() or other.is_zero():
            return PolyZi(())
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return PolyZi(_trim(out))

    __rmul__ = __mul__

    def derivative(self) -> "PolyZi":
        return PolyZi(_trim([self.coeffs[k] * k for k in range(1, len(self.coeffs))]))

    def evaluate(self, z: GaussIntLike) -> GaussInt:
        z = as_gauss(z)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            lit = format_gauss(c)
            if k == 0:
                parts.append(lit)
            else:
                mono = "X" if k == 1 else f"X^{k}"
                parts.append(mono if lit == "1" else f"({lit})*{mono}")
        return " + ".join(parts)


X = PolyZi.make([0, 1])
POLY_ONE = PolyZi.make([1])


def poly(coeffs: Iterable[GaussIntLike]) -> PolyZi:
    """Build a PolyZi from ascending coefficients (ints allowed)."""
    return PolyZi.make(coeffs)


def exact_divide(f: PolyZi, g: PolyZi) -> PolyZi:
    """Quotient f/g for a monic divisor g dividing f exactly.

    Raises NotDivisible (carrying the remainder) when the division leaves
    a nonzero remainder.
    """
    if not g.is_monic():
        raise InputError("exact_divide requires a monic divisor")
    rem = list(f.coeffs)
    dg = g.degree()
    if len(rem) < dg + 1 and not f.is_zero():
        raise NotDivisible(f"degree {f.degree()} < {dg}", remainder=f)
    quotient = [ZERO] * max(len(rem) - dg, 0)
    for k in range(len(rem) - dg - 1, -1, -1):
        q = rem[k + dg]
        if q.is_zero():
            continue
        quotient[k] = q
        for j in range(dg + 1):
            rem[k + j] = rem[k + j] - q * g.coeffs[j]
    remainder = PolyZi(_trim(rem))
    if not remainder.is_zero():
        raise NotDivisible(f"{g} does not divide {f}", remainder=remainder)
    return PolyZi(_trim(quotient))


def _bareiss_det(matrix: list[list[GaussInt]]) -> GaussInt:
    """Fraction-free determinant (Bareiss elimination with row pivoting)."""
    n = len(matrix)
    if n == 0:
        return ONE
    m = [row[:] for row in matrix]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if m[k][k].is_zero():
            for r in range(k + 1, n):
                if not m[r][k].is_zero():
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return ZERO
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # every division here is exact (Sylvester identity)
                m[i][j] = exact_div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev)
            m[i][k] = ZERO
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def resultant(f: PolyZi, g: PolyZi) -> GaussInt:
    """Resultant of f and g via the Sylvester determinant, exact over Z[i]."""
    n, m = f.degree(), g.degree()
    if n < 0 or m < 0:
        raise InputError("resultant of the zero polynomial is undefined")
    if n == 0:
        return f.coeffs[0] ** m
    if m == 0:
        return g.coeffs[0] ** n
    size = n + m
    rows: list[list[GaussInt]] = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for k in range(m):
        rows.append([ZERO] * k + fc + [ZERO] * (size - k - n - 1))
    for k in range(n):
        rows.append([ZERO] * k + gc + [ZERO] * (size - k - m - 1))
    return _bareiss_det(rows)


def discriminant(f: PolyZi) -> GaussInt:
    """disc(f) = (-1)^(n(n-1)/2) * Res(f, f') for monic f; degree 1 gives 1."""
    if not f.is_monic():
        raise InputError("discriminant requires a monic polynomial")
    n = f.degree()
    if n < 1:
        raise InputError("discriminant requires degree >= 1")
    if n == 1:
        return ONE
    res = resultant(f, f.derivative())
    return res if (n * (n - 1) // 2) % 2 == 0 else -res


def to_json_dict(f: PolyZi) -> dict:
    """JSON form: ascending Gaussian literals."""
    return {"coeffs": [format_gauss(c) for c in f.coeffs]}


def from_json_dict(data: dict) -> PolyZi:
    if not isinstance(data, dict) or "coeffs" not in data:
        raise ParseError('polynomial JSON must be an object with a "coeffs" list')
    coeffs = data["coeffs"]
    if not isinstance(coeffs, list):
        raise ParseError('"coeffs" must be a list of Gaussian literals')
    return PolyZi.make([parse_gauss(c) for c in coeffs])


def dumps(f: PolyZi) -> str:
    return json.dumps(to_json_dict(f), sort_keys=True)


def loads(text: str) -> PolyZi:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid polynomial JSON: {exc}") from exc
    return from_json_dict(data)
