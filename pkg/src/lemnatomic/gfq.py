"""Residue fields of Z[i] at odd Gaussian primes, and polynomial arithmetic over them.

A split prime pi (norm p) gives F_p; the image of i is determined by the
reduction map Z[i] -> Z[i]/(pi), not by an abstract choice of square root.
An inert prime pi (norm p^2) gives F_{p^2}, represented as pairs (x, y)
meaning x + y*iota with iota^2 = -1; reduction of a+bi is then coefficientwise.

Field elements are plain ints in [0, p) for degree 1 and int pairs for
degree 2, so equality is structural and hashing is free.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import InputError
from .gaussint import GaussPrime, _make_prime, as_gauss, is_prime
from .zipoly import PolyZi

__all__ = [
    "ResidueField",
    "PolyFq",
    "residue_field",
    "reduce_poly",
    "poly_gcd",
    "squarefree",
    "splits_completely",
    "has_root",
    "factor_degrees",
]

Element = Union[int, tuple]


@dataclass(frozen=True, slots=True)
class ResidueField:
    """The field Z[i]/(pi) for an odd Gaussian prime pi.

    degree 1 (split): elements are ints mod p, i_image is an int.
    degree 2 (inert): elements are (x, y) pairs meaning x + y*iota, i_image = (0, 1).
    """

    pi: GaussPrime
    p: int
    degree: int
    i_image: Element

    @property
    def size(self) -> int:
        return self.p**self.degree

    def zero(self) -> Element:
        return 0 if self.degree == 1 else (0, 0)

    def one(self) -> Element:
        return 1 if self.degree == 1 else (1, 0)

    def from_int(self, n: int) -> Element:
        return n % self.p if self.degree == 1 else (n % self.p, 0)

    def reduce_gauss(self, z) -> Element:
        z = as_gauss(z)
        if self.degree == 1:
            return (z.re + z.im * self.i_image) % self.p
        return (z.re % self.p, z.im % self.p)

    def add(self, a: Element, b: Element) -> Element:
        if self.degree == 1:
            return (a + b) % self.p
        return ((a[0] + b[0]) % self.p, (a[1] + b[1]) % self.p)

    def neg(self, a: Element) -> Element:
        if self.degree == 1:
            return (-a) % self.p
        return ((-a[0]) % self.p, (-a[1]) % self.p)

    def sub(self, a: Element, b: Element) -> Element:
        return self.add(a, self.neg(b))

    def mul(self, a: Element, b: Element) -> Element:
        if self.degree == 1:
            return (a * b) % self.p
        x1, y1 = a
        x2, y2 = b
        # iota^2 = -1
        return ((x1 * x2 - y1 * y2) % self.p, (x1 * y2 + y1 * x2) % self.p)

    def inv(self, a: Element) -> Element:
        if a == self.zero():
            raise InputError("division by zero in residue field")
        if self.degree == 1:
            return pow(a, -1, self.p)
        x, y = a
        # (x + y*iota)(x - y*iota) = x^2 + y^2
        n_inv = pow((x * x + y * y) % self.p, -1, self.p)
        return ((x * n_inv) % self.p, (-y * n_inv) % self.p)

    def is_zero(self, a: Element) -> bool:
        return a == self.zero()


def residue_field(pi) -> ResidueField:
    """Construct Z[i]/(pi) for an odd Gaussian prime pi (any associate accepted)."""
    if isinstance(pi, GaussPrime):
        prime = pi
    else:
        z = as_gauss(pi)
        if not is_prime(z):
            raise InputError(f"{z} is not a Gaussian prime")
        prime = _make_prime(z)
    if prime.kind == "ramified":
        raise InputError("residue fields are defined for odd primes only; got the ramified prime")
    a, b = prime.value.re, prime.value.im
    if prime.kind == "split":
        p = prime.norm
        # a + b*i = 0 in the field forces i -> -a * b^{-1}; the map is authoritative.
        image = (-a * pow(b, -1, p)) % p
        return ResidueField(pi=prime, p=p, degree=1, i_image=image)
    # inert: value is -p for a rational prime p = 3 mod 4
    p = -a
    return ResidueField(pi=prime, p=p, degree=2, i_image=(0, 1))


@dataclass(frozen=True, slots=True)
class PolyFq:
    """Polynomial over a residue field; coefficients ascending, leading nonzero."""

    field: ResidueField
    coeffs: tuple

    @staticmethod
    def make(field: ResidueField, coeffs) -> "PolyFq":
        cs = list(coeffs)
        while cs and field.is_zero(cs[-1]):
            cs.pop()
        return PolyFq(field=field, coeffs=tuple(cs))

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Element:
        if self.is_zero():
            raise InputError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return not self.is_zero() and self.leading() == self.field.one()

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k in range(self.degree(), -1, -1):
            c = self.coeffs[k]
            if self.field.is_zero(c):
                continue
            cs = str(c) if self.field.degree == 1 else f"({c[0]}+{c[1]}j)"
            if k == 0:
                parts.append(cs)
            elif k == 1:
                parts.append(f"{cs}*X")
            else:
                parts.append(f"{cs}*X^{k}")
        return " + ".join(parts)


def reduce_poly(f: PolyZi, pi) -> PolyFq:
    """Coefficientwise reduction of f through Z[i] -> Z[i]/(pi)."""
    field = pi if isinstance(pi, ResidueField) else residue_field(pi)
    return PolyFq.make(field, [field.reduce_gauss(c) for c in f.coeffs])


def _padd(F: ResidueField, a: tuple, b: tuple) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for k, c in enumerate(b):
        out[k] = F.add(out[k], c)
    while out and F.is_zero(out[-1]):
        out.pop()
    return tuple(out)


def _pneg(F: ResidueField, a: tuple) -> tuple:
    return tuple(F.neg(c) for c in a)


def _pmul(F: ResidueField, a: tuple, b: tuple) -> tuple:
    if not a or not b:
        return ()
    out = [F.zero()] * (len(a) + len(b) - 1)
    for j, x in enumerate(a):
        if F.is_zero(x):
            continue
        for k, y in enumerate(b):
            out[j + k] = F.add(out[j + k], F.mul(x, y))
    while out and F.is_zero(out[-1]):
        out.pop()
    return tuple(out)


def _pscale(F: ResidueField, a: tuple, s: Element) -> tuple:
    out = [F.mul(c, s) for c in a]
    while out and F.is_zero(out[-1]):
        out.pop()
    return tuple(out)


def _pmod(F: ResidueField, a: tuple, b: tuple) -> tuple:
    if not b:
        raise InputError("polynomial division by zero")
    lead_inv = F.inv(b[-1])
    r = list(a)
    db = len(b) - 1
    while len(r) - 1 >= db and r:
        if F.is_zero(r[-1]):
            r.pop()
            continue
        q = F.mul(r[-1], lead_inv)
        shift = len(r) - 1 - db
        for k in range(len(b)):
            r[shift + k] = F.sub(r[shift + k], F.mul(q, b[k]))
        while r and F.is_zero(r[-1]):
            r.pop()
    return tuple(r)


def _pmonic(F: ResidueField, a: tuple) -> tuple:
    if not a or a[-1] == F.one():
        return a
    return _pscale(F, a, F.inv(a[-1]))


def _pderiv(F: ResidueField, a: tuple) -> tuple:
    out = [F.mul(c, F.from_int(k)) for k, c in enumerate(a)][1:]
    while out and F.is_zero(out[-1]):
        out.pop()
    return tuple(out)


def _pgcd(F: ResidueField, a: tuple, b: tuple) -> tuple:
    while b:
        a, b = b, _pmod(F, a, b)
    return _pmonic(F, a)


def _x_power_mod(F: ResidueField, e: int, f: tuple) -> tuple:
    """X^e mod f by square-and-multiply; f nonzero."""
    result = _pmod(F, (F.one(),), f)
    base = _pmod(F, (F.zero(), F.one()), f)
    while e:
        if e & 1:
            result = _pmod(F, _pmul(F, result, base), f)
        e >>= 1
        if e:
            base = _pmod(F, _pmul(F, base, base), f)
    return result


def _ppow_mod(F: ResidueField, a: tuple, e: int, f: tuple) -> tuple:
    result = _pmod(F, (F.one(),), f)
    base = _pmod(F, a, f)
    while e:
        if e & 1:
            result = _pmod(F, _pmul(F, result, base), f)
        e >>= 1
        if e:
            base = _pmod(F, _pmul(F, base, base), f)
    return result


def poly_gcd(f: PolyFq, g: PolyFq) -> PolyFq:
    """Monic gcd via Euclid."""
    if f.field is not g.field and f.field != g.field:
        raise InputError("gcd of polynomials over different fields")
    if f.is_zero() and g.is_zero():
        raise InputError("gcd(0, 0) is undefined")
    return PolyFq(field=f.field, coeffs=_pgcd(f.field, f.coeffs, g.coeffs))


def squarefree(f: PolyFq) -> bool:
    """True iff gcd(f, f') is constant."""
    if f.is_zero():
        raise InputError("squarefree test of the zero polynomial")
    F = f.field
    d = _pderiv(F, f.coeffs)
    if not d:
        # constant: vacuously squarefree; nonconstant with zero derivative is a p-th power
        return f.degree() <= 0
    return len(_pgcd(F, f.coeffs, d)) == 1


def splits_completely(f: PolyFq) -> bool:
    """True iff f is squarefree and a product of linear factors: X^q = X (mod f)."""
    if f.is_zero() or f.degree() < 1:
        raise InputError("splits_completely requires a nonconstant polynomial")
    if not f.is_monic():
        raise InputError("splits_completely requires a monic polynomial")
    if not squarefree(f):
        return False
    F = f.field
    frob = _x_power_mod(F, F.size, f.coeffs)
    x_mod = _pmod(F, (F.zero(), F.one()), f.coeffs)
    return frob == x_mod


def has_root(f: PolyFq) -> bool:
    """True iff f has a root in the field: deg gcd(X^q - X, f) >= 1."""
    if f.is_zero():
        raise InputError("has_root of the zero polynomial")
    F = f.field
    if f.degree() < 1:
        return False
    frob = _x_power_mod(F, F.size, f.coeffs)
    diff = _padd(F, frob, _pneg(F, (F.zero(), F.one())))
    g = _pgcd(F, f.coeffs, diff)
    return len(g) - 1 >= 1


def factor_degrees(f: PolyFq) -> tuple:
    """Degrees of the irreducible factors of squarefree monic f, nondecreasing.

    Distinct-degree factorization: the degree-d part of f is gcd(f, X^(q^d) - X).
    """
    if f.is_zero() or not f.is_monic():
        raise InputError("factor_degrees requires a monic polynomial")
    if not squarefree(f):
        raise InputError("factor_degrees requires a squarefree polynomial")
    F = f.field
    q = F.size
    rem = f.coeffs
    degrees: list[int] = []
    h = _pmod(F, (F.zero(), F.one()), rem)
    d = 0
    while len(rem) - 1 > 0:
        d += 1
        if (len(rem) - 1) < 2 * d:
            # remainder is irreducible
            degrees.append(len(rem) - 1)
            break
        h = _ppow_mod(F, h, q, rem)
        g = _pgcd(F, rem, _padd(F, h, _pneg(F, (F.zero(), F.one()))))
        if len(g) - 1 > 0:
            part = len(g) - 1
            degrees.extend([d] * (part // d))
            rem = _pmonic(F, _pmod_quotient(F, rem, g))
            h = _pmod(F, h, rem)
    degrees.sort()
    return tuple(degrees)


def _pmod_quotient(F: ResidueField, a: tuple, b: tuple) -> tuple:
    """Exact quotient a / b (b monic divides a)."""
    lead_inv = F.inv(b[-1])
    r = list(a)
    db = len(b) - 1
    out = [F.zero()] * (len(a) - db)
    while len(r) - 1 >= db and r:
        if F.is_zero(r[-1]):
            r.pop()
            continue
        q = F.mul(r[-1], lead_inv)
        shift = len(r) - 1 - db
        out[shift] = q
        for k in range(len(b)):
            r[shift + k] = F.sub(r[shift + k], F.mul(q, b[k]))
        while r and F.is_zero(r[-1]):
            r.pop()
    if r:
        raise InputError("inexact polynomial division")
    while out and F.is_zero(out[-1]):
        out.pop()
    return tuple(out)
