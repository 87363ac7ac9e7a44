"""Arbitrary-precision numerics for the lemniscate sine.

The lemniscate sine sl is the odd solution of sl'' = -2 sl^3 with sl(0) = 0,
sl'(0) = 1, equivalently (sl')^2 = 1 - sl^4.  Evaluation is by Maclaurin
series after argument halving, followed by doublings through the addition law

    sl(u+v) = (sl u sl'v + sl v sl'u) / (1 + sl^2 u sl^2 v),

whose derivative component is obtained by differentiating along u with
D(s) = c, D(c) = -2 s^3.  The lemniscate constant satisfies
2*omega = pi / AGM(1, sqrt 2).

Arguments are reduced modulo the lattice L = (1+i)*omega*Z[i] before
evaluation, so sl_eval is L-periodic by construction; the reduced cell
contains no poles of the series/doubling chain.  Torsion values for odd beta
are taken at exact division points of the zero set 2*omega*Z[i] (one series
evaluation per unit orbit, the other three values filled in by
sl(i z) = i sl(z)), which is what makes their elementary symmetric functions
Gaussian integers.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Union

from mpmath import mp, mpc, mpf

from .errors import InputError, PoleProximity, PrecisionLoss, RoundingUnstable
from .gaussint import GaussInt, ONE, ZERO, as_gauss, gauss_gcd, primary_normalize
from .residue import phi_norm, residue_ring
from .zipoly import PolyZi

__all__ = [
    "GUARD",
    "PRECISION_CEILING",
    "BigComplex",
    "SlPair",
    "TorsionPoint",
    "NumericReport",
    "big_complex",
    "pair_defect",
    "lemniscate_constant",
    "sl_pair_add",
    "sl_eval",
    "torsion_points",
    "torsion_values",
    "lemnatomic_numeric",
]

# Guard bits appended to every working precision; the SlPair identity
# |c^2 - (1 - s^4)| stays below 2^-(precision_bits - GUARD).
GUARD = 32

# Escalation ceiling for automatic precision doubling.
PRECISION_CEILING = 4096

Realish = Union[int, float, str]


@dataclass(frozen=True, slots=True)
class BigComplex:
    """Complex number with explicit precision; operations keep the coarsest."""

    re: mpf
    im: mpf
    precision_bits: int

    def _coerce(self, other) -> "BigComplex":
        if isinstance(other, BigComplex):
            return other
        if isinstance(other, GaussInt):
            return big_complex(other.re, other.im, self.precision_bits)
        if isinstance(other, (int, float, mpf)):
            return big_complex(other, 0, self.precision_bits)
        if isinstance(other, (complex, mpc)):
            return big_complex(other.real, other.imag, self.precision_bits)
        return NotImplemented

    def _binary(self, other, op) -> "BigComplex":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        bits = min(self.precision_bits, other.precision_bits)
        with mp.workprec(bits + GUARD):
            z = op(mpc(self.re, self.im), mpc(other.re, other.im))
        return BigComplex(z.real, z.imag, bits)

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binary(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._binary(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binary(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        return self._binary(other, lambda a, b: b / a)

    def __neg__(self):
        return BigComplex(-self.re, -self.im, self.precision_bits)

    def conjugate(self) -> "BigComplex":
        return BigComplex(self.re, -self.im, self.precision_bits)

    def __abs__(self) -> mpf:
        with mp.workprec(self.precision_bits + GUARD):
            return abs(mpc(self.re, self.im))

    def to_mpc(self) -> mpc:
        return mpc(self.re, self.im)

    def __str__(self) -> str:
        return str(mpc(self.re, self.im))


def big_complex(re: Realish = 0, im: Realish = 0, precision_bits: int = 256) -> BigComplex:
    if precision_bits < 1:
        raise InputError("precision_bits must be positive")
    with mp.workprec(precision_bits + GUARD):
        return BigComplex(mpf(re), mpf(im), precision_bits)


@dataclass(frozen=True, slots=True)
class SlPair:
    """Value pair (s, c) = (sl z, sl' z)."""

    s: BigComplex
    c: BigComplex

    @property
    def precision_bits(self) -> int:
        return min(self.s.precision_bits, self.c.precision_bits)


@dataclass(frozen=True, slots=True)
class TorsionPoint:
    """A beta-division point: lam a canonical residue mod beta, z = lam*S."""

    lam: GaussInt
    z: BigComplex


@dataclass(frozen=True, slots=True)
class NumericReport:
    """How a numeric lemnatomic polynomial was obtained."""

    precision_bits: int
    stability_bits: int
    max_rounding_error: float
    escalations: int


def pair_defect(pair: SlPair) -> mpf:
    """|c^2 - (1 - s^4)|; bounded by 2^-(precision_bits - GUARD) for healthy pairs."""
    bits = pair.precision_bits
    with mp.workprec(bits + GUARD):
        s = pair.s.to_mpc()
        c = pair.c.to_mpc()
        return abs(c * c - (1 - s**4))


@lru_cache(maxsize=None)
def _omega_mpf_str(precision_bits: int) -> str:
    # AGM(1, sqrt 2) by the defining iteration; quadrature serves as the
    # independent oracle in the test suite, not here.
    with mp.workprec(precision_bits + 2 * GUARD):
        a = mpf(1)
        b = mp.sqrt(2)
        eps = mpf(2) ** (-(precision_bits + GUARD))
        while abs(a - b) > eps:
            a, b = (a + b) / 2, mp.sqrt(a * b)
        omega = mp.pi / (2 * a)
        return mp.nstr(omega, mp.dps + 10)


def lemniscate_constant(precision_bits: int) -> BigComplex:
    """The lemniscate constant omega = pi / (2 AGM(1, sqrt 2))."""
    if precision_bits < 64:
        raise InputError("precision_bits must be at least 64")
    return big_complex(_omega_mpf_str(precision_bits), 0, precision_bits)


def _omega(bits: int) -> mpf:
    with mp.workprec(bits):
        return mpf(_omega_mpf_str(bits))


# -- Maclaurin coefficients ---------------------------------------------------
#
# sl(z) = sum A[k] z^(4k+1); the ODE sl'' = -2 sl^3 gives
# (4k+1)(4k) A[k] = -2 * [z^(4k-1)] sl^3, and the cube coefficient at
# 4(k-1)+3 is b[k-1] = sum_{i+j+l=k-1} A[i]A[j]A[l].

_series_lock = threading.Lock()
_series_cache: dict[int, tuple[list, list]] = {}


def _series_coeffs(bits: int, nterms: int) -> list:
    with _series_lock:
        A, S2 = _series_cache.setdefault(bits, ([], []))
        with mp.workprec(bits + GUARD):
            while len(A) < nterms:
                k = len(A)
                if k == 0:
                    A.append(mpf(1))
                    continue
                m = k - 1
                while len(S2) <= m:
                    t = len(S2)
                    S2.append(mp.fsum(A[i] * A[t - i] for i in range(t + 1)))
                b = mp.fsum(S2[t] * A[m - t] for t in range(m + 1))
                n = 4 * k - 1
                A.append(-2 * b / ((n + 1) * (n + 2)))
        return A[:nterms]


def _pair_add_raw(s1: mpc, c1: mpc, s2: mpc, c2: mpc, bits: int) -> tuple:
    den = 1 + s1 * s1 * s2 * s2
    if abs(den) < mpf(2) ** (-(bits - GUARD)):
        raise PrecisionLoss("addition-law denominator below the precision floor")
    num = s1 * c2 + s2 * c1
    num_d = c1 * c2 - 2 * s1**3 * s2
    den_d = 2 * s1 * c1 * s2 * s2
    return num / den, (num_d * den - num * den_d) / (den * den)


def sl_pair_add(a: SlPair, b: SlPair) -> SlPair:
    """Addition law for (sl, sl') pairs; raises PrecisionLoss near its poles."""
    bits = min(a.precision_bits, b.precision_bits)
    with mp.workprec(bits + GUARD):
        s, c = _pair_add_raw(a.s.to_mpc(), a.c.to_mpc(), b.s.to_mpc(), b.c.to_mpc(), bits)
        return SlPair(
            s=BigComplex(s.real, s.imag, bits),
            c=BigComplex(c.real, c.imag, bits),
        )


def _sl_raw(z: mpc, bits: int) -> tuple:
    """(sl z, sl' z) with no lattice reduction; |z| should be cell-sized."""
    with mp.workprec(bits + GUARD):
        halvings = 0
        w = z
        while abs(w) > mpf(1) / 4:
            w = w / 2
            halvings += 1
        nterms = (bits + 2 * GUARD) // 8 + 4
        A = _series_coeffs(bits, nterms)
        w4 = w**4
        s = mpf(0)
        c = mpf(0)
        pw = mpc(1)
        for k in range(len(A)):
            s += A[k] * pw
            c += (4 * k + 1) * A[k] * pw
            pw *= w4
        s *= w
        for _ in range(halvings):
            s, c = _pair_add_raw(s, c, s, c, bits)
        return s, c


def _round_half_down_mpf(t: mpf) -> int:
    return int(mp.ceil(t - mpf(1) / 2))


def _reduce_mod_l(z: mpc, bits: int) -> mpc:
    """Reduce modulo L = Z*(1+i)*omega + Z*(1-i)*omega, coordinates rounded
    half toward -infinity."""
    om = _omega(bits + GUARD)
    u = (z.real + z.imag) / (2 * om)
    v = (z.real - z.imag) / (2 * om)
    m = _round_half_down_mpf(u)
    n = _round_half_down_mpf(v)
    return z - m * mpc(om, om) - n * mpc(om, -om)


def sl_eval(z: BigComplex, precision_bits: Optional[int] = None) -> SlPair:
    """(sl z, sl' z) after reduction modulo L = (1+i)*omega*Z[i]."""
    if precision_bits is None:
        precision_bits = z.precision_bits
    bits = precision_bits
    with mp.workprec(bits + GUARD):
        zr = _reduce_mod_l(z.to_mpc(), bits)
        om = _omega(bits + GUARD)
        floor = mpf(2) ** (-(bits - GUARD))
        for pa in (mpc(om, om), mpc(om, -om), mpc(-om, om), mpc(-om, -om)):
            if abs(zr - pa) < floor:
                raise PoleProximity("argument reduces to within the precision floor of a pole")
        s, c = _sl_raw(zr, bits)
        return SlPair(
            s=BigComplex(s.real, s.imag, bits),
            c=BigComplex(c.real, c.imag, bits),
        )


# -- torsion ------------------------------------------------------------------


def _reduce_mod_true_lattice(z: mpc, bits: int) -> mpc:
    """Reduce modulo 2(1+i)*omega*Z[i], the honest period lattice of the
    series/doubling evaluation chain."""
    om = _omega(bits + GUARD)
    gen = 2 * mpc(om, om)
    w = z / gen
    m = _round_half_down_mpf(w.real)
    n = _round_half_down_mpf(w.imag)
    return z - gen * mpc(m, n)


def _check_odd_nonunit(beta) -> GaussInt:
    beta = as_gauss(beta)
    if beta.is_zero() or beta.is_unit():
        raise InputError("beta must be a non-unit")
    if not beta.is_odd():
        raise InputError("beta must be odd (coprime to 1+i)")
    return primary_normalize(beta)[1]


def _unit_orbits(ring) -> list:
    """Partition the nonzero residues into orbits [lam, i*lam, -lam, -i*lam],
    each listed from its smallest canonical representative."""
    seen = set()
    orbits = []
    for lam in ring.representatives():
        if lam == ZERO or lam in seen:
            continue
        orbit = [lam]
        cur = lam
        for _ in range(3):
            cur = ring.canonical_rep(cur * GaussInt(0, 1))
            orbit.append(cur)
        rep = min(orbit, key=lambda g: (g.re, g.im))
        k = orbit.index(rep)
        orbit = orbit[k:] + orbit[:k]
        seen.update(orbit)
        orbits.append(orbit)
    return orbits


def _even_lift(lam: GaussInt, beta: GaussInt) -> GaussInt:
    """The lift of lam (mod beta) with re+im even; exists since beta is odd."""
    if (lam.re + lam.im) % 2 == 0:
        return lam
    return lam + beta


def torsion_points(beta, precision_bits: int = 256) -> tuple:
    """All N(beta) division points lam*S, S = (1+i)*omega/beta, lam canonical."""
    beta = _check_odd_nonunit(beta)
    ring = residue_ring(beta)
    bits = precision_bits
    with mp.workprec(bits + GUARD):
        om = _omega(bits + GUARD)
        s_gen = mpc(om, om) / mpc(beta.re, beta.im)
        pts = []
        for lam in ring.representatives():
            z = s_gen * mpc(lam.re, lam.im)
            pts.append(TorsionPoint(lam=lam, z=BigComplex(z.real, z.imag, bits)))
        return tuple(pts)


def torsion_values(beta, precision_bits: int = 256, generator_class: Optional[GaussInt] = None) -> dict:
    """Map lam -> sl(lam*S) over all canonical residues lam mod beta.

    One series evaluation per unit orbit, at the even lift of the orbit
    representative, reduced modulo the honest period lattice; the remaining
    three values follow from sl(i z) = i sl(z).  generator_class multiplies S
    by an invertible class (the value set is then permuted, not changed).
    """
    beta = _check_odd_nonunit(beta)
    ring = residue_ring(beta)
    mult = ONE if generator_class is None else as_gauss(generator_class)
    if not gauss_gcd(mult, beta).is_unit():
        raise InputError("generator_class must be invertible mod beta")
    bits = precision_bits
    values: dict[GaussInt, BigComplex] = {}
    with mp.workprec(bits + GUARD):
        om = _omega(bits + GUARD)
        s_gen = mpc(om, om) / mpc(beta.re, beta.im)
        values[ring.canonical_rep(ZERO)] = big_complex(0, 0, bits)
        for orbit in _unit_orbits(ring):
            lift = _even_lift(orbit[0], beta) * mult
            z = _reduce_mod_true_lattice(s_gen * mpc(lift.re, lift.im), bits)
            s, _ = _sl_raw(z, bits)
            val = s
            for lam in orbit:
                values[lam] = BigComplex(val.real, val.imag, bits)
                val = val * mpc(0, 1)
        ordered = {lam: values[lam] for lam in ring.representatives()}
        _check_distinct(ordered, bits)
        return ordered


def _check_distinct(values: dict, bits: int) -> None:
    floor = mpf(2) ** (-(bits // 2))
    items = [v.to_mpc() for v in values.values()]
    items.sort(key=lambda z: (z.real, z.imag))
    n = len(items)
    for i in range(n):
        zi = items[i]
        for j in range(i + 1, n):
            zj = items[j]
            if zj.real - zi.real > floor:
                break
            if abs(zj - zi) < floor:
                raise PrecisionLoss("torsion values collide at this precision")


def _numeric_poly_at(beta: GaussInt, ring, bits: int) -> tuple:
    """Expand prod (X - v) over invertible residues; round to Z[i] coefficients."""
    vals = torsion_values(beta, bits)
    with mp.workprec(bits + GUARD):
        roots = [v.to_mpc() for lam, v in vals.items() if ring.is_invertible(lam)]
        coeffs = [mpc(1)]
        for r in roots:
            nxt = [mpc(0)] * (len(coeffs) + 1)
            for k, ck in enumerate(coeffs):
                nxt[k] += ck * (-r)
                nxt[k + 1] += ck
            coeffs = nxt
        rounded = []
        err = mpf(0)
        for ck in coeffs:
            g = GaussInt(int(mp.nint(ck.real)), int(mp.nint(ck.imag)))
            err = max(err, abs(ck - mpc(g.re, g.im)))
            rounded.append(g)
        return PolyZi.make(rounded), err


def lemnatomic_numeric(beta, precision_bits: int = 256):
    """Numeric lemnatomic polynomial with its computation report.

    Expands prod (X - sl(lam*S)) over invertible lam, rounds coefficients to
    Gaussian integers, and accepts only when every rounding error is below
    2^-30 and the rounded polynomial survives one precision doubling.
    Precision escalates by doubling up to PRECISION_CEILING.
    """
    beta = _check_odd_nonunit(beta)
    ring = residue_ring(beta)
    bits = max(64, precision_bits)
    tolerance = mpf(2) ** (-30)
    escalations = 0
    while True:
        try:
            poly_lo, err_lo = _numeric_poly_at(beta, ring, bits)
            poly_hi, err_hi = _numeric_poly_at(beta, ring, 2 * bits)
            if err_lo < tolerance and err_hi < tolerance and poly_lo == poly_hi:
                _validate_numeric(beta, poly_lo)
                report = NumericReport(
                    precision_bits=bits,
                    stability_bits=2 * bits,
                    max_rounding_error=float(max(err_lo, err_hi)),
                    escalations=escalations,
                )
                return poly_lo, report
        except (PrecisionLoss, PoleProximity):
            pass
        if 2 * bits > PRECISION_CEILING:
            raise RoundingUnstable(
                f"no stable Gaussian-integer rounding for beta={beta} up to {PRECISION_CEILING} bits"
            )
        bits *= 2
        escalations += 1


def _validate_numeric(beta: GaussInt, poly: PolyZi) -> None:
    want = phi_norm(beta)
    if poly.degree() != want:
        raise RoundingUnstable(f"degree {poly.degree()} != phi_norm {want} for beta={beta}")
    if not poly.is_monic():
        raise RoundingUnstable(f"numeric polynomial for beta={beta} is not monic")
    if poly[0] == ZERO:
        raise RoundingUnstable(f"numeric polynomial for beta={beta} has zero constant term")
