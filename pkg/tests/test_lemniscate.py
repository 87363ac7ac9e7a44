"""Arbitrary-precision numerics: the constant, the sl pair, torsion values,
and the numeric lemnatomic pipeline."""

import itertools

import pytest
from mpmath import mp, mpc, mpf

from conftest import gi
from lemnatomic.errors import InputError
from lemnatomic.gaussint import GaussInt
from lemnatomic.lemniscate import (
    _sl_raw,
    big_complex,
    lemniscate_constant,
    lemnatomic_numeric,
    pair_defect,
    sl_eval,
    sl_pair_add,
    torsion_points,
    torsion_values,
)
from lemnatomic.residue import phi_norm, residue_ring

BITS = 256
OMEGA_DIGITS = "1.311028777146059905232419794945559706841377475715811581408410851900395"


def rand_point(rng, scale=0.4, bits=BITS):
    return big_complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale), bits)


class TestLemniscateConstant:
    def test_decimal_expansion(self):
        om = lemniscate_constant(BITS)
        with mp.workprec(BITS + 16):
            assert abs(om.re - mpf(OMEGA_DIGITS)) < mpf(2) ** -220
            assert om.im == 0

    def test_agm_identity(self):
        om = lemniscate_constant(BITS)
        with mp.workprec(BITS + 16):
            ratio = 2 * om.re * mp.agm(1, mp.sqrt(2)) / mp.pi
            assert abs(ratio - 1) < mpf(2) ** -(BITS - 8)

    def test_precision_doubling_stable(self):
        lo = lemniscate_constant(BITS)
        hi = lemniscate_constant(2 * BITS)
        with mp.workprec(2 * BITS):
            assert abs(lo.re - hi.re) < mpf(2) ** -(BITS - 4)

    def test_minimum_precision(self):
        with pytest.raises(InputError):
            lemniscate_constant(32)


class TestSlEval:
    def test_zero(self):
        p = sl_eval(big_complex(0, 0, BITS))
        assert p.s.to_mpc() == 0
        assert p.c.to_mpc() == 1

    def test_value_at_omega(self):
        om = lemniscate_constant(BITS)
        p = sl_eval(big_complex(om.re, 0, BITS))
        with mp.workprec(BITS + 16):
            assert abs(p.s.to_mpc() - 1) < mpf(2) ** -(BITS - 8)

    def test_periodicity_both_generators(self, rng):
        om = lemniscate_constant(BITS)
        with mp.workprec(BITS + 16):
            omv = om.re
            for gen in (mpc(omv, omv), mpc(omv, -omv)):
                for _ in range(20):
                    z = rand_point(rng)
                    base = sl_eval(z).s.to_mpc()
                    shifted = sl_eval(
                        big_complex(z.re + gen.real, z.im + gen.imag, BITS)
                    ).s.to_mpc()
                    assert abs(base - shifted) < mpf(2) ** -200

    def test_raw_lattice_structure(self, rng):
        # sl_eval owes its (1+i)*omega periodicity to argument reduction; the
        # unreduced function has true period 2(1+i)*omega, antiperiod 2*omega,
        # and picks up the quasi-period transform s -> -i/s across (1+i)*omega.
        om = lemniscate_constant(BITS)
        with mp.workprec(BITS + 32):
            omv = om.re
            for _ in range(10):
                z = mpc(rng.uniform(-0.4, 0.4), rng.uniform(-0.4, 0.4))
                s = _sl_raw(z, BITS)[0]
                true_period = _sl_raw(z + 2 * mpc(omv, omv), BITS)[0]
                assert abs(true_period - s) < mpf(2) ** -200
                anti = _sl_raw(z + 2 * omv, BITS)[0]
                assert abs(anti + s) < mpf(2) ** -200
                quasi = _sl_raw(z + mpc(omv, omv), BITS)[0]
                assert abs(quasi * s + mpc(0, 1)) < mpf(2) ** -200

    def test_i_scaling_and_oddness(self, rng):
        with mp.workprec(BITS + 16):
            for _ in range(30):
                z = rand_point(rng)
                s = sl_eval(z).s.to_mpc()
                s_rot = sl_eval(big_complex(-z.im, z.re, BITS)).s.to_mpc()
                s_neg = sl_eval(big_complex(-z.re, -z.im, BITS)).s.to_mpc()
                assert abs(s_rot - mpc(0, 1) * s) < mpf(2) ** -200
                assert abs(s_neg + s) < mpf(2) ** -200

    def test_pair_identity(self, rng):
        with mp.workprec(BITS + 16):
            for _ in range(30):
                p = sl_eval(rand_point(rng, scale=0.6))
                assert pair_defect(p) < mpf(2) ** -(BITS - 32)


class TestSlPairAdd:
    def test_neutral(self, rng):
        neutral = sl_eval(big_complex(0, 0, BITS))
        with mp.workprec(BITS + 16):
            for _ in range(10):
                p = sl_eval(rand_point(rng))
                q = sl_pair_add(p, neutral)
                assert abs(q.s.to_mpc() - p.s.to_mpc()) < mpf(2) ** -200

    def test_doubling_formula(self, rng):
        with mp.workprec(BITS + 16):
            for _ in range(20):
                p = sl_eval(rand_point(rng))
                s, c = p.s.to_mpc(), p.c.to_mpc()
                doubled = sl_pair_add(p, p)
                assert abs(doubled.s.to_mpc() - 2 * s * c / (1 + s**4)) < mpf(2) ** -200

    def test_addition_matches_direct_eval(self, rng):
        with mp.workprec(BITS + 16):
            for _ in range(25):
                u, v = rand_point(rng), rand_point(rng)
                lhs = sl_pair_add(sl_eval(u), sl_eval(v))
                direct = sl_eval(u + v)
                assert abs(lhs.s.to_mpc() - direct.s.to_mpc()) < mpf(2) ** -180
                assert abs(lhs.c.to_mpc() - direct.c.to_mpc()) < mpf(2) ** -180

    def test_c_component_vs_finite_difference(self, rng):
        h = mpf(2) ** -24
        with mp.workprec(BITS + 16):
            for _ in range(10):
                z = rand_point(rng)
                c = sl_eval(z).c.to_mpc()
                fwd = sl_eval(big_complex(z.re + h, z.im, BITS)).s.to_mpc()
                bwd = sl_eval(big_complex(z.re - h, z.im, BITS)).s.to_mpc()
                approx = (fwd - bwd) / (2 * h)
                assert abs(approx - c) / abs(c) < mpf(10) ** -10


class TestTorsion:
    def test_count_and_zero(self):
        vals = torsion_values(gi("-3"), BITS)
        assert len(vals) == 9
        assert vals[gi("0")].to_mpc() == 0

    def test_pairwise_distinct(self):
        vals = torsion_values(gi("-3"), BITS)
        with mp.workprec(BITS + 24):
            gaps = [
                abs(a.to_mpc() - b.to_mpc())
                for a, b in itertools.combinations(vals.values(), 2)
            ]
        assert min(gaps) > mpf(2) ** -100

    def test_i_lambda_scaling(self):
        ring = residue_ring(gi("-3"))
        vals = torsion_values(gi("-3"), BITS)
        with mp.workprec(BITS + 24):
            for lam, v in vals.items():
                rotated = vals[ring.canonical_rep(lam * gi("i"))]
                assert abs(rotated.to_mpc() - mpc(0, 1) * v.to_mpc()) < mpf(2) ** -200

    def test_points_satisfy_lattice_relation(self):
        om = lemniscate_constant(BITS)
        pts = torsion_points(gi("-3"), BITS)
        assert len(pts) == 9
        with mp.workprec(BITS + 24):
            period = mpc(om.re, om.re)
            for pt in pts:
                scaled = mpc(-3, 0) * pt.z.to_mpc() / period
                assert abs(scaled - mp.nint(scaled.real) - mpc(0, 1) * mp.nint(scaled.imag)) < mpf(
                    2
                ) ** -200

    def test_generator_class_permutes_values(self):
        base = torsion_values(gi("-3"), BITS)
        moved = torsion_values(gi("-3"), BITS, generator_class=gi("1+i"))
        with mp.workprec(BITS + 24):
            key = lambda z: (z.real, z.imag)
            a = sorted((v.to_mpc() for v in base.values()), key=key)
            b = sorted((v.to_mpc() for v in moved.values()), key=key)
            assert all(abs(x - y) < mpf(2) ** -200 for x, y in zip(a, b))

    def test_noninvertible_generator_rejected(self):
        with pytest.raises(InputError):
            torsion_values(gi("-3"), BITS, generator_class=gi("3"))


class TestLemnatomicNumeric:
    def test_quartic_shape(self):
        poly, report = lemnatomic_numeric(gi("-1+2i"), BITS)
        assert poly.degree() == 4
        assert poly.is_monic()
        assert poly[1].is_zero() and poly[2].is_zero() and poly[3].is_zero()
        assert poly[0] == gi("-1+2i")
        assert report.precision_bits >= BITS

    def test_degree_eight(self):
        poly, _ = lemnatomic_numeric(gi("-3"), BITS)
        assert poly.degree() == phi_norm(gi("-3")) == 8

    def test_low_precision_still_converges(self):
        poly, report = lemnatomic_numeric(gi("-1+2i"), 64)
        assert poly[0] == gi("-1+2i")
        assert report.max_rounding_error < 2.0**-30
        assert report.stability_bits > report.precision_bits

    def test_non_primary_input_normalized(self):
        via_three, _ = lemnatomic_numeric(gi("3"), BITS)
        via_primary, _ = lemnatomic_numeric(gi("-3"), BITS)
        assert via_three == via_primary

    def test_unit_and_even_rejected(self):
        with pytest.raises(InputError):
            lemnatomic_numeric(gi("1"), BITS)
        with pytest.raises(InputError):
            lemnatomic_numeric(gi("1+i"), BITS)
