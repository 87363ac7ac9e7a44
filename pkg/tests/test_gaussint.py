"""Gaussian-integer arithmetic: ring ops, Euclidean division, gcd, primes,
normalization, parsing. Examples are fixed oracles; property tests run on a
seeded RNG so failures reproduce."""

import pytest

from conftest import gi
from lemnatomic.errors import InputError, NotOdd, ParseError
from lemnatomic.gaussint import (
    GaussInt,
    canonical_associate,
    divides,
    exact_div,
    factor,
    format_gauss,
    gauss_divmod,
    gauss_gcd,
    is_primary,
    is_prime,
    odd_part,
    parse_gauss,
    primary_normalize,
    primes_up_to_norm,
)


def rand_gauss(rng, span=1000):
    return GaussInt(rng.randint(-span, span), rng.randint(-span, span))


class TestRingArithmetic:
    def test_one_plus_i_squared(self):
        assert GaussInt(1, 1) * GaussInt(1, 1) == GaussInt(0, 2)

    def test_norm_identity_product(self):
        assert GaussInt(2, 1) * GaussInt(2, -1) == GaussInt(5, 0)

    def test_conjugate_and_norm(self):
        z = GaussInt(3, 2)
        assert z.conjugate() == GaussInt(3, -2)
        assert z.norm() == 13

    def test_is_unit(self):
        units = [GaussInt(1, 0), GaussInt(-1, 0), GaussInt(0, 1), GaussInt(0, -1)]
        assert all(u.is_unit() for u in units)
        assert not GaussInt(1, 1).is_unit()
        assert not GaussInt(0, 0).is_unit()

    def test_norm_multiplicative_random(self, rng):
        for _ in range(200):
            a, b = rand_gauss(rng), rand_gauss(rng)
            assert (a * b).norm() == a.norm() * b.norm()

    def test_norm_zero_iff_zero(self, rng):
        assert GaussInt(0, 0).norm() == 0
        for _ in range(100):
            z = rand_gauss(rng)
            assert (z.norm() == 0) == (z == GaussInt(0, 0))


class TestDivmod:
    def test_example(self):
        q, r = gauss_divmod(gi("5+3i"), gi("2+i"))
        assert (q, r) == (gi("3"), gi("-1"))

    def test_tie_rounds_down(self):
        q, r = gauss_divmod(gi("1+i"), gi("2"))
        assert (q, r) == (gi("0"), gi("1+i"))
        assert r.norm() * 2 <= gi("2").norm() * 1  # norm(r) <= norm(d)/2

    def test_unit_divisor(self, rng):
        for _ in range(50):
            z = rand_gauss(rng)
            assert gauss_divmod(z, GaussInt(1, 0)) == (z, GaussInt(0, 0))

    def test_euclidean_bound_random(self, rng):
        for _ in range(300):
            a = rand_gauss(rng)
            d = rand_gauss(rng, span=60)
            if d.is_zero():
                continue
            q, r = gauss_divmod(a, d)
            assert q * d + r == a
            assert 2 * r.norm() <= d.norm()

    def test_zero_divisor_rejected(self):
        with pytest.raises(InputError):
            gauss_divmod(gi("1"), gi("0"))


class TestGcd:
    def test_example_common_prime(self):
        assert gauss_gcd(gi("5"), gi("3+i")) == gi("1+2i")

    def test_with_zero(self, rng):
        for _ in range(30):
            z = rand_gauss(rng)
            if z.is_zero():
                continue
            assert gauss_gcd(z, gi("0")) == canonical_associate(z)

    def test_coprime_conjugates(self):
        assert gauss_gcd(gi("2+i"), gi("2-i")) == gi("1")

    def test_both_zero_rejected(self):
        with pytest.raises(InputError):
            gauss_gcd(gi("0"), gi("0"))

    def test_divides_both_and_constructed_common_factor(self, rng):
        for _ in range(100):
            g = rand_gauss(rng, span=20)
            if g.is_zero():
                continue
            x, y = rand_gauss(rng, span=20), rand_gauss(rng, span=20)
            if x.is_zero() or y.is_zero() or not gauss_gcd(x, y).is_unit():
                continue
            got = gauss_gcd(g * x, g * y)
            assert divides(got, g * x) and divides(got, g * y)
            assert got == canonical_associate(g)

    def test_canonical_first_quadrant(self, rng):
        for _ in range(100):
            a, b = rand_gauss(rng, span=50), rand_gauss(rng, span=50)
            if a.is_zero() and b.is_zero():
                continue
            g = gauss_gcd(a, b)
            assert g.re > 0 and g.im >= 0


class TestPrimaryNormalize:
    def test_examples(self):
        assert primary_normalize(gi("2+i")) == (gi("i"), gi("-1+2i"))
        assert primary_normalize(gi("3")) == (gi("-1"), gi("-3"))
        assert primary_normalize(gi("-1+2i")) == (gi("1"), gi("-1+2i"))

    def test_even_rejected(self):
        with pytest.raises(NotOdd):
            primary_normalize(gi("1+i"))

    def test_unique_primary_associate(self, rng):
        two_one_i = gi("2+2i")
        for _ in range(200):
            z = rand_gauss(rng, span=80)
            if z.is_zero() or divides(gi("1+i"), z):
                continue
            hits = [
                u * z
                for u in (gi("1"), gi("-1"), gi("i"), gi("-i"))
                if divides(two_one_i, u * z - gi("1"))
            ]
            assert len(hits) == 1
            u, p = primary_normalize(z)
            assert p == hits[0] and u * z == p and is_primary(p)


class TestFactor:
    def test_factor_five(self):
        unit, facs = factor(gi("5"))
        assert unit == gi("1")
        assert [(p.value, e) for p, e in facs] == [(gi("-1+2i"), 1), (gi("-1-2i"), 1)]

    def test_factor_nine(self):
        unit, facs = factor(gi("9"))
        assert unit == gi("1")
        assert [(p.value, e) for p, e in facs] == [(gi("-3"), 2)]

    def test_ramified_prime(self):
        assert is_prime(gi("1+i"))
        unit, facs = factor(gi("2"))
        assert facs[0][0].value == gi("1+i") and facs[0][1] == 2

    def test_zero_rejected(self):
        with pytest.raises(InputError):
            factor(gi("0"))

    def test_reconstruction_and_primality_random(self, rng):
        for _ in range(60):
            z = rand_gauss(rng, span=300)
            if z.is_zero():
                continue
            unit, facs = factor(z)
            prod = unit
            for p, e in facs:
                assert is_prime(p.value)
                assert p.norm == p.value.norm()
                assert p.kind in ("split", "inert", "ramified")
                for _ in range(e):
                    prod = prod * p.value
            assert prod == z

    def test_prime_kind_matches_norm(self, rng):
        for p, _ in factor(gi("1105"))[1]:  # 5 * 13 * 17
            assert p.kind == "split" and p.norm % 4 == 1

    def test_odd_part(self):
        assert odd_part(gi("2")).is_unit()
        assert odd_part(gi("-3")) == gi("-3")
        # (1+i)^3 * (-3) has odd part -3 up to primary normalization
        z = gi("1+i") * gi("1+i") * gi("1+i") * gi("-3")
        assert primary_normalize(odd_part(z))[1] == gi("-3")


class TestPrimesUpToNorm:
    def test_small_list(self):
        got = [p.value for p in primes_up_to_norm(10)]
        assert got == [gi("-1+2i"), gi("-1-2i"), gi("-3")]

    def test_empty_below_ramified(self):
        assert primes_up_to_norm(2) == []

    def test_count_against_rational_sieve(self):
        bound = 10**4
        sieve = [True] * (bound + 1)
        sieve[0] = sieve[1] = False
        for n in range(2, int(bound**0.5) + 1):
            if sieve[n]:
                for m in range(n * n, bound + 1, n):
                    sieve[m] = False
        split = sum(1 for p in range(2, bound + 1) if sieve[p] and p % 4 == 1)
        inert = sum(1 for p in range(2, bound + 1) if sieve[p] and p % 4 == 3 and p * p <= bound)
        assert len(primes_up_to_norm(bound)) == 2 * split + inert

    def test_all_primary_and_sorted(self):
        primes = primes_up_to_norm(500)
        assert all(is_primary(p.value) for p in primes)
        norms = [p.norm for p in primes]
        assert norms == sorted(norms)

    def test_bad_bound(self):
        with pytest.raises(InputError):
            primes_up_to_norm(1)


class TestParseFormat:
    def test_parse_examples(self):
        assert parse_gauss("-1+2i") == GaussInt(-1, 2)
        assert parse_gauss("i") == GaussInt(0, 1)
        assert parse_gauss("-i") == GaussInt(0, -1)
        assert parse_gauss("3i") == GaussInt(0, 3)
        assert parse_gauss("7") == GaussInt(7, 0)

    def test_format_examples(self):
        assert format_gauss(GaussInt(3, -2)) == "3-2i"
        assert format_gauss(GaussInt(0, 1)) == "i"
        assert format_gauss(GaussInt(0, 0)) == "0"
        assert format_gauss(GaussInt(-1, 2)) == "-1+2i"

    def test_round_trip_random(self, rng):
        for _ in range(300):
            z = rand_gauss(rng, span=10**6)
            assert parse_gauss(format_gauss(z)) == z

    @pytest.mark.parametrize("bad", ["", "x", "1+", "i+1", "2i+3", "1+2j", "1 + 2i+"])
    def test_malformed_literals(self, bad):
        with pytest.raises(ParseError) as err:
            parse_gauss(bad)
        assert err.value.position >= 0


class TestExactDiv:
    def test_exact(self):
        assert exact_div(gi("5"), gi("2+i")) == gi("2-i")

    def test_inexact_rejected(self):
        with pytest.raises(InputError):
            exact_div(gi("5"), gi("3"))
