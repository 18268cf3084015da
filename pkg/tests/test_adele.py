from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from adelics.adele import Adele, FiniteAdele, idempotent
from adelics.errors import (
    ComponentPrimeOutsideSigma,
    MixedPrimeSets,
    PrimeOutsideSigma,
    UnsupportedSigma,
    ValidationError,
)
from adelics.localization import PrimeSet, SRational
from adelics.padic import PadicNumber
from adelics.profinite import ProfiniteInt

SIGMA23 = PrimeSet.finite([2, 3])
SIGMA235 = PrimeSet.finite([2, 3, 5])
ALL = PrimeSet.all_primes()


def fraction_components(sigma):
    """Strategy: one rational per prime of sigma, each with p-power denominator."""
    def make(draws):
        return {
            p: Fraction(n, p ** e)
            for (p, (n, e)) in zip(sigma.primes, draws)
        }
    one = st.tuples(st.integers(-500, 500), st.integers(0, 4))
    return st.tuples(*[one for _ in sigma.primes]).map(make)


def adele_from_fractions(fracs, sigma, prec=10):
    comps = {p: PadicNumber.from_fraction(v, p, prec) for p, v in fracs.items()}
    return FiniteAdele.make(comps, sigma)


class TestNormalForm:
    def test_frozen_example(self):
        # x_2 = 3/4, x_3 = 1/3 over Sigma = {2,3}: s = 12, z = (9, 4)
        a = adele_from_fractions({2: Fraction(3, 4), 3: Fraction(1, 3)}, SIGMA23)
        assert a.s == 12
        assert a.parts[2].residue(4) == 9 % 16
        assert a.parts[3].residue(3) == 4 % 27
        proj = a.project(2)
        assert proj.val == -2 and proj.unit % 4 == 3

    def test_integral_has_s_one(self):
        a = adele_from_fractions({2: Fraction(6), 3: Fraction(5)}, SIGMA23)
        assert a.s == 1 and a.is_integral

    @given(fraction_components(SIGMA235))
    def test_s_is_minimal(self, fracs):
        a = adele_from_fractions(fracs, SIGMA235)
        expected = 1
        for p, v in fracs.items():
            d = v.denominator
            while d % p == 0:
                expected *= p
                d //= p
        assert a.s == expected
        for p in SIGMA235:
            x = a.parts[p]
            assert x.is_zero or x.val >= 0  # z is integral

    @given(fraction_components(SIGMA23))
    def test_projection_recovers_components(self, fracs):
        a = adele_from_fractions(fracs, SIGMA23)
        for p, v in fracs.items():
            assert a.project(p).agrees_with(PadicNumber.from_fraction(v, p, 10))

    @given(fraction_components(SIGMA235))
    def test_canonicalize_idempotent(self, fracs):
        a = adele_from_fractions(fracs, SIGMA235)
        b = a.canonicalize()
        assert b.s == a.s
        for p in SIGMA235:
            assert b.project(p).agrees_with(a.project(p))

    def test_component_prime_outside_sigma(self):
        with pytest.raises(ComponentPrimeOutsideSigma):
            FiniteAdele.make({5: PadicNumber.from_int(1, 5, 4)}, SIGMA23)


class TestRingOperations:
    @given(fraction_components(SIGMA23), fraction_components(SIGMA23))
    def test_add_mul_componentwise(self, f1, f2):
        a, b = adele_from_fractions(f1, SIGMA23), adele_from_fractions(f2, SIGMA23)
        s, m = a + b, a * b
        for p in SIGMA23:
            assert s.project(p).agrees_with(
                PadicNumber.from_fraction(f1[p] + f2[p], p, 10))
            assert m.project(p).agrees_with(
                PadicNumber.from_fraction(f1[p] * f2[p], p, 10))

    @given(fraction_components(SIGMA23))
    def test_neg_and_identities(self, f):
        a = adele_from_fractions(f, SIGMA23)
        zero = FiniteAdele.zero(SIGMA23, prec=10)
        one = FiniteAdele.one(SIGMA23, prec=10)
        for p in SIGMA23:
            assert (a + (-a)).project(p).is_zero
            assert (a + zero).project(p).agrees_with(a.project(p))
            assert (a * one).project(p).agrees_with(a.project(p))

    def test_mixed_sigma_rejected(self):
        a = FiniteAdele.one(SIGMA23)
        b = FiniteAdele.one(SIGMA235)
        with pytest.raises(MixedPrimeSets):
            a + b

    def test_scale_by_prime_powers_invertible(self):
        f = {2: Fraction(3, 4), 3: Fraction(5)}
        a = adele_from_fractions(f, SIGMA23)
        up = a.scale_by_prime_powers({2: 3, 3: -1})
        back = up.scale_by_prime_powers({2: -3, 3: 1})
        for p in SIGMA23:
            assert back.project(p).agrees_with(a.project(p))
        with pytest.raises(PrimeOutsideSigma):
            a.scale_by_prime_powers({5: 1})


class TestDiagonal:
    @given(st.integers(-200, 200), st.sampled_from([1, 2, 3, 4, 6, 8, 9, 12]))
    def test_diagonal_is_ring_homomorphism(self, n, d):
        x = Fraction(n, d)
        y = Fraction(5, 6)
        dx = FiniteAdele.diagonal(x, SIGMA23, prec=10)
        dy = FiniteAdele.diagonal(y, SIGMA23, prec=10)
        for p in SIGMA23:
            assert (dx + dy).project(p).agrees_with(
                PadicNumber.from_fraction(x + y, p, 10))
            assert (dx * dy).project(p).agrees_with(
                PadicNumber.from_fraction(x * y, p, 10))

    def test_diagonal_rejects_bad_denominator(self):
        with pytest.raises(ValidationError):
            FiniteAdele.diagonal(Fraction(1, 5), SIGMA23)

    def test_diagonal_srational(self):
        r = SRational.make(3, 4, SIGMA23)
        a = FiniteAdele.diagonal(r, SIGMA23)
        assert a.s == 4


class TestIdempotents:
    def test_laws(self):
        es = {p: idempotent(p, SIGMA235, prec=10) for p in SIGMA235}
        one = FiniteAdele.one(SIGMA235, prec=10)
        total = None
        for p, e in es.items():
            sq = e * e
            for q in SIGMA235:
                assert sq.project(q).agrees_with(e.project(q))
            total = e if total is None else total + e
        for q in SIGMA235:
            assert total.project(q).agrees_with(one.project(q))
        # orthogonality
        prod = es[2] * es[3]
        assert all(prod.project(q).is_zero for q in SIGMA235)

    def test_all_primes_unsupported(self):
        with pytest.raises(UnsupportedSigma):
            idempotent(2, ALL)

    def test_outside_sigma(self):
        with pytest.raises(PrimeOutsideSigma):
            idempotent(5, SIGMA23)


class TestAllPrimesMode:
    def test_diagonal_components(self):
        a = FiniteAdele.diagonal(Fraction(5, 6), ALL, prec=4)
        assert a.s == 6
        for p, expect in [(2, Fraction(5, 6)), (3, Fraction(5, 6)),
                          (5, Fraction(5, 6)), (7, Fraction(5, 6))]:
            assert a.project(p, 3).agrees_with(PadicNumber.from_fraction(expect, p, 3))

    def test_sum_to_integer(self):
        a = FiniteAdele.diagonal(Fraction(5, 6), ALL, prec=4)
        b = FiniteAdele.diagonal(Fraction(1, 6), ALL, prec=4)
        c = a + b
        assert c.s == 1
        for p in (2, 3, 5, 7, 11):
            assert c.project(p, 1).residue(1) == 1 % p

    def test_product_matches_rational(self):
        a = FiniteAdele.diagonal(Fraction(3, 4), ALL, prec=4)
        b = FiniteAdele.diagonal(Fraction(2, 9), ALL, prec=4)
        c = a * b
        x = Fraction(3, 4) * Fraction(2, 9)
        assert c.s == x.denominator
        for p in (2, 3, 5, 7):
            assert c.project(p, 2).agrees_with(PadicNumber.from_fraction(x, p, 2))

    def test_canonicalize_idempotent(self):
        a = FiniteAdele.diagonal(Fraction(3, 4), ALL, prec=4)
        b = a.canonicalize()
        assert (b.s, b.tail_scale) == (a.s, a.tail_scale)

    def test_invariant_support(self):
        # s and tail_scale denominator must be covered by overrides
        with pytest.raises(ValidationError):
            FiniteAdele(sigma=ALL, s=2, tail=ProfiniteInt.from_int(1),
                        overrides={})

    def test_scale_restricted_to_materialized(self):
        a = FiniteAdele.diagonal(Fraction(3, 4), ALL, prec=4)
        with pytest.raises(PrimeOutsideSigma):
            a.scale_by_prime_powers({5: 1})
        up = a.scale_by_prime_powers({2: 2})
        assert up.s == 1  # 3/4 * 4 = 3 is integral


class TestFullAdele:
    def test_diagonal_and_arithmetic(self):
        x, y = Fraction(5, 6), Fraction(-1, 2)
        a = Adele.diagonal(x, SIGMA23, prec=10)
        b = Adele.diagonal(y, SIGMA23, prec=10)
        s = a + b
        assert s.real == x + y
        for p in SIGMA23:
            assert s.finite.project(p).agrees_with(
                PadicNumber.from_fraction(x + y, p, 10))
        m = a * b
        assert m.real == x * y
        assert (-a).real == -x

    def test_str_contains_real_part(self):
        a = Adele.diagonal(Fraction(1, 2), SIGMA23)
        assert str(a).startswith("(1/2 |")
