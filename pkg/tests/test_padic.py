from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from adelics.errors import DivisionByZero, InsufficientPrecision, MixedPrimes, ValidationError
from adelics.padic import (
    INFINITY,
    PadicNumber,
    PadicSubgroup,
    compact_open_of_power_space,
)

PRIMES = [2, 3, 5, 7]


def rational_oracle(x: PadicNumber) -> Fraction:
    """Independent oracle: the exact rational the stored digits denote."""
    if x.is_zero:
        return Fraction(0)
    return x.unit * Fraction(x.p) ** x.val


def int_valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def congruent(a: Fraction, b: Fraction, p: int, cut: int) -> bool:
    """a = b modulo p^cut, for rationals with p-unit denominators allowed."""
    d = a - b
    if d == 0:
        return True
    v = int_valuation(d.numerator, p) - int_valuation(d.denominator, p)
    return v >= cut


def padics(p=None, k_max=8):
    prime = st.sampled_from(PRIMES) if p is None else st.just(p)
    return st.builds(
        lambda pp, n, d, k: PadicNumber.from_fraction(Fraction(n, d), pp, k),
        prime,
        st.integers(min_value=-10**6, max_value=10**6),
        st.integers(min_value=1, max_value=10**4),
        st.integers(min_value=3, max_value=k_max),
    )


class TestConstruction:
    def test_inverse_of_two_in_z5(self):
        x = PadicNumber.from_int(2, 5, 3)
        inv = x.inverse()
        # 2 * 63 = 126 = 1 + 125
        assert (inv.p, inv.val, inv.unit, inv.k) == (5, 0, 63, 3)

    def test_from_int_valuation(self):
        x = PadicNumber.from_int(12, 2, 8)
        assert (x.val, x.unit) == (2, 3)

    def test_from_fraction_negative_valuation(self):
        x = PadicNumber.from_fraction(Fraction(3, 4), 2, 8)
        assert x.val == -2 and x.unit % 4 == 3

    def test_zero_sentinel(self):
        z = PadicNumber.zero(7, 5)
        assert z.is_zero and z.val == INFINITY and z.abs_precision == 5

    def test_invalid_unit_rejected(self):
        with pytest.raises(ValidationError):
            PadicNumber(3, 0, 6, 2)  # 6 divisible by 3

    def test_nonprime_rejected(self):
        with pytest.raises(ValidationError):
            PadicNumber.from_int(1, 6, 4)


class TestArithmeticOracle:
    @given(padics(), padics())
    def test_add_matches_rationals(self, a, b):
        if a.p != b.p:
            with pytest.raises(MixedPrimes):
                a + b
            return
        c = a + b
        cut = min(a.abs_precision, b.abs_precision)
        assert c.abs_precision >= min(cut, 1)
        assert congruent(rational_oracle(c), rational_oracle(a) + rational_oracle(b),
                         a.p, min(cut, c.abs_precision))

    @given(padics(p=3), padics(p=3))
    def test_mul_matches_rationals(self, a, b):
        c = a * b
        assert congruent(rational_oracle(c), rational_oracle(a) * rational_oracle(b),
                         3, c.abs_precision)

    @given(padics(p=5))
    def test_neg_is_additive_inverse(self, a):
        assert (a + (-a)).is_zero

    @given(padics(p=2))
    def test_inverse_roundtrip(self, a):
        if a.is_zero:
            with pytest.raises(DivisionByZero):
                a.inverse()
            return
        one = a * a.inverse()
        assert one.val == 0 and one.unit == 1

    @given(padics(p=7), padics(p=7), padics(p=7))
    def test_ring_laws_to_shared_precision(self, a, b, c):
        lhs = a * (b + c)
        rhs = a * b + a * c
        assert lhs.agrees_with(rhs)
        assert (a + b).agrees_with(b + a)
        assert ((a + b) + c).agrees_with(a + (b + c))


class TestPrecisionTracking:
    def test_cancellation_shrinks_precision(self):
        a = PadicNumber.from_int(1, 2, 4)      # known mod 16
        b = PadicNumber.from_int(-1 + 16, 2, 4)
        c = a + b  # = 16, but only known mod 16: indistinguishable from 0
        assert c.is_zero and c.abs_precision == 4

    def test_partial_cancellation(self):
        a = PadicNumber.from_int(3, 2, 5)
        b = PadicNumber.from_int(5, 2, 5)
        c = a + b  # = 8 = 2^3, known mod 2^5
        assert c.val == 3 and c.k == 2 and c.unit == 1

    def test_residue_needs_digits(self):
        x = PadicNumber.from_int(3, 2, 4)
        assert x.residue(4) == 3
        with pytest.raises(InsufficientPrecision):
            x.residue(5)

    def test_frac_part_of_half(self):
        x = PadicNumber.from_fraction(Fraction(1, 2), 2, 8)
        assert x.frac_part() == Fraction(1, 2)

    def test_frac_part_of_integral_is_zero(self):
        assert PadicNumber.from_int(6, 2, 8).frac_part() == 0

    def test_frac_part_needs_precision(self):
        x = PadicNumber(2, -3, 1, 2)
        with pytest.raises(InsufficientPrecision):
            x.frac_part()

    @given(st.integers(min_value=-10**5, max_value=10**5),
           st.integers(min_value=1, max_value=10**3),
           st.sampled_from(PRIMES))
    def test_frac_part_oracle(self, n, d, p):
        x = Fraction(n, d)
        vd = int_valuation(x.denominator, p)
        y = PadicNumber.from_fraction(x, p, max(vd + 1, 4))
        f = y.frac_part()
        # x - frac_p(x) must be a p-adic integer; frac is in [0, 1)
        assert 0 <= f < 1
        diff = x - f
        assert int_valuation(diff.denominator, p) == 0 if diff != 0 else True


class TestTextRoundTrip:
    @given(padics())
    def test_parse_str_roundtrip(self, a):
        assert PadicNumber.parse(str(a)) == a

    def test_frozen_text_form(self):
        assert str(PadicNumber.from_int(25, 5, 8)) == "5^2*1 :: p-adic(5,8)"
        assert str(PadicNumber.zero(3, 4)) == "0 :: p-adic(3,4)"

    def test_bad_literal(self):
        with pytest.raises(ValidationError):
            PadicNumber.parse("5^2 :: p-adic(5,8)")


class TestSubgroupLattice:
    def test_contains_chain(self):
        z = PadicSubgroup.power(2, 0)
        assert z.contains(PadicSubgroup.power(2, 3))
        assert not PadicSubgroup.power(2, 3).contains(z)

    def test_extremes(self):
        full, triv = PadicSubgroup.full(5), PadicSubgroup.trivial(5)
        assert full.contains(triv) and not triv.contains(full)
        assert full.is_open and not full.is_compact
        assert triv.is_compact and not triv.is_open

    @given(st.integers(-10, 10), st.integers(-10, 10), st.integers(-10, 10))
    def test_lattice_laws(self, a, b, c):
        A, B, C = (PadicSubgroup.power(3, n) for n in (a, b, c))
        assert A.meet(B) == B.meet(A)
        assert A.join(B) == B.join(A)
        assert A.meet(B.meet(C)) == A.meet(B).meet(C)
        assert A.join(A.meet(B)) == A
        assert A.meet(A.join(B)) == A
        # meet/join are the largest-lower/least-upper bounds
        assert A.contains(A.meet(B)) and B.contains(A.meet(B))
        assert A.join(B).contains(A) and A.join(B).contains(B)

    def test_compact_open_witness_shape(self):
        w = compact_open_of_power_space([0, 2, -1], 3)
        assert all(isinstance(e, PadicSubgroup) and e.kind == "power" for e in w)
        assert [e.exponent for e in w] == [0, 2, -1]
        with pytest.raises(ValidationError):
            compact_open_of_power_space([], 3)
