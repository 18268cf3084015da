"""Bounded-precision exact arithmetic in Z_p and Q_p.

A nonzero value is stored as unit * p^val with the unit known modulo
p^k, i.e. the number is known modulo p^(val + k).  Zero carries no unit;
its ``k`` is the absolute precision ("known to be 0 mod p^k").  Addition
shrinks k when leading digits cancel instead of padding with digits that
were never computed.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import DivisionByZero, InsufficientPrecision, MixedPrimes, ValidationError
from .localization import is_prime

INFINITY = math.inf

DEFAULT_PRECISION = 8


def _check_prime(p: int):
    if not is_prime(p):
        raise ValidationError(f"{p} is not prime")


def _int_valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class PadicNumber:
    p: int
    val: int | float  # INFINITY iff the value is exactly 0 at this precision
    unit: int | None  # in [1, p^k), coprime to p; None iff zero
    k: int            # relative precision (absolute precision for zero)

    def __post_init__(self):
        _check_prime(self.p)
        if self.k < 1:
            raise ValidationError(f"precision must be >= 1, got {self.k}")
        if self.val == INFINITY:
            if self.unit is not None:
                raise ValidationError("zero carries no unit")
        else:
            if self.unit is None or not (1 <= self.unit < self.p ** self.k) or self.unit % self.p == 0:
                raise ValidationError(f"unit {self.unit} invalid for p={self.p}, k={self.k}")

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, p: int, k: int = DEFAULT_PRECISION) -> "PadicNumber":
        return cls(p, INFINITY, None, k)

    @classmethod
    def from_int(cls, n: int, p: int, k: int = DEFAULT_PRECISION) -> "PadicNumber":
        if n == 0:
            return cls.zero(p, k)
        v = _int_valuation(n, p)
        unit = (n // p ** v) % p ** k
        return cls(p, v, unit, k)

    @classmethod
    def from_fraction(cls, x: Fraction | int, p: int, k: int = DEFAULT_PRECISION) -> "PadicNumber":
        x = Fraction(x)
        if x == 0:
            return cls.zero(p, k)
        vn = _int_valuation(x.numerator, p)
        vd = _int_valuation(x.denominator, p)
        v = vn - vd
        num_unit = x.numerator // p ** vn
        den_unit = x.denominator // p ** vd
        unit = num_unit * pow(den_unit, -1, p ** k) % p ** k
        return cls(p, v, unit, k)

    # -- structure ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.val == INFINITY

    @property
    def abs_precision(self) -> int:
        """The number is known modulo p**abs_precision."""
        return self.k if self.is_zero else self.val + self.k

    def valuation(self) -> int | float:
        return self.val

    def residue(self, j: int) -> int:
        """Value mod p^j for integral values; requires enough known digits."""
        if not self.is_zero and self.val < 0:
            raise ValidationError("residue only defined for nonnegative valuation")
        if self.abs_precision < j:
            raise InsufficientPrecision(f"need {j} digits, have {self.abs_precision}")
        if self.is_zero:
            return 0
        return self.unit * self.p ** self.val % self.p ** j

    def frac_part(self) -> Fraction:
        """The p-adic fractional part: the negative-power tail, in [0, 1).

        Needs the first -val digits of the unit, so requires k >= -val.
        """
        if self.is_zero or self.val >= 0:
            return Fraction(0)
        m = -self.val
        if self.k < m:
            raise InsufficientPrecision(f"need {m} digits for the fractional part, have {self.k}")
        return Fraction(self.unit % self.p ** m, self.p ** m)

    def agrees_with(self, other: "PadicNumber") -> bool:
        """Equality up to the shared absolute precision."""
        self._check(other)
        cut = min(self.abs_precision, other.abs_precision)
        a = 0 if self.is_zero else self.unit * Fraction(self.p) ** self.val
        b = 0 if other.is_zero else other.unit * Fraction(other.p) ** other.val
        d = a - b
        if d == 0:
            return True
        v = _int_valuation(d.numerator, self.p) - _int_valuation(d.denominator, self.p)
        return v >= cut

    def _check(self, other: "PadicNumber"):
        if self.p != other.p:
            raise MixedPrimes(f"p={self.p} vs p={other.p}")

    # -- ring operations ------------------------------------------------

    def __add__(self, other: "PadicNumber") -> "PadicNumber":
        self._check(other)
        cut = min(self.abs_precision, other.abs_precision)
        if self.is_zero and other.is_zero:
            return PadicNumber.zero(self.p, cut)
        vals = [x.val for x in (self, other) if not x.is_zero]
        v = min(vals)
        if cut - v <= 0:
            # every known digit may be affected by the unknown tail
            return PadicNumber.zero(self.p, max(cut, 1))
        mod = self.p ** (cut - v)
        total = 0
        for x in (self, other):
            if not x.is_zero:
                total += x.unit * self.p ** (x.val - v)
        total %= mod
        if total == 0:
            return PadicNumber.zero(self.p, cut)
        t = _int_valuation(total, self.p)
        new_val = v + t
        new_k = cut - new_val
        unit = (total // self.p ** t) % self.p ** new_k
        return PadicNumber(self.p, new_val, unit, new_k)

    def __neg__(self) -> "PadicNumber":
        if self.is_zero:
            return self
        return PadicNumber(self.p, self.val, (-self.unit) % self.p ** self.k, self.k)

    def __sub__(self, other: "PadicNumber") -> "PadicNumber":
        return self + (-other)

    def __mul__(self, other: "PadicNumber") -> "PadicNumber":
        self._check(other)
        if self.is_zero or other.is_zero:
            # O(p^a) * (unit p^v) = O(p^(a+v)); O(p^a) * O(p^b) = O(p^(a+b))
            a = self.k if self.is_zero else self.val
            b = other.k if other.is_zero else other.val
            return PadicNumber.zero(self.p, max(int(a + b), 1))
        k = min(self.k, other.k)
        unit = self.unit * other.unit % self.p ** k
        return PadicNumber(self.p, self.val + other.val, unit, k)

    def inverse(self) -> "PadicNumber":
        if self.is_zero:
            raise DivisionByZero("cannot invert zero")
        unit = pow(self.unit, -1, self.p ** self.k)
        return PadicNumber(self.p, -self.val, unit, self.k)

    def __truediv__(self, other: "PadicNumber") -> "PadicNumber":
        return self * other.inverse()

    # -- text form ------------------------------------------------------

    def __str__(self) -> str:
        if self.is_zero:
            return f"0 :: p-adic({self.p},{self.k})"
        return f"{self.p}^{self.val}*{self.unit} :: p-adic({self.p},{self.k})"

    _TEXT_RE = re.compile(
        r"^\s*(?:(?P<zero>0)|(?P<p>\d+)\^(?P<v>-?\d+)\*(?P<u>\d+))\s*::\s*"
        r"p-adic\(\s*(?P<pp>\d+)\s*,\s*(?P<k>\d+)\s*\)\s*$"
    )

    @classmethod
    def parse(cls, text: str) -> "PadicNumber":
        m = cls._TEXT_RE.match(text)
        if not m:
            raise ValidationError(f"bad p-adic literal: {text!r}")
        p, k = int(m.group("pp")), int(m.group("k"))
        if m.group("zero"):
            return cls.zero(p, k)
        if int(m.group("p")) != p:
            raise ValidationError(f"inconsistent primes in {text!r}")
        return cls(p, int(m.group("v")), int(m.group("u")) % p ** k, k)


# -- the closed-subgroup lattice of Q_p ---------------------------------

_POWER, _ZERO, _FULL = "power", "zero", "full"


@dataclass(frozen=True)
class PadicSubgroup:
    """p^n Z_p inside Q_p, the trivial subgroup, or all of Q_p."""

    p: int
    kind: str
    exponent: int | None = None

    def __post_init__(self):
        _check_prime(self.p)
        if self.kind not in (_POWER, _ZERO, _FULL):
            raise ValidationError(f"bad subgroup kind {self.kind!r}")
        if (self.kind == _POWER) != (self.exponent is not None):
            raise ValidationError("exponent present iff kind is 'power'")

    @classmethod
    def power(cls, p: int, n: int) -> "PadicSubgroup":
        return cls(p, _POWER, n)

    @classmethod
    def trivial(cls, p: int) -> "PadicSubgroup":
        return cls(p, _ZERO)

    @classmethod
    def full(cls, p: int) -> "PadicSubgroup":
        return cls(p, _FULL)

    @property
    def is_compact(self) -> bool:
        return self.kind != _FULL

    @property
    def is_open(self) -> bool:
        return self.kind != _ZERO

    def _check(self, other: "PadicSubgroup"):
        if self.p != other.p:
            raise MixedPrimes(f"p={self.p} vs p={other.p}")

    def contains(self, other: "PadicSubgroup") -> bool:
        self._check(other)
        if self.kind == _FULL or other.kind == _ZERO:
            return True
        if self.kind == _ZERO or other.kind == _FULL:
            return False
        return self.exponent <= other.exponent

    def meet(self, other: "PadicSubgroup") -> "PadicSubgroup":
        self._check(other)
        if self.kind == _ZERO or other.kind == _ZERO:
            return PadicSubgroup.trivial(self.p)
        if self.kind == _FULL:
            return other
        if other.kind == _FULL:
            return self
        return PadicSubgroup.power(self.p, max(self.exponent, other.exponent))

    def join(self, other: "PadicSubgroup") -> "PadicSubgroup":
        self._check(other)
        if self.kind == _FULL or other.kind == _FULL:
            return PadicSubgroup.full(self.p)
        if self.kind == _ZERO:
            return other
        if other.kind == _ZERO:
            return self
        return PadicSubgroup.power(self.p, min(self.exponent, other.exponent))

    def __str__(self) -> str:
        if self.kind == _ZERO:
            return f"0 < Q_{self.p}"
        if self.kind == _FULL:
            return f"Q_{self.p}"
        n = self.exponent
        if n == 0:
            return f"Z_{self.p}"
        return f"{self.p}^{n}Z_{self.p}"


def compact_open_of_power_space(exponents, p: int) -> tuple[PadicSubgroup, ...]:
    """The compact open subgroup prod_i p^(n_i) Z_p of Q_p^n.

    Every compact open subgroup of a finite p-adic power space has this
    shape, so the tuple is a complete witness type.
    """
    exponents = list(exponents)
    if not exponents:
        raise ValidationError("empty product of p-adic factors")
    return tuple(PadicSubgroup.power(p, n) for n in exponents)
