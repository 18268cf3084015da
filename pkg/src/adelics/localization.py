"""Prime sets and exact arithmetic in the localization of the integers.

A localization Z[1/S] is determined by the set of primes dividing the
generators of S.  Only that prime set is stored; the multiplicative
monoid itself is never materialized.  The set of all primes (giving the
rationals) is a distinct tag, not an enumerated list.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DenominatorNotInS, MixedPrimeSets, ValidationError


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test (desk scale)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of |n| as {prime: exponent}; n must be nonzero."""
    if n == 0:
        raise ValidationError("cannot factorize 0")
    n = abs(n)
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class PrimeSet:
    """A finite ascending tuple of primes, or the tag for all primes.

    ``primes is None`` means every prime (Z[1/S] = Q).  The empty tuple
    is legal and means Z[1/S] = Z.
    """

    primes: tuple[int, ...] | None

    def __post_init__(self):
        if self.primes is not None:
            ps = tuple(self.primes)
            if list(ps) != sorted(set(ps)):
                raise ValidationError(f"prime set must be strictly ascending without duplicates: {ps}")
            for p in ps:
                if not is_prime(p):
                    raise ValidationError(f"{p} is not prime")
            object.__setattr__(self, "primes", ps)

    @classmethod
    def finite(cls, primes) -> "PrimeSet":
        return cls(tuple(sorted(set(primes))))

    @classmethod
    def all_primes(cls) -> "PrimeSet":
        return cls(None)

    @classmethod
    def from_generators(cls, generators) -> "PrimeSet":
        """Normalize a multiplicative generating set to its prime set.

        Generators +-1 are dropped silently; 0 is rejected.
        """
        primes: set[int] = set()
        for g in generators:
            if g == 0:
                raise ValidationError("0 is not a legal generator")
            if abs(g) == 1:
                continue
            primes.update(factorize(g))
        return cls.finite(primes)

    @classmethod
    def parse(cls, text: str) -> "PrimeSet":
        """Parse the config form ``primes:2,3,7`` or ``primes:all``."""
        if not text.startswith("primes:"):
            raise ValidationError(f"bad prime-set syntax: {text!r}")
        body = text[len("primes:"):]
        if body == "all":
            return cls.all_primes()
        if body == "":
            return cls.finite(())
        try:
            ps = [int(x) for x in body.split(",")]
        except ValueError:
            raise ValidationError(f"bad prime-set syntax: {text!r}") from None
        return cls(tuple(ps)) if ps == sorted(set(ps)) else cls.finite(ps)

    @property
    def is_all(self) -> bool:
        return self.primes is None

    def __contains__(self, p: int) -> bool:
        if self.primes is None:
            return is_prime(p)
        return p in self.primes

    def __iter__(self):
        if self.primes is None:
            raise TypeError("cannot enumerate the set of all primes")
        return iter(self.primes)

    def __str__(self) -> str:
        if self.primes is None:
            return "primes:all"
        return "primes:" + ",".join(str(p) for p in self.primes)

    def allows_denominator(self, den: int) -> bool:
        """True when every prime factor of den lies in this set."""
        if den in (1, -1):
            return True
        if self.primes is None:
            return True
        return all(p in self.primes for p in factorize(den))


def normalize_primeset(generators) -> PrimeSet:
    """Functional alias for :meth:`PrimeSet.from_generators`."""
    return PrimeSet.from_generators(generators)


@dataclass(frozen=True)
class SRational:
    """An element of Z[1/S]: a reduced fraction with S-smooth denominator."""

    value: Fraction
    sigma: PrimeSet

    def __post_init__(self):
        if not self.sigma.allows_denominator(self.value.denominator):
            raise DenominatorNotInS(
                f"denominator {self.value.denominator} has a prime factor outside {self.sigma}"
            )

    @classmethod
    def make(cls, num: int, den: int, sigma: PrimeSet) -> "SRational":
        if den == 0:
            raise ZeroDivisionError("denominator must be nonzero")
        return cls(Fraction(num, den), sigma)

    @property
    def num(self) -> int:
        return self.value.numerator

    @property
    def den(self) -> int:
        return self.value.denominator

    def _check(self, other: "SRational"):
        if self.sigma != other.sigma:
            raise MixedPrimeSets(f"{self.sigma} vs {other.sigma}")

    def __add__(self, other: "SRational") -> "SRational":
        self._check(other)
        return SRational(self.value + other.value, self.sigma)

    def __mul__(self, other: "SRational") -> "SRational":
        self._check(other)
        return SRational(self.value * other.value, self.sigma)

    def __neg__(self) -> "SRational":
        return SRational(-self.value, self.sigma)

    def __sub__(self, other: "SRational") -> "SRational":
        return self + (-other)

    def __str__(self) -> str:
        return str(self.value)
