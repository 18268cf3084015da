"""The finite and full adele rings of Z[1/S] in (1/s)*z normal form.

Every element of the finite adeles is 1/s times a Sigma-adic integer,
with s minimal: for each prime dividing s the corresponding component
has negative valuation.  Storing (s, z) makes the restricted-product
condition structural — all but finitely many components are integral by
construction.

In all-primes mode the integral vector z is a profinite tail plus
finitely many materialized components; a rational scale (supported on
the materialized primes, where the tail is not consulted) absorbs the
exact divisions performed by canonicalization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import (
    ComponentPrimeOutsideSigma,
    InsufficientPrecision,
    MixedPrimeSets,
    PrimeOutsideSigma,
    UnsupportedSigma,
    ValidationError,
)
from .localization import PrimeSet, SRational, factorize
from .padic import DEFAULT_PRECISION, PadicNumber
from .profinite import ProfiniteInt


def _scaled(x: PadicNumber, c: Fraction | int) -> PadicNumber:
    """x * c for an exact rational c, at x's own precision."""
    c = Fraction(c)
    if c == 0:
        return PadicNumber.zero(x.p, x.k)
    return x * PadicNumber.from_fraction(c, x.p, x.k)


@dataclass(frozen=True)
class FiniteAdele:
    sigma: PrimeSet
    s: int
    parts: Mapping[int, PadicNumber] | None = None   # finite Sigma: integral z-components
    tail: ProfiniteInt | None = None                 # all primes: z off the materialized set
    tail_scale: Fraction = Fraction(1)
    overrides: Mapping[int, PadicNumber] | None = None  # all primes: integral z at materialized primes

    def __post_init__(self):
        if self.s < 1:
            raise ValidationError(f"s must be a positive integer, got {self.s}")
        if self.sigma.is_all:
            if self.tail is None or self.overrides is None or self.parts is not None:
                raise ValidationError("all-primes adeles carry a tail and overrides")
            object.__setattr__(self, "overrides", dict(self.overrides))
            support = set(factorize(self.s)) if self.s > 1 else set()
            support |= set(factorize(self.tail_scale.denominator)) if self.tail_scale.denominator > 1 else set()
            if not support <= set(self.overrides):
                raise ValidationError("s and the tail scale must be supported on materialized primes")
        else:
            if self.parts is None or self.tail is not None or self.overrides is not None:
                raise ValidationError("finite-Sigma adeles carry one component per prime")
            parts = dict(self.parts)
            if set(parts) != set(self.sigma.primes):
                raise ValidationError(f"components keyed {sorted(parts)} but Sigma is {self.sigma}")
            if self.s > 1 and not set(factorize(self.s)) <= set(parts):
                raise ValidationError("s has a prime factor outside Sigma")
            object.__setattr__(self, "parts", parts)

    # -- construction ---------------------------------------------------

    @classmethod
    def make(
        cls,
        components: Mapping[int, PadicNumber],
        sigma: PrimeSet,
        tail: ProfiniteInt | None = None,
    ) -> "FiniteAdele":
        """Canonicalize a component map into (1/s)*z normal form.

        Finite Sigma: ``components`` must be keyed exactly by Sigma.
        All primes: ``components`` are the finitely many explicitly given
        (possibly non-integral) coordinates and ``tail`` covers the rest.
        """
        components = dict(components)
        for p, x in components.items():
            if p not in sigma:
                raise ComponentPrimeOutsideSigma(f"prime {p} is outside {sigma}")
            if x.p != p:
                raise ValidationError(f"component at {p} lives over prime {x.p}")
        if sigma.is_all:
            if tail is None:
                raise ValidationError("all-primes mode needs a profinite tail")
            return cls._canonical_all(sigma, 1, components, tail, Fraction(1))
        if set(components) != set(sigma.primes):
            raise ValidationError(f"components keyed {sorted(components)} but Sigma is {sigma}")
        return cls._canonical_finite(sigma, components)

    @classmethod
    def _canonical_finite(cls, sigma: PrimeSet, xs: Mapping[int, PadicNumber]) -> "FiniteAdele":
        s = 1
        for p, x in xs.items():
            if not x.is_zero and x.val < 0:
                s *= p ** (-x.val)
        parts = {p: _scaled(x, s) for p, x in xs.items()}
        return cls(sigma=sigma, s=s, parts=parts)

    @classmethod
    def _canonical_all(
        cls,
        sigma: PrimeSet,
        s_raw: int,
        xs: Mapping[int, PadicNumber],
        tail: ProfiniteInt,
        z_tail_scale_raw: Fraction,
    ) -> "FiniteAdele":
        # xs holds the actual component values x_p at materialized primes;
        # off that set the z-vector w.r.t. s_raw is z_tail_scale_raw * tail.
        s = 1
        for p, x in xs.items():
            if not x.is_zero and x.val < 0:
                s *= p ** (-x.val)
        overrides = {p: _scaled(x, s) for p, x in xs.items()}
        tail_scale = z_tail_scale_raw * Fraction(s, s_raw)
        return cls(sigma=sigma, s=s, tail=tail, tail_scale=tail_scale, overrides=overrides)

    @classmethod
    def one(cls, sigma: PrimeSet, prec: int = DEFAULT_PRECISION,
            tail: ProfiniteInt | None = None) -> "FiniteAdele":
        if sigma.is_all:
            level = tail.level if tail is not None else None
            from .profinite import DEFAULT_LEVEL
            return cls.make({}, sigma, tail=ProfiniteInt.from_int(1, level or DEFAULT_LEVEL))
        comps = {p: PadicNumber.from_int(1, p, prec) for p in sigma}
        return cls.make(comps, sigma)

    @classmethod
    def zero(cls, sigma: PrimeSet, prec: int = DEFAULT_PRECISION,
             level: int | None = None) -> "FiniteAdele":
        if sigma.is_all:
            from .profinite import DEFAULT_LEVEL
            return cls.make({}, sigma, tail=ProfiniteInt.from_int(0, level or DEFAULT_LEVEL))
        comps = {p: PadicNumber.zero(p, prec) for p in sigma}
        return cls.make(comps, sigma)

    @classmethod
    def diagonal(cls, r: SRational | Fraction, sigma: PrimeSet,
                 prec: int = DEFAULT_PRECISION, level: int | None = None) -> "FiniteAdele":
        """The image of r in Z[1/S] under the diagonal embedding."""
        value = r.value if isinstance(r, SRational) else Fraction(r)
        if sigma.is_all:
            from .profinite import DEFAULT_LEVEL
            level = level or DEFAULT_LEVEL
            den_primes = factorize(value.denominator) if value.denominator > 1 else {}
            comps = {p: PadicNumber.from_fraction(value, p, prec) for p in den_primes}
            # off the denominator support the value is an integer times an
            # invertible unit; fold the unit into the tail via CRT residue
            tail_mod = math.factorial(level + 1)
            den = value.denominator
            num = value.numerator
            # remove the denominator's contribution at materialized primes
            co_mod = tail_mod
            for p in den_primes:
                while co_mod % p == 0:
                    co_mod //= p
            inv = pow(den % co_mod, -1, co_mod) if co_mod > 1 else 0
            tail_res = num * inv % co_mod if co_mod > 1 else 0
            # the tail is only consulted away from materialized primes, so a
            # residue correct mod the prime-to-den part of (level+1)! suffices
            tail = ProfiniteInt.from_residues([(tail_res, co_mod)], level) if co_mod > 1 \
                else ProfiniteInt.from_int(0, level)
            return cls.make(comps, sigma, tail=tail)
        if not sigma.allows_denominator(value.denominator):
            raise ValidationError(f"{value} is not an element of Z[1/S] for {sigma}")
        comps = {p: PadicNumber.from_fraction(value, p, prec) for p in sigma}
        return cls.make(comps, sigma)

    # -- access ---------------------------------------------------------

    def project(self, p: int, prec: int = DEFAULT_PRECISION) -> PadicNumber:
        """The Q_p coordinate z_p / s; a ring homomorphism for each p."""
        if p not in self.sigma:
            raise PrimeOutsideSigma(f"prime {p} is outside {self.sigma}")
        if self.sigma.is_all:
            if p in self.overrides:
                return _scaled(self.overrides[p], Fraction(1, self.s))
            c = self.tail_scale / self.s  # p-adic unit at non-materialized primes
            avail = self.tail.max_precision(p)
            if avail == 0:
                raise InsufficientPrecision(f"tail level {self.tail.level} has no {p}-adic digits")
            return _scaled(self.tail.component_at(p, min(prec, avail)), c)
        return _scaled(self.parts[p], Fraction(1, self.s))

    @property
    def is_integral(self) -> bool:
        """Membership in the compact open subring Z_Sigma."""
        return self.s == 1

    def canonicalize(self) -> "FiniteAdele":
        """Recompute the normal form from the components (idempotent)."""
        if self.sigma.is_all:
            xs = {p: self.project(p) for p in self.overrides}
            return FiniteAdele._canonical_all(self.sigma, self.s, xs, self.tail, self.tail_scale)
        return FiniteAdele.make({p: self.project(p) for p in self.sigma}, self.sigma)

    def _check(self, other: "FiniteAdele"):
        if self.sigma != other.sigma:
            raise MixedPrimeSets(f"{self.sigma} vs {other.sigma}")

    # -- ring structure -------------------------------------------------

    def __add__(self, other: "FiniteAdele") -> "FiniteAdele":
        self._check(other)
        if not self.sigma.is_all:
            comps = {p: self.project(p) + other.project(p) for p in self.sigma}
            return FiniteAdele.make(comps, self.sigma)
        keys = set(self.overrides) | set(other.overrides)
        xs = {p: self.project(p) + other.project(p) for p in keys}
        a1 = self.tail_scale / self.s
        a2 = other.tail_scale / other.s
        d = math.lcm(a1.denominator, a2.denominator)
        t1 = int(a1 * d)
        t2 = int(a2 * d)
        tail = ProfiniteInt(self.tail.residue * t1 + other.tail.residue * t2,
                            min(self.tail.level, other.tail.level))
        return FiniteAdele._canonical_all(self.sigma, 1, xs, tail, Fraction(1, d))

    def __mul__(self, other: "FiniteAdele") -> "FiniteAdele":
        self._check(other)
        if not self.sigma.is_all:
            comps = {p: self.project(p) * other.project(p) for p in self.sigma}
            return FiniteAdele.make(comps, self.sigma)
        keys = set(self.overrides) | set(other.overrides)
        xs = {p: self.project(p) * other.project(p) for p in keys}
        a = (self.tail_scale / self.s) * (other.tail_scale / other.s)
        tail = ProfiniteInt(self.tail.residue * other.tail.residue * a.numerator,
                            min(self.tail.level, other.tail.level))
        return FiniteAdele._canonical_all(self.sigma, 1, xs, tail, Fraction(1, a.denominator))

    def __neg__(self) -> "FiniteAdele":
        if self.sigma.is_all:
            xs = {p: -self.project(p) for p in self.overrides}
            return FiniteAdele._canonical_all(self.sigma, self.s, xs, -self.tail, self.tail_scale)
        return FiniteAdele.make({p: -self.project(p) for p in self.sigma}, self.sigma)

    def __sub__(self, other: "FiniteAdele") -> "FiniteAdele":
        return self + (-other)

    def scale_by_prime_powers(self, exponents: Mapping[int, int]) -> "FiniteAdele":
        """Multiply component p by p^(l_p); invertible via negated exponents."""
        for p in exponents:
            if p not in self.sigma:
                raise PrimeOutsideSigma(f"prime {p} is outside {self.sigma}")
        if self.sigma.is_all:
            if not set(exponents) <= set(self.overrides):
                raise PrimeOutsideSigma(
                    "all-primes scaling is restricted to explicitly materialized primes"
                )
            xs = {p: _scaled(self.project(p), Fraction(p) ** exponents.get(p, 0))
                  for p in self.overrides}
            return FiniteAdele._canonical_all(self.sigma, 1, xs, self.tail,
                                              self.tail_scale / self.s)
        comps = {p: _scaled(self.project(p), Fraction(p) ** exponents.get(p, 0))
                 for p in self.sigma}
        return FiniteAdele.make(comps, self.sigma)

    def __str__(self) -> str:
        if self.sigma.is_all:
            shown = ", ".join(f"{p}: {self.project(p)}" for p in sorted(self.overrides))
            return f"(1/{self.s})*[{shown}; tail {self.tail}]"
        shown = ", ".join(f"{p}: {self.project(p)}" for p in self.sigma)
        return f"({shown})"


def idempotent(p: int, sigma: PrimeSet, prec: int = DEFAULT_PRECISION) -> FiniteAdele:
    """The unit vector e_p: 1 at p, 0 elsewhere; e_p^2 = e_p, sum e_p = 1."""
    if sigma.is_all:
        raise UnsupportedSigma("idempotent sums are infinite over all primes")
    if p not in sigma:
        raise PrimeOutsideSigma(f"prime {p} is outside {sigma}")
    comps = {
        q: PadicNumber.from_int(1 if q == p else 0, q, prec)
        for q in sigma
    }
    return FiniteAdele.make(comps, sigma)


@dataclass(frozen=True)
class Adele:
    """An element of R x (finite adeles); the real slot is exact by default."""

    real: Fraction | float
    finite: FiniteAdele

    def _check(self, other: "Adele"):
        self.finite._check(other.finite)

    @classmethod
    def diagonal(cls, r: SRational | Fraction, sigma: PrimeSet,
                 prec: int = DEFAULT_PRECISION) -> "Adele":
        value = r.value if isinstance(r, SRational) else Fraction(r)
        return cls(real=value, finite=FiniteAdele.diagonal(r, sigma, prec))

    def __add__(self, other: "Adele") -> "Adele":
        self._check(other)
        return Adele(self.real + other.real, self.finite + other.finite)

    def __mul__(self, other: "Adele") -> "Adele":
        self._check(other)
        return Adele(self.real * other.real, self.finite * other.finite)

    def __neg__(self) -> "Adele":
        return Adele(-self.real, -self.finite)

    def __sub__(self, other: "Adele") -> "Adele":
        return self + (-other)

    def __str__(self) -> str:
        finite = str(self.finite)
        return f"({self.real} | {finite[1:-1] if not self.finite.sigma.is_all else finite})"
