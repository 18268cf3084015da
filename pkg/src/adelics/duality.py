"""Character pairings, the right action of Z[1/S] on characters, and the
annihilator calculus on products of p-adic subgroup lattices.

Circle values split an exact rational part from a floating real part so
that every pairing over finite atoms is exact; only the real line ever
needs a tolerance.  The pairing formulas are the standard fractional-part
constructions; the test suite validates each of them against independent
oracles before use.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .adele import Adele
from .errors import AtomMismatch, UnsupportedAtom, ValidationError
from .localization import PrimeSet, SRational, factorize
from .padic import DEFAULT_PRECISION, PadicNumber, PadicSubgroup
from .structure import (
    FREE_RANK_ONE,
    PADIC_FIELD,
    PADIC_INTEGERS,
    REAL,
    ModuleAtom,
)


@dataclass(frozen=True)
class CircleValue:
    """A point of the circle written additively as a fraction of a turn."""

    rational_part: Fraction = Fraction(0)
    real_part: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "rational_part", Fraction(self.rational_part) % 1)
        object.__setattr__(self, "real_part", float(self.real_part) % 1.0 if self.real_part else 0.0)

    @property
    def turns(self) -> float:
        return (float(self.rational_part) + self.real_part) % 1.0

    @property
    def is_exact(self) -> bool:
        return self.real_part == 0.0

    def __add__(self, other: "CircleValue") -> "CircleValue":
        return CircleValue(self.rational_part + other.rational_part,
                           self.real_part + other.real_part)

    def __neg__(self) -> "CircleValue":
        return CircleValue(-self.rational_part, -self.real_part)

    def __sub__(self, other: "CircleValue") -> "CircleValue":
        return self + (-other)

    def close_to(self, other: "CircleValue", tol: float = 1e-9) -> bool:
        d = (self.turns - other.turns) % 1.0
        return min(d, 1.0 - d) <= tol

    def __str__(self) -> str:
        if self.is_exact:
            return f"{self.rational_part} turn"
        return f"{self.turns:.12g} turn"


ZERO_TURN = CircleValue()


def _frac_mod1(x: Fraction | float) -> CircleValue:
    if isinstance(x, Fraction):
        return CircleValue(rational_part=x)
    return CircleValue(real_part=x)


@dataclass(frozen=True)
class Character:
    """A character of one module atom, given by its dual-element datum.

    Supported atoms and parameters:
      Real                 -- rational or float t, x |-> t*x
      PadicField(p)        -- y in Q_p, x |-> frac_p(x*y)
      PadicIntegers(q)     -- a in Q/Z with q-power denominator, x |-> a*x
      FreeRankOne (Z[1/S]) -- an adele class a, x |-> a_oo*x + sum_p frac_p(a_p*x)
    """

    atom: ModuleAtom
    parameter: object
    sigma: PrimeSet | None = None  # required for the Z[1/S] atom

    def __post_init__(self):
        kind = self.atom.kind
        if kind == REAL:
            if not isinstance(self.parameter, (Fraction, int, float)):
                raise AtomMismatch("real characters take a rational or float parameter")
        elif kind == PADIC_FIELD:
            if not isinstance(self.parameter, PadicNumber) or self.parameter.p != self.atom.param:
                raise AtomMismatch(f"need a {self.atom.param}-adic parameter")
        elif kind == PADIC_INTEGERS:
            a = self.parameter
            if not isinstance(a, Fraction):
                raise AtomMismatch("Z_q characters take a rational parameter mod 1")
            den = a.denominator
            if den > 1 and set(factorize(den)) != {self.atom.param}:
                raise AtomMismatch(f"parameter denominator must be a power of {self.atom.param}")
            object.__setattr__(self, "parameter", a % 1)
        elif kind == FREE_RANK_ONE:
            if not isinstance(self.parameter, Adele):
                raise AtomMismatch("Z[1/S] characters take an adele-class parameter")
            if self.sigma is None:
                object.__setattr__(self, "sigma", self.parameter.finite.sigma)
        else:
            raise UnsupportedAtom(f"no pairing is defined for atom {self.atom}")

    # -- evaluation -----------------------------------------------------

    def pair(self, x) -> CircleValue:
        """The value of the character at x, as a fraction of a turn."""
        kind = self.atom.kind
        if kind == REAL:
            t = self.parameter
            if isinstance(t, (Fraction, int)) and isinstance(x, (Fraction, int)):
                return CircleValue(rational_part=Fraction(t) * Fraction(x))
            return CircleValue(real_part=float(t) * float(x))
        if kind == PADIC_FIELD:
            p = self.atom.param
            if isinstance(x, (int, Fraction)):
                x = PadicNumber.from_fraction(Fraction(x), p, self.parameter.k)
            if not isinstance(x, PadicNumber) or x.p != p:
                raise AtomMismatch(f"element must be {p}-adic")
            return CircleValue(rational_part=(x * self.parameter).frac_part())
        if kind == PADIC_INTEGERS:
            q = self.atom.param
            a = self.parameter
            j = 0 if a.denominator == 1 else factorize(a.denominator)[q]
            if isinstance(x, PadicNumber):
                if x.p != q:
                    raise AtomMismatch(f"element must be {q}-adic integral")
                r = x.residue(j) if j else 0
            elif isinstance(x, int):
                r = x % q ** j if j else 0
            else:
                raise AtomMismatch("element of Z_q must be an integer or p-adic integer")
            return CircleValue(rational_part=a * r)
        if kind == FREE_RANK_ONE:
            value = x.value if isinstance(x, SRational) else Fraction(x)
            if not self.sigma.allows_denominator(value.denominator):
                raise AtomMismatch(f"{value} is not in Z[1/S] for {self.sigma}")
            a = self.parameter
            if isinstance(a.real, Fraction):
                total = CircleValue(rational_part=a.real * value)
            else:
                total = CircleValue(real_part=a.real * float(value))
            for p in self._finite_support():
                comp = a.finite.project(p)
                scaled = comp * PadicNumber.from_fraction(value, p, comp.k) \
                    if value != 0 else PadicNumber.zero(p, comp.k)
                total = total + CircleValue(rational_part=scaled.frac_part())
            return total
        raise UnsupportedAtom(str(self.atom))

    def _finite_support(self):
        if self.sigma.is_all:
            return sorted(self.parameter.finite.overrides)
        return self.sigma.primes

    def __call__(self, x) -> CircleValue:
        return self.pair(x)

    # -- the chi^r right action -----------------------------------------

    def act(self, r: SRational | Fraction | int) -> "Character":
        """chi^r with chi^r(x) = chi(r*x), realized on the parameter."""
        value = r.value if isinstance(r, SRational) else Fraction(r)
        kind = self.atom.kind
        if kind == REAL:
            t = self.parameter
            if isinstance(t, (Fraction, int)):
                return Character(self.atom, Fraction(t) * value, self.sigma)
            return Character(self.atom, float(t) * float(value), self.sigma)
        if kind == PADIC_FIELD:
            y = self.parameter
            scaled = y * PadicNumber.from_fraction(value, y.p, y.k) if value != 0 \
                else PadicNumber.zero(y.p, y.k)
            return Character(self.atom, scaled, self.sigma)
        if kind == PADIC_INTEGERS:
            q = self.atom.param
            a = self.parameter
            j = 0 if a.denominator == 1 else factorize(a.denominator)[q]
            if j == 0:
                return Character(self.atom, Fraction(0), self.sigma)
            # r has Sigma-smooth denominator, invertible mod q^j since q is not in Sigma
            den_inv = pow(value.denominator % q ** j, -1, q ** j)
            new = Fraction(a.numerator * value.numerator * den_inv, a.denominator) % 1
            return Character(self.atom, new, self.sigma)
        if kind == FREE_RANK_ONE:
            return Character(self.atom, _adele_scale(self.parameter, value), self.sigma)
        raise UnsupportedAtom(str(self.atom))

    def __pow__(self, r):
        return self.act(r)


def _adele_scale(a: Adele, value: Fraction) -> Adele:
    from .adele import FiniteAdele, _scaled

    if isinstance(a.real, Fraction):
        real = a.real * value
    else:
        real = a.real * float(value)
    fa = a.finite
    if fa.sigma.is_all:
        xs = {p: _scaled(fa.project(p), value) for p in fa.overrides}
        num, den = value.numerator, value.denominator
        # denominator primes must be materialized before scaling the tail
        extra = set(factorize(den)) - set(fa.overrides) if den > 1 else set()
        for p in extra:
            xs[p] = _scaled(fa.project(p), value)
        tail_scale = fa.tail_scale / fa.s * value
        return Adele(real, FiniteAdele._canonical_all(fa.sigma, 1, xs, fa.tail, tail_scale))
    comps = {p: _scaled(fa.project(p), value) for p in fa.sigma}
    return Adele(real, FiniteAdele.make(comps, fa.sigma))


def pair(chi: Character, x) -> CircleValue:
    return chi.pair(x)


def act(chi: Character, r) -> Character:
    return chi.act(r)


# -- the annihilator / orthogonal-complement calculus -------------------

@dataclass(frozen=True)
class SubgroupDescriptor:
    """A finite product of closed-subgroup entries inside a power of Q_p's."""

    entries: tuple[PadicSubgroup, ...]

    def __post_init__(self):
        if not self.entries:
            raise ValidationError("empty subgroup descriptor")
        for e in self.entries:
            if not isinstance(e, PadicSubgroup):
                raise UnsupportedAtom(f"unsupported lattice entry {e!r}")

    @property
    def is_compact(self) -> bool:
        return all(e.is_compact for e in self.entries)

    @property
    def is_open(self) -> bool:
        return all(e.is_open for e in self.entries)

    def contains(self, other: "SubgroupDescriptor") -> bool:
        return all(a.contains(b) for a, b in zip(self.entries, other.entries, strict=True))

    def meet(self, other: "SubgroupDescriptor") -> "SubgroupDescriptor":
        return SubgroupDescriptor(tuple(
            a.meet(b) for a, b in zip(self.entries, other.entries, strict=True)))

    def join(self, other: "SubgroupDescriptor") -> "SubgroupDescriptor":
        return SubgroupDescriptor(tuple(
            a.join(b) for a, b in zip(self.entries, other.entries, strict=True)))

    def __str__(self) -> str:
        return " x ".join(str(e) for e in self.entries)


def _annihilate_entry(e: PadicSubgroup) -> PadicSubgroup:
    if e.kind == "zero":
        return PadicSubgroup.full(e.p)
    if e.kind == "full":
        return PadicSubgroup.trivial(e.p)
    return PadicSubgroup.power(e.p, -e.exponent)


def annihilator(h: SubgroupDescriptor) -> SubgroupDescriptor:
    """A(p^n Z_p) = p^(-n) Z_p, factorwise; swaps Zero and Full."""
    return SubgroupDescriptor(tuple(_annihilate_entry(e) for e in h.entries))


def orthogonal(x: SubgroupDescriptor) -> SubgroupDescriptor:
    """Orthogonal complement; on this lattice the same factorwise map,
    so that orthogonal(annihilator(H)) = H."""
    return SubgroupDescriptor(tuple(_annihilate_entry(e) for e in x.entries))


# -- anti-diagonal discreteness ----------------------------------------

def antidiagonal_embed(b: SRational | Fraction, sigma: PrimeSet,
                       prec: int = DEFAULT_PRECISION) -> Adele:
    """x |-> (x, -x, -x, ...): real part x, every finite component -x."""
    value = b.value if isinstance(b, SRational) else Fraction(b)
    neg = Adele.diagonal(SRational(-value, sigma) if not sigma.is_all else Fraction(-value),
                         sigma, prec)
    return Adele(real=value, finite=neg.finite)


def _s_smooth_denominators(bound: int, sigma: PrimeSet):
    """All Sigma-smooth positive integers <= bound, ascending."""
    out = [1]
    for p in sigma:
        grown = []
        for d in out:
            v = d * p
            while v <= bound:
                grown.append(v)
                v *= p
        out.extend(grown)
    return sorted(out)


def antidiagonal_discreteness_check(bound: int, sigma: PrimeSet) -> bool:
    """Exhaustively verify that only 0 in Z[1/S] (height <= bound) lands
    in the open box ]-1,1[ x Z_Sigma under the anti-diagonal embedding."""
    if sigma.is_all:
        raise ValidationError("discreteness check requires a finite prime set")
    if bound < 1:
        raise ValidationError("bound must be >= 1")
    for den in _s_smooth_denominators(bound, sigma):
        for num in range(-bound, bound + 1):
            x = Fraction(num, den)
            if x.denominator != den:
                continue  # not in lowest terms; already enumerated
            in_real_box = abs(x) < 1
            # the finite components are all -x; integrality at every p in
            # Sigma means the (Sigma-smooth) denominator is 1
            integral_everywhere = x.denominator == 1
            if in_real_box and integral_everywhere and x != 0:
                return False
    return True
