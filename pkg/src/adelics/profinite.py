"""Profinite integers in factorial base and their Sigma-adic quotients.

A truncated profinite integer at level m is an exact residue class
modulo (m+1)!.  The residue is the canonical value; the factorial-base
digits c_1..c_m with 0 <= c_i <= i are a derived presentation, converted
both ways without loss.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

from .errors import IncompatibleResidues, InsufficientPrecision, ValidationError
from .localization import PrimeSet
from .padic import DEFAULT_PRECISION, PadicNumber

DEFAULT_LEVEL = 10


@dataclass(frozen=True)
class ProfiniteInt:
    residue: int  # canonical value in [0, (m+1)!)
    level: int    # m >= 1

    def __post_init__(self):
        if self.level < 1:
            raise ValidationError(f"level must be >= 1, got {self.level}")
        object.__setattr__(self, "residue", self.residue % self.modulus)

    @property
    def modulus(self) -> int:
        return math.factorial(self.level + 1)

    @classmethod
    def from_int(cls, n: int, level: int = DEFAULT_LEVEL) -> "ProfiniteInt":
        return cls(n % math.factorial(level + 1), level)

    @classmethod
    def from_digits(cls, digits) -> "ProfiniteInt":
        digits = list(digits)
        if not digits:
            raise ValidationError("need at least one digit")
        total = 0
        for i, c in enumerate(digits, start=1):
            if not 0 <= c <= i:
                raise ValidationError(f"digit c_{i}={c} out of range [0, {i}]")
            total += c * math.factorial(i)
        return cls(total, len(digits))

    @property
    def digits(self) -> tuple[int, ...]:
        """Factorial-base digits c_1..c_m (c_0 is forced to 0 and omitted)."""
        out = []
        t = self.residue
        for i in range(1, self.level + 1):
            t, c = divmod(t, i + 1)
            out.append(c)
        return tuple(out)

    def __add__(self, other: "ProfiniteInt") -> "ProfiniteInt":
        m = min(self.level, other.level)
        return ProfiniteInt(self.residue + other.residue, m)

    def __mul__(self, other: "ProfiniteInt") -> "ProfiniteInt":
        m = min(self.level, other.level)
        return ProfiniteInt(self.residue * other.residue, m)

    def __neg__(self) -> "ProfiniteInt":
        return ProfiniteInt(-self.residue, self.level)

    def __sub__(self, other: "ProfiniteInt") -> "ProfiniteInt":
        return self + (-other)

    def to_residue(self, n: int) -> int:
        """The value modulo n; defined only when n divides (m+1)!."""
        if n < 1:
            raise ValidationError(f"modulus must be positive, got {n}")
        if self.modulus % n != 0:
            raise InsufficientPrecision(f"{n} does not divide {self.level + 1}!")
        return self.residue % n

    @classmethod
    def from_residues(cls, pairs, level: int = DEFAULT_LEVEL) -> "ProfiniteInt":
        """CRT lift of (residue, modulus) pairs with pairwise coprime moduli."""
        pairs = list(pairs)
        moduli = [n for _, n in pairs]
        for i in range(len(moduli)):
            for j in range(i + 1, len(moduli)):
                if math.gcd(moduli[i], moduli[j]) != 1:
                    raise IncompatibleResidues(f"moduli {moduli[i]} and {moduli[j]} share a factor")
        product = math.prod(moduli) if moduli else 1
        if math.factorial(level + 1) % product != 0:
            raise InsufficientPrecision(f"{product} does not divide {level + 1}!")
        x = 0
        for r, n in pairs:
            q = product // n
            x += r * q * pow(q, -1, n)
        return cls(x % product, level)

    def max_precision(self, q: int) -> int:
        """The largest k with q^k dividing (m+1)!."""
        k = 0
        m = self.modulus
        while m % q == 0:
            m //= q
            k += 1
        return k

    def component_at(self, q: int, k: int = DEFAULT_PRECISION) -> PadicNumber:
        """The Z_q coordinate under Z-hat = prod_q Z_q, to absolute precision k."""
        r = self.to_residue(q ** k)
        if r == 0:
            return PadicNumber.zero(q, k)
        v = 0
        while r % q == 0:
            r //= q
            v += 1
        return PadicNumber(q, v, r % q ** (k - v), k - v)

    def project_to_sigma(self, sigma: PrimeSet, k: int = DEFAULT_PRECISION) -> "SigmaAdicInt":
        if sigma.is_all:
            return SigmaAdicInt(sigma=sigma, tail=self)
        parts = {p: self.component_at(p, k) for p in sigma}
        return SigmaAdicInt(sigma=sigma, parts=parts)

    def __str__(self) -> str:
        return "fact[" + ",".join(str(c) for c in self.digits) + "]"


@dataclass(frozen=True)
class SigmaAdicInt:
    """An element of Z_Sigma = prod over Sigma of Z_q.

    Finite Sigma stores one integral p-adic component per prime; the
    all-primes ring is a truncated profinite integer.
    """

    sigma: PrimeSet
    parts: Mapping[int, PadicNumber] | None = None
    tail: ProfiniteInt | None = None

    def __post_init__(self):
        if self.sigma.is_all:
            if self.tail is None or self.parts is not None:
                raise ValidationError("all-primes Sigma-adic integers are profinite tails")
        else:
            if self.parts is None or self.tail is not None:
                raise ValidationError("finite Sigma-adic integers are component maps")
            parts = dict(self.parts)
            if set(parts) != set(self.sigma.primes):
                raise ValidationError(f"components keyed {sorted(parts)} but Sigma is {self.sigma}")
            for p, x in parts.items():
                if x.p != p:
                    raise ValidationError(f"component at {p} lives over prime {x.p}")
                if not x.is_zero and x.val < 0:
                    raise ValidationError(f"component at {p} has negative valuation")
            object.__setattr__(self, "parts", parts)

    def __hash__(self):
        if self.parts is None:
            return hash((self.sigma, self.tail))
        return hash((self.sigma, tuple(sorted(self.parts.items()))))

    def component(self, p: int, k: int = DEFAULT_PRECISION) -> PadicNumber:
        if self.sigma.is_all:
            return self.tail.component_at(p, k)
        return self.parts[p]

    def __str__(self) -> str:
        if self.sigma.is_all:
            return str(self.tail)
        return "(" + ", ".join(f"{p}: {x}" for p, x in sorted(self.parts.items())) + ")"
