"""Exception hierarchy shared by all adelics modules."""


class AdelicsError(Exception):
    """Base class for all errors raised by this package."""


class DenominatorNotInS(AdelicsError):
    """A denominator has a prime factor outside the chosen prime set."""


class MixedPrimeSets(AdelicsError):
    """Two operands were built over different prime sets."""


class MixedPrimes(AdelicsError):
    """Two p-adic operands live over different primes."""


class DivisionByZero(AdelicsError, ZeroDivisionError):
    """Inversion of an (exactly) zero p-adic value."""


class InsufficientPrecision(AdelicsError):
    """The requested digits lie beyond the stored precision."""


class IncompatibleResidues(AdelicsError):
    """CRT input moduli are not pairwise coprime."""


class ComponentPrimeOutsideSigma(AdelicsError):
    """A component map mentions a prime not in the prime set."""


class PrimeOutsideSigma(AdelicsError):
    """A per-prime operation was asked at a prime outside the prime set."""


class UnsupportedSigma(AdelicsError):
    """Operation is not defined in all-primes mode (e.g. idempotent sums)."""


class AtomMismatch(AdelicsError):
    """A character or element was used with the wrong module atom."""


class UnsupportedAtom(AdelicsError):
    """Subgroup-lattice operation on an atom outside the supported lattice."""


class InvalidExpression(AdelicsError):
    """A module expression fails validation over its prime set."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class NotCompactlyGenerated(AdelicsError):
    """Second-form decomposition requested for a non-compactly-generated module."""

    def __init__(self, atom):
        self.atom = atom
        super().__init__(f"not compactly generated because of factor {atom}")


class HasSmallSubmodules(AdelicsError):
    """Third-form decomposition requested for a module with small submodules."""

    def __init__(self, atom):
        self.atom = atom
        super().__init__(f"has small submodules because of factor {atom}")


class ParseError(AdelicsError):
    """Syntax error in the expression grammar.

    Carries the byte offset of the failure and the set of tokens that
    would have been accepted there.
    """

    def __init__(self, offset, expected, message=None):
        self.offset = offset
        self.expected = tuple(expected)
        text = message or f"parse error at offset {offset}, expected one of {', '.join(self.expected)}"
        super().__init__(text)


class ValidationError(AdelicsError):
    """Semantically invalid input (e.g. a non-prime where a prime is required)."""
