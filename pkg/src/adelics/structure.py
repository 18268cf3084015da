"""Symbolic locally compact Z[1/S]-modules and their canonical forms.

Modules are finite products drawn from a closed atom vocabulary.  Within
that vocabulary isomorphism is decidable by sorting, finite cyclic
factors being split into coprime prime-power parts first.  The three
canonical decompositions below separate the self-dual adelic part from
the residue and certify the result with classification flags computed by
two independent routes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import (
    HasSmallSubmodules,
    InvalidExpression,
    NotCompactlyGenerated,
    ValidationError,
)
from .localization import PrimeSet, factorize, is_prime

# atom kinds, in canonical sort order
REAL = "R"
PADIC_FIELD = "Qp"
PADIC_INTEGERS = "Zp"
FINITE_CYCLIC = "Z/"
FREE_RANK_ONE = "ZS"
SOLENOID = "Sol"
PRUFER = "Pruf"
RATIONAL_DISCRETE = "Qd"
RATIONAL_SOLENOID = "QSol"

_KIND_ORDER = [REAL, PADIC_FIELD, PADIC_INTEGERS, FINITE_CYCLIC, FREE_RANK_ONE,
               SOLENOID, PRUFER, RATIONAL_DISCRETE, RATIONAL_SOLENOID]
_PARAMETRIC = {PADIC_FIELD, PADIC_INTEGERS, PRUFER, FINITE_CYCLIC}


@dataclass(frozen=True, order=False)
class ModuleAtom:
    kind: str
    param: int | None = None

    def __post_init__(self):
        if self.kind not in _KIND_ORDER:
            raise ValidationError(f"unknown atom kind {self.kind!r}")
        if self.kind in _PARAMETRIC:
            if self.param is None:
                raise ValidationError(f"atom {self.kind} needs a parameter")
            if self.kind == FINITE_CYCLIC:
                if self.param < 2:
                    raise ValidationError(f"finite cyclic order must be >= 2, got {self.param}")
            elif not is_prime(self.param):
                raise ValidationError(f"{self.param} is not prime")
        elif self.param is not None:
            raise ValidationError(f"atom {self.kind} takes no parameter")

    def sort_key(self):
        return (_KIND_ORDER.index(self.kind), self.param or 0)

    def __str__(self) -> str:
        if self.kind == FINITE_CYCLIC:
            return f"Z/{self.param}"
        if self.kind in _PARAMETRIC:
            return f"{self.kind}({self.param})"
        return self.kind


def real() -> ModuleAtom:
    return ModuleAtom(REAL)


def padic_field(p: int) -> ModuleAtom:
    return ModuleAtom(PADIC_FIELD, p)


def padic_integers(q: int) -> ModuleAtom:
    return ModuleAtom(PADIC_INTEGERS, q)


def finite_cyclic(m: int) -> ModuleAtom:
    return ModuleAtom(FINITE_CYCLIC, m)


def free_rank_one() -> ModuleAtom:
    return ModuleAtom(FREE_RANK_ONE)


def solenoid() -> ModuleAtom:
    return ModuleAtom(SOLENOID)


def prufer(q: int) -> ModuleAtom:
    return ModuleAtom(PRUFER, q)


def rational_discrete() -> ModuleAtom:
    return ModuleAtom(RATIONAL_DISCRETE)


def rational_solenoid() -> ModuleAtom:
    return ModuleAtom(RATIONAL_SOLENOID)


@dataclass(frozen=True)
class ModuleExpr:
    """A sorted multiset of (atom, exponent) factors over a prime set."""

    sigma: PrimeSet
    factors: tuple[tuple[ModuleAtom, int], ...]

    @classmethod
    def build(cls, sigma: PrimeSet, pairs: Iterable[tuple[ModuleAtom, int]]) -> "ModuleExpr":
        counts: dict[ModuleAtom, int] = {}
        for atom, exp in pairs:
            if exp < 1:
                raise ValidationError(f"exponent must be >= 1, got {exp}")
            if atom.kind == FINITE_CYCLIC:
                # split into coprime prime-power parts: Z/mn = Z/m x Z/n
                for p, e in factorize(atom.param).items():
                    piece = finite_cyclic(p ** e)
                    counts[piece] = counts.get(piece, 0) + exp
            else:
                counts[atom] = counts.get(atom, 0) + exp
        ordered = tuple(sorted(counts.items(), key=lambda it: it[0].sort_key()))
        return cls(sigma, ordered)

    @classmethod
    def product_of(cls, sigma: PrimeSet, atoms: Iterable[ModuleAtom]) -> "ModuleExpr":
        return cls.build(sigma, [(a, 1) for a in atoms])

    @property
    def is_trivial(self) -> bool:
        return not self.factors

    def atoms(self) -> Iterable[tuple[ModuleAtom, int]]:
        return self.factors

    def exponent_of(self, atom: ModuleAtom) -> int:
        for a, e in self.factors:
            if a == atom:
                return e
        return 0

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        pieces = []
        for atom, exp in self.factors:
            pieces.append(str(atom) if exp == 1 else f"{atom}^{exp}")
        return " x ".join(pieces)


# -- validity -----------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    atom: ModuleAtom
    property: str  # "S-torsion" or "S-divisibility"
    witness: str

    def __str__(self) -> str:
        return f"{self.atom}: violates {self.property} ({self.witness})"


def _atom_violation(atom: ModuleAtom, sigma: PrimeSet) -> Violation | None:
    if atom.kind == PADIC_INTEGERS:
        q = atom.param
        if q in sigma:
            return Violation(atom, "S-divisibility", f"{q}*Z_{q} = {q}Z_{q} is a proper subgroup")
    elif atom.kind == PRUFER:
        q = atom.param
        if q in sigma:
            return Violation(atom, "S-torsion", f"elements of order {q} are killed by {q} in S")
    elif atom.kind == FINITE_CYCLIC:
        for p in factorize(atom.param):
            if p in sigma:
                return Violation(atom, "S-torsion", f"{p} in Sigma divides the order {atom.param}")
    return None


def validate(expr: ModuleExpr) -> list[Violation]:
    """Violation list (empty iff the expression is a Z[1/S]-module)."""
    out = []
    for atom, _ in expr.factors:
        v = _atom_violation(atom, expr.sigma)
        if v is not None:
            out.append(v)
    return out


def _require_valid(expr: ModuleExpr):
    violations = validate(expr)
    if violations:
        raise InvalidExpression(violations)


# -- duality functor ----------------------------------------------------

def dual_atom(atom: ModuleAtom) -> ModuleAtom:
    if atom.kind == PADIC_INTEGERS:
        return prufer(atom.param)
    if atom.kind == PRUFER:
        return padic_integers(atom.param)
    if atom.kind == FREE_RANK_ONE:
        return solenoid()
    if atom.kind == SOLENOID:
        return free_rank_one()
    if atom.kind == RATIONAL_DISCRETE:
        return rational_solenoid()
    if atom.kind == RATIONAL_SOLENOID:
        return rational_discrete()
    return atom  # Real, PadicField, FiniteCyclic are self-dual


def dual(expr: ModuleExpr) -> ModuleExpr:
    """Atomwise Pontryagin dual; an involution on valid expressions."""
    _require_valid(expr)
    return ModuleExpr.build(expr.sigma, [(dual_atom(a), e) for a, e in expr.factors])


# -- classification -----------------------------------------------------

_FLAGS = ("compact", "discrete", "connected", "totally_disconnected",
          "elliptic", "compactly_generated", "nss", "divisible")


@dataclass(frozen=True)
class ClassificationReport:
    valid: bool
    compact: bool
    discrete: bool
    connected: bool
    totally_disconnected: bool
    elliptic: bool
    compactly_generated: bool
    nss: bool
    divisible: bool
    lie_type: str = "unknown"  # "unknown" when nss holds, "no" otherwise

    def as_dict(self) -> dict:
        d = {name: getattr(self, name) for name in ("valid",) + _FLAGS}
        d["lie_type"] = self.lie_type
        return d


def _atom_flags(atom: ModuleAtom, sigma: PrimeSet) -> dict[str, bool]:
    """Hard-coded per-atom facts; cross-checked by the duality route."""
    k = atom.kind
    if k == REAL:
        return dict(compact=False, discrete=False, connected=True,
                    totally_disconnected=False, elliptic=False,
                    compactly_generated=True, divisible=True)
    if k == PADIC_FIELD:
        return dict(compact=False, discrete=False, connected=False,
                    totally_disconnected=True, elliptic=True,
                    compactly_generated=atom.param in sigma, divisible=True)
    if k == PADIC_INTEGERS:
        return dict(compact=True, discrete=False, connected=False,
                    totally_disconnected=True, elliptic=True,
                    compactly_generated=True, divisible=False)
    if k == FINITE_CYCLIC:
        return dict(compact=True, discrete=True, connected=False,
                    totally_disconnected=True, elliptic=True,
                    compactly_generated=True, divisible=False)
    if k == FREE_RANK_ONE:
        # Z[1/S] as a discrete module; Q when Sigma is all primes
        return dict(compact=False, discrete=True, connected=False,
                    totally_disconnected=True, elliptic=False,
                    compactly_generated=True, divisible=sigma.is_all)
    if k == SOLENOID:
        return dict(compact=True, discrete=False, connected=True,
                    totally_disconnected=False, elliptic=True,
                    compactly_generated=True, divisible=True)
    if k == PRUFER:
        return dict(compact=False, discrete=True, connected=False,
                    totally_disconnected=True, elliptic=True,
                    compactly_generated=False, divisible=True)
    if k == RATIONAL_DISCRETE:
        # Q needs infinitely many denominators: compactly generated only over Q itself
        return dict(compact=False, discrete=True, connected=False,
                    totally_disconnected=True, elliptic=False,
                    compactly_generated=sigma.is_all, divisible=True)
    if k == RATIONAL_SOLENOID:
        return dict(compact=True, discrete=False, connected=True,
                    totally_disconnected=False, elliptic=True,
                    compactly_generated=True, divisible=True)
    raise ValidationError(f"unknown atom {atom}")


def _atom_nss_direct(atom: ModuleAtom, sigma: PrimeSet) -> bool:
    """No-small-submodules per atom, by a direct rule table."""
    k = atom.kind
    if k in (FINITE_CYCLIC, FREE_RANK_ONE, PRUFER, RATIONAL_DISCRETE):
        return True  # discrete modules have no small submodules
    if k == REAL:
        return True
    if k == PADIC_FIELD:
        # the submodules p^n Z_p shrink into any neighbourhood unless
        # Z[1/S] can rescale them, i.e. unless p is invertible in Z[1/S]
        return atom.param in sigma
    if k == PADIC_INTEGERS:
        return False
    if k == SOLENOID:
        return True
    if k == RATIONAL_SOLENOID:
        return sigma.is_all
    raise ValidationError(f"unknown atom {atom}")


def classify(expr: ModuleExpr) -> ClassificationReport:
    """Per-atom truth tables combined over the product.

    The no-small-submodules flag is computed twice: directly, and as
    compactly_generated of the dual; a disagreement is a table bug.
    """
    _require_valid(expr)
    flags = dict(compact=True, discrete=True, connected=True,
                 totally_disconnected=True, elliptic=True,
                 compactly_generated=True, divisible=True)
    nss_direct = True
    nss_via_dual = True
    for atom, _ in expr.factors:
        af = _atom_flags(atom, expr.sigma)
        for name in flags:
            flags[name] = flags[name] and af[name]
        nss_direct = nss_direct and _atom_nss_direct(atom, expr.sigma)
        d = dual_atom(atom)
        nss_via_dual = nss_via_dual and _atom_flags(d, expr.sigma)["compactly_generated"]
    if nss_direct != nss_via_dual:
        raise AssertionError(
            f"nss tables disagree on {expr}: direct={nss_direct}, dual route={nss_via_dual}"
        )
    return ClassificationReport(
        valid=True, nss=nss_direct,
        lie_type="unknown" if nss_direct else "no",
        **flags,
    )


# -- canonical decompositions ------------------------------------------

@dataclass(frozen=True)
class CanonicalDecomposition:
    real_rank: int                           # n
    padic_ranks: dict[int, int]              # n_p for p in Sigma
    n_part: ModuleExpr | None = None         # 1st form residue N
    compact_open_witness: ModuleExpr | None = None
    free_rank: int | None = None             # 2nd form k
    compact_part: ModuleExpr | None = None   # 2nd form K
    solenoid_rank: int | None = None         # 3rd form k
    discrete_part: ModuleExpr | None = None  # 3rd form D
    discrete_rank: int | None = None         # Q-vector-space form |I|

    def adelic_dict(self) -> dict:
        return {"n": self.real_rank, "np": dict(sorted(self.padic_ranks.items()))}


def _split_adelic(expr: ModuleExpr):
    """Separate Real and Q_p (p in Sigma) factors from the rest."""
    n = 0
    np: dict[int, int] = {}
    rest = []
    for atom, exp in expr.factors:
        if atom.kind == REAL:
            n += exp
        elif atom.kind == PADIC_FIELD and atom.param in expr.sigma:
            np[atom.param] = np.get(atom.param, 0) + exp
        else:
            rest.append((atom, exp))
    return n, np, rest


_COMPACT_KINDS = {PADIC_INTEGERS, FINITE_CYCLIC, SOLENOID, RATIONAL_SOLENOID}
_DISCRETE_KINDS = {FINITE_CYCLIC, FREE_RANK_ONE, PRUFER, RATIONAL_DISCRETE}


def decompose_first(expr: ModuleExpr) -> CanonicalDecomposition:
    """First canonical form: adelic part x residue with a compact open witness.

    The witness replaces each non-adelic p-adic field factor by its ring
    of integers and drops discrete factors; its totally disconnected
    quotient then only involves atoms prime to Sigma.
    """
    _require_valid(expr)
    n, np, rest = _split_adelic(expr)
    n_part = ModuleExpr.build(expr.sigma, rest)
    witness_factors = []
    for atom, exp in rest:
        if atom.kind == PADIC_FIELD:  # p outside Sigma here
            witness_factors.append((padic_integers(atom.param), exp))
        elif atom.kind in _COMPACT_KINDS:
            witness_factors.append((atom, exp))
        # discrete atoms contribute nothing to the compact open witness
    witness = ModuleExpr.build(expr.sigma, witness_factors)
    return CanonicalDecomposition(
        real_rank=n, padic_ranks=np, n_part=n_part, compact_open_witness=witness,
    )


def witness_quotient(expr: ModuleExpr) -> ModuleExpr:
    """The discrete quotient n_part / witness of the first decomposition."""
    _require_valid(expr)
    _, _, rest = _split_adelic(expr)
    quotient = []
    for atom, exp in rest:
        if atom.kind == PADIC_FIELD:
            quotient.append((prufer(atom.param), exp))
        elif atom.kind in _DISCRETE_KINDS and atom.kind != FINITE_CYCLIC:
            quotient.append((atom, exp))
        elif atom.kind == FINITE_CYCLIC:
            pass  # kept whole inside the witness
    return ModuleExpr.build(expr.sigma, quotient)


def decompose_second(expr: ModuleExpr) -> CanonicalDecomposition:
    """Second canonical form A x Z[1/S]^k x K for compactly generated modules."""
    _require_valid(expr)
    report = classify(expr)
    if not report.compactly_generated:
        for atom, _ in expr.factors:
            if not _atom_flags(atom, expr.sigma)["compactly_generated"]:
                raise NotCompactlyGenerated(atom)
    n, np, rest = _split_adelic(expr)
    k = 0
    compact_factors = []
    for atom, exp in rest:
        if atom.kind == FREE_RANK_ONE or (expr.sigma.is_all and atom.kind == RATIONAL_DISCRETE):
            k += exp  # Z[1/S] = Q when Sigma is all primes
        else:
            compact_factors.append((atom, exp))
    return CanonicalDecomposition(
        real_rank=n, padic_ranks=np, free_rank=k,
        compact_part=ModuleExpr.build(expr.sigma, compact_factors),
    )


def decompose_third(expr: ModuleExpr) -> CanonicalDecomposition:
    """Third canonical form A x dual(Z[1/S])^k x D for NSS modules."""
    _require_valid(expr)
    report = classify(expr)
    if not report.nss:
        for atom, _ in expr.factors:
            if not _atom_nss_direct(atom, expr.sigma):
                raise HasSmallSubmodules(atom)
    n, np, rest = _split_adelic(expr)
    k = 0
    discrete_factors = []
    for atom, exp in rest:
        if atom.kind == SOLENOID or (expr.sigma.is_all and atom.kind == RATIONAL_SOLENOID):
            k += exp  # dual(Z[1/S]) is the rational solenoid when Sigma is all primes
        else:
            discrete_factors.append((atom, exp))
    d = ModuleExpr.build(expr.sigma, discrete_factors)
    # C(D) = T(D): the compact elements of the discrete part are exactly
    # its torsion atoms, and those must be prime to Sigma
    for atom, _ in d.factors:
        if atom.kind in (FINITE_CYCLIC, PRUFER):
            if _atom_violation(atom, expr.sigma) is not None:
                raise AssertionError(f"torsion atom {atom} not prime to Sigma")
    return CanonicalDecomposition(
        real_rank=n, padic_ranks=np, solenoid_rank=k, discrete_part=d,
    )


def classify_q_vector_space(expr: ModuleExpr) -> CanonicalDecomposition:
    """Normal form of a locally compact Q-vector space (Sigma = all primes)."""
    if not expr.sigma.is_all:
        raise ValidationError("Q-vector-space classification needs Sigma = all primes")
    _require_valid(expr)
    n, np, rest = _split_adelic(expr)
    discrete_rank = 0
    solenoid_rank = 0
    for atom, exp in rest:
        if atom.kind in (RATIONAL_DISCRETE, FREE_RANK_ONE):
            discrete_rank += exp  # Z[1/S] = Q here
        elif atom.kind in (RATIONAL_SOLENOID, SOLENOID):
            solenoid_rank += exp
        else:
            raise InvalidExpression(
                [Violation(atom, "S-torsion", "not a Q-vector space atom")]
            )
    return CanonicalDecomposition(
        real_rank=n, padic_ranks=np,
        discrete_rank=discrete_rank, solenoid_rank=solenoid_rank,
    )
