"""Command-line front end.

Exit codes: 0 success, 1 parse error, 2 validation failure.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import structure
from .adele import Adele, FiniteAdele
from .duality import Character
from .errors import AdelicsError, ParseError, ValidationError
from .exprgrammar import format_expr, parse_expr
from .localization import PrimeSet
from .padic import DEFAULT_PRECISION, PadicNumber
from .profinite import DEFAULT_LEVEL, ProfiniteInt
from .structure import (
    classify,
    classify_q_vector_space,
    decompose_first,
    decompose_second,
    decompose_third,
    dual,
    validate,
)

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_INVALID = 2


# -- report building ----------------------------------------------------

def _np_json(np: dict) -> dict:
    return {str(p): e for p, e in sorted(np.items())}


def full_report(expr) -> dict:
    """The published JSON schema for one expression."""
    report = {"sigma": str(expr.sigma)}
    violations = validate(expr)
    if violations:
        report["valid"] = False
        report["violations"] = [str(v) for v in violations]
        return report
    report["valid"] = True
    flags = classify(expr).as_dict()
    flags.pop("valid")
    report["flags"] = flags
    first = decompose_first(expr)
    report["first"] = {
        "n": first.real_rank,
        "np": _np_json(first.padic_ranks),
        "n_part": format_expr(first.n_part),
        "witness": format_expr(first.compact_open_witness),
    }
    try:
        second = decompose_second(expr)
        report["second"] = {
            "n": second.real_rank,
            "np": _np_json(second.padic_ranks),
            "k": second.free_rank,
            "compact_part": format_expr(second.compact_part),
        }
    except AdelicsError:
        report["second"] = None
    try:
        third = decompose_third(expr)
        report["third"] = {
            "n": third.real_rank,
            "np": _np_json(third.padic_ranks),
            "k": third.solenoid_rank,
            "discrete_part": format_expr(third.discrete_part),
        }
    except AdelicsError:
        report["third"] = None
    return report


# -- adele arithmetic expressions ---------------------------------------

_ADELE_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<op>[-+*(),:|]))")


class _AdeleEval:
    """expr := term (('+'|'-') term)* ; term := prim ('*' prim)* ;
    prim := rational | '(' real '|' p ':' val , ... ')' | '(' expr ')'"""

    def __init__(self, text: str, sigma: PrimeSet, prec: int):
        self.text = text
        self.sigma = sigma
        self.prec = prec
        self.pos = 0

    def _next(self, peek=False):
        m = _ADELE_TOKEN.match(self.text, self.pos)
        if m is None:
            if self.text[self.pos:].strip():
                raise ParseError(self.pos, ("rational", "operator"))
            return None
        if not peek:
            self.pos = m.end()
        return m.group("num") or m.group("op")

    def parse(self) -> Adele:
        value = self._expr()
        if self._next(peek=True) is not None:
            raise ParseError(self.pos, ("end of input",))
        return value

    def _expr(self) -> Adele:
        value = self._term()
        while True:
            tok = self._next(peek=True)
            if tok in ("+", "-"):
                self._next()
                rhs = self._term()
                value = value + rhs if tok == "+" else value - rhs
            else:
                return value

    def _term(self) -> Adele:
        value = self._prim()
        while self._next(peek=True) == "*":
            self._next()
            value = value * self._prim()
        return value

    def _prim(self) -> Adele:
        tok = self._next()
        if tok is None:
            raise ParseError(self.pos, ("rational", "("))
        if tok == "-":
            return -self._prim()
        if tok == "(":
            # scan ahead for '|' before the matching ')': adele literal
            depth, j, literal = 1, self.pos, False
            while j < len(self.text) and depth:
                if self.text[j] == "(":
                    depth += 1
                elif self.text[j] == ")":
                    depth -= 1
                elif self.text[j] == "|" and depth == 1:
                    literal = True
                j += 1
            if literal:
                return self._literal()
            value = self._expr()
            if self._next() != ")":
                raise ParseError(self.pos, (")",))
            return value
        if tok and tok[0].isdigit():
            return Adele.diagonal(Fraction(tok), self.sigma, self.prec)
        raise ParseError(self.pos, ("rational", "("))

    def _literal(self) -> Adele:
        real = Fraction(self._expect_num())
        if self._next() != "|":
            raise ParseError(self.pos, ("|",))
        comps = {}
        tok = self._next(peek=True)
        if tok != ")":
            while True:
                p = int(self._expect_num())
                if self._next() != ":":
                    raise ParseError(self.pos, (":",))
                negate = False
                if self._next(peek=True) == "-":
                    self._next()
                    negate = True
                value = Fraction(self._expect_num())
                comps[p] = -value if negate else value
                tok = self._next()
                if tok == ")":
                    break
                if tok != ",":
                    raise ParseError(self.pos, (",", ")"))
        else:
            self._next()
        if not self.sigma.is_all and set(comps) != set(self.sigma.primes):
            raise ValidationError(
                f"adele literal must give a component for every prime of {self.sigma}"
            )
        padic = {p: PadicNumber.from_fraction(v, p, self.prec) for p, v in comps.items()}
        if self.sigma.is_all:
            finite = FiniteAdele.make(padic, self.sigma, tail=ProfiniteInt.from_int(0))
        else:
            finite = FiniteAdele.make(padic, self.sigma)
        return Adele(real=real, finite=finite)

    def _expect_num(self) -> str:
        tok = self._next()
        if tok is None or not tok[0].isdigit():
            raise ParseError(self.pos, ("rational",))
        return tok


# -- subcommands --------------------------------------------------------

def _emit(args, payload: dict, human: str):
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(human)


def _sigma(args) -> PrimeSet:
    return PrimeSet.parse(args.sigma)


def _cmd_classify(args) -> int:
    expr = parse_expr(args.expr, _sigma(args))
    report = full_report(expr)
    if not report["valid"]:
        _emit(args, report, "invalid:\n  " + "\n  ".join(report["violations"]))
        return EXIT_INVALID
    lines = [f"{name} = {value}" for name, value in report["flags"].items()]
    _emit(args, report, "\n".join(lines))
    return EXIT_OK


def _cmd_dual(args) -> int:
    expr = parse_expr(args.expr, _sigma(args))
    d = dual(expr)
    _emit(args, {"sigma": str(expr.sigma), "dual": format_expr(d)}, format_expr(d) or "1")
    return EXIT_OK


def _cmd_decompose(args) -> int:
    sigma = _sigma(args)
    expr = parse_expr(args.expr, sigma)
    if args.which == "q":
        d = classify_q_vector_space(expr)
        payload = {"sigma": str(sigma), "adelic": d.adelic_dict(),
                   "discrete_rank": d.discrete_rank, "solenoid_rank": d.solenoid_rank}
        _emit(args, payload,
              f"adelic n={d.real_rank} np={_np_json(d.padic_ranks)} "
              f"I-rank={d.discrete_rank} J-rank={d.solenoid_rank}")
        return EXIT_OK
    report = full_report(expr)
    if not report["valid"]:
        _emit(args, report, "invalid:\n  " + "\n  ".join(report["violations"]))
        return EXIT_INVALID
    key = {"1": "first", "2": "second", "3": "third"}[args.which]
    part = report[key]
    if part is None:
        which_error = {
            "second": "not compactly generated",
            "third": "has small submodules",
        }[key]
        _emit(args, {**report, "error": which_error}, which_error)
        return EXIT_INVALID
    _emit(args, report, json.dumps(part))
    return EXIT_OK


def _cmd_adele(args) -> int:
    if args.action != "eval":
        raise ValidationError(f"unknown adele action {args.action!r}")
    sigma = _sigma(args)
    value = _AdeleEval(args.expr, sigma, args.prec).parse()
    payload = {"sigma": str(sigma), "value": str(value),
               "integral": value.finite.is_integral, "s": value.finite.s}
    _emit(args, payload, str(value))
    return EXIT_OK


def _cmd_pair(args) -> int:
    spec = args.atom
    chi_param = Fraction(args.chi)
    x = Fraction(args.x)
    if spec == "R":
        chi = Character(structure.real(), chi_param)
    elif spec.startswith("Qp:"):
        p = int(spec.split(":", 1)[1])
        chi = Character(structure.padic_field(p),
                        PadicNumber.from_fraction(chi_param, p, args.prec))
    elif spec.startswith("Zq:"):
        q = int(spec.split(":", 1)[1])
        chi = Character(structure.padic_integers(q), chi_param)
    elif spec == "ZS":
        sigma = _sigma(args)
        chi = Character(structure.free_rank_one(),
                        Adele.diagonal(chi_param, sigma, args.prec), sigma)
    else:
        raise ValidationError(f"unknown atom spec {spec!r}")
    value = chi.pair(x)
    _emit(args, {"atom": spec, "value": str(value)}, str(value))
    return EXIT_OK


def _cmd_profinite(args) -> int:
    x = ProfiniteInt.from_int(args.value, args.level)
    if args.mod is not None:
        r = x.to_residue(args.mod)
        _emit(args, {"value": str(x), "mod": args.mod, "residue": r}, str(r))
    elif args.component is not None:
        c = x.component_at(args.component, args.prec)
        _emit(args, {"value": str(x), "component": args.component, "padic": str(c)}, str(c))
    else:
        _emit(args, {"value": str(x), "digits": list(x.digits)}, str(x))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="adelics")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, sigma=True):
        if sigma:
            p.add_argument("--sigma", default="primes:", help="primes:2,3 or primes:all")
        p.add_argument("--prec", type=int, default=DEFAULT_PRECISION)
        p.add_argument("--level", type=int, default=DEFAULT_LEVEL)
        p.add_argument("--json", action="store_true")

    p = sub.add_parser("classify")
    p.add_argument("expr")
    common(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("decompose")
    p.add_argument("expr")
    p.add_argument("--which", choices=["1", "2", "3", "q"], default="1")
    common(p)
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("dual")
    p.add_argument("expr")
    common(p)
    p.set_defaults(func=_cmd_dual)

    p = sub.add_parser("adele")
    p.add_argument("action", choices=["eval"])
    p.add_argument("expr")
    common(p)
    p.set_defaults(func=_cmd_adele)

    p = sub.add_parser("pair")
    p.add_argument("--atom", required=True, help="R | Qp:<p> | Zq:<q> | ZS")
    p.add_argument("--chi", required=True)
    p.add_argument("--x", required=True)
    common(p)
    p.set_defaults(func=_cmd_pair)

    p = sub.add_parser("profinite")
    p.add_argument("value", type=int)
    p.add_argument("--mod", type=int)
    p.add_argument("--component", type=int)
    common(p)
    p.set_defaults(func=_cmd_profinite)

    return top


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except AdelicsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main():  # console-script entry point
    sys.exit(run())
