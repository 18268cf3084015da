"""Parser and printer for the module-expression grammar.

    expr   := factor ('x' factor)*
    factor := atom ('^' INT)?
    atom   := 'R' | 'Qp(' INT ')' | 'Zp(' INT ')' | 'Z/' INT | 'ZS'
            | 'Sol' | 'Pruf(' INT ')' | 'Qd' | 'QSol'

Whitespace-insensitive; '^1' is optional.  Parse errors carry the byte
offset and the set of expected tokens.
"""

from __future__ import annotations

import re

from .errors import ParseError
from .localization import PrimeSet
from .structure import (
    ModuleAtom,
    ModuleExpr,
    finite_cyclic,
    free_rank_one,
    padic_field,
    padic_integers,
    prufer,
    rational_discrete,
    rational_solenoid,
    real,
    solenoid,
)

_TOKEN_RE = re.compile(
    r"""
      (?P<QSOL>QSol)
    | (?P<QD>Qd)
    | (?P<QP>Qp\()
    | (?P<ZS>ZS)
    | (?P<ZP>Zp\()
    | (?P<ZMOD>Z/)
    | (?P<SOL>Sol)
    | (?P<PRUF>Pruf\()
    | (?P<R>R)
    | (?P<INT>\d+)
    | (?P<RPAREN>\))
    | (?P<CARET>\^)
    | (?P<TIMES>x)
    | (?P<WS>\s+)
    """,
    re.VERBOSE,
)

_ATOM_TOKENS = ("R", "Qp(", "Zp(", "Z/", "ZS", "Sol", "Pruf(", "Qd", "QSol")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(pos, _ATOM_TOKENS, f"unexpected character {text[pos]!r} at offset {pos}")
        if m.lastgroup != "WS":
            out.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def _peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, "", len(self.text))

    def _take(self, kind: str, expected):
        tok = self._peek()
        if tok[0] != kind:
            raise ParseError(tok[2], expected)
        self.i += 1
        return tok

    def parse(self, sigma: PrimeSet) -> ModuleExpr:
        pairs = []
        if self.i < len(self.tokens):
            pairs.append(self._factor())
            while self._peek()[0] == "TIMES":
                self.i += 1
                pairs.append(self._factor())
        tok = self._peek()
        if tok[0] is not None:
            raise ParseError(tok[2], ("x", "end of input"))
        return ModuleExpr.build(sigma, pairs)

    def _factor(self):
        atom = self._atom()
        exp = 1
        if self._peek()[0] == "CARET":
            self.i += 1
            exp = int(self._take("INT", ("INT",))[1])
        return atom, exp

    def _atom(self) -> ModuleAtom:
        kind, _, offset = self._peek()
        simple = {"R": real, "ZS": free_rank_one, "SOL": solenoid,
                  "QD": rational_discrete, "QSOL": rational_solenoid}
        if kind in simple:
            self.i += 1
            return simple[kind]()
        paren = {"QP": padic_field, "ZP": padic_integers, "PRUF": prufer}
        if kind in paren:
            self.i += 1
            n = int(self._take("INT", ("INT",))[1])
            self._take("RPAREN", (")",))
            return paren[kind](n)
        if kind == "ZMOD":
            self.i += 1
            return finite_cyclic(int(self._take("INT", ("INT",))[1]))
        raise ParseError(offset, _ATOM_TOKENS)


def parse_expr(text: str, sigma: PrimeSet) -> ModuleExpr:
    """Parse a module expression over the given prime set."""
    return _Parser(text).parse(sigma)


def format_expr(expr: ModuleExpr) -> str:
    """Canonical text form; parse(format(E)) == E."""
    return str(expr) if expr.factors else ""
