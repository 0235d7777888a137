"""Text grammar for tropical Laurent polynomials.

    poly   := "-inf" | term ("+" term)*
    term   := coeff | (coeff "*")? factor ("*" factor)*
    factor := VAR ("^" INT)?
    coeff  := INT | INT "/" INT

``+`` is the tropical sum (max), ``*`` the tropical product (ordinary
addition of exponents and coefficients) and ``^`` the tropical power.
Variables are ``x1`` .. ``xn``; with one variable ``x`` is accepted too.
"""

import re
from fractions import Fraction

from .core import TropPoly
from .errors import ParseError

_TOKEN = re.compile(r"\s*(?:(?P<num>-?\d+)|(?P<var>[A-Za-z_]\w*)|(?P<op>[+*^/]))")


def _tokens(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            bad = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), start))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str, n: int):
        self.text = text
        self.n = n
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def where(self) -> int:
        tok = self.peek()
        return tok[2] if tok else len(self.text)

    def take(self, kind: str, value=None):
        tok = self.peek()
        if tok is None or tok[0] != kind or (value is not None and tok[1] != value):
            want = value or {"num": "a number", "var": "a variable"}.get(kind, kind)
            got = "end of input" if tok is None else repr(tok[1])
            raise ParseError(f"expected {want}, found {got}", self.where())
        self.i += 1
        return tok

    def at(self, kind: str, value=None) -> bool:
        tok = self.peek()
        return tok is not None and tok[0] == kind and (value is None or tok[1] == value)

    def variable(self, name: str, pos: int) -> int:
        if self.n == 1 and name == "x":
            return 0
        m = re.fullmatch(r"x(\d+)", name)
        if m is None:
            raise ParseError(f"unknown variable {name!r}", pos)
        k = int(m.group(1))
        if not 1 <= k <= self.n:
            raise ParseError(f"variable {name!r} outside x1..x{self.n}", pos)
        return k - 1

    def coeff(self) -> Fraction:
        num = int(self.take("num")[1])
        if self.at("op", "/"):
            self.i += 1
            _, den, pos = self.take("num")
            if int(den) == 0:
                raise ParseError("zero denominator", pos)
            if den[0] == "-":
                raise ParseError("signed denominator", pos)
            return Fraction(num, int(den))
        return Fraction(num)

    def factor(self, exp: list) -> None:
        _, name, pos = self.take("var")
        k = self.variable(name, pos)
        power = 1
        if self.at("op", "^"):
            self.i += 1
            power = int(self.take("num")[1])
        exp[k] += power

    def term(self) -> tuple[tuple[int, ...], Fraction]:
        exp = [0] * self.n
        c = Fraction(0)
        if self.at("num"):
            c = self.coeff()
            if not self.at("op", "*"):
                return tuple(exp), c
            self.i += 1
        self.factor(exp)
        while self.at("op", "*"):
            self.i += 1
            if self.at("num"):
                raise ParseError("coefficient must come first in a term", self.where())
            self.factor(exp)
        return tuple(exp), c

    def poly(self) -> TropPoly:
        if not self.toks:
            raise ParseError("empty expression", 0)
        terms = [self.term()]
        while self.at("op", "+"):
            self.i += 1
            terms.append(self.term())
        if self.peek() is not None:
            raise ParseError(f"unexpected {self.peek()[1]!r}", self.where())
        return TropPoly(self.n, terms)


def parse_poly(text: str, n: int) -> TropPoly:
    if not isinstance(text, str):
        raise ParseError("expression must be a string")
    if n < 1:
        raise ParseError("at least one variable is required")
    if text.strip() == "-inf":
        return TropPoly.neg_inf(n)
    return _Parser(text, n).poly()


def format_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _var(n: int, i: int) -> str:
    return "x" if n == 1 else f"x{i + 1}"


def render_term(n: int, exp, c) -> str:
    factors = []
    for i, e in enumerate(exp):
        if e == 1:
            factors.append(_var(n, i))
        elif e:
            factors.append(f"{_var(n, i)}^{e}")
    if not factors:
        return format_rational(c)
    body = "*".join(factors)
    return body if c == 0 else f"{format_rational(c)}*{body}"


def render_poly(f: TropPoly) -> str:
    """Text form with terms in lexicographic exponent order; parse_poly inverts it."""
    if f.is_neg_inf():
        return "-inf"
    return " + ".join(render_term(f.n, e, c) for e, c in f.items())
