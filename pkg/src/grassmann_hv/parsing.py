"""Text format for multivectors and Laurent coefficients.

Grammar (whitespace-insensitive)::

    expr     := ['+'|'-'] term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := rational | 'eta' ('^' sint)? | 'i' | ident
              | '(' expr ')' | 'exp' '(' expr ')'
    rational := int ('/' int)?
    sint     := ['-'] int

``eta``, ``i`` and ``exp`` are reserved words; any other identifier must
be a generator label of the target algebra.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import AlgebraContext, Multivector, mask_indices, mv_exp
from .scalars import Coefficient, GaussianRational

__all__ = ["ParseError", "parse_mv", "format_mv", "format_coefficient", "format_gaussian"]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S)|$)")


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at offset {position}")
        self.position = position


@dataclass
class _Tok:
    kind: str  # "int", "name", "op", "end"
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.group(1) is not None:
            toks.append(_Tok("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            toks.append(_Tok("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3))
            toks.append(_Tok("op", ch, m.start(3)))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, ctx: AlgebraContext, text: str):
        self.ctx = ctx
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def _accept(self, op: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == op:
            self.i += 1
            return True
        return False

    def _expect(self, op: str):
        if not self._accept(op):
            raise ParseError(f"expected {op!r}", self.tok.pos)

    def _int(self) -> int:
        if self.tok.kind != "int":
            raise ParseError("expected integer", self.tok.pos)
        value = int(self.tok.text)
        self.i += 1
        return value

    def parse(self) -> Multivector:
        result = self.expr()
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos)
        return result

    def expr(self) -> Multivector:
        negate = False
        if self._accept("-"):
            negate = True
        else:
            self._accept("+")
        result = self.term()
        if negate:
            result = -result
        while True:
            if self._accept("+"):
                result = result + self.term()
            elif self._accept("-"):
                result = result - self.term()
            else:
                return result

    def term(self) -> Multivector:
        result = self.factor()
        while self._accept("*"):
            result = result * self.factor()
        return result

    def factor(self) -> Multivector:
        tok = self.tok
        if tok.kind == "int":
            num = self._int()
            if self._accept("/"):
                den = self._int()
                if den == 0:
                    raise ParseError("zero denominator", tok.pos)
                return self.ctx.scalar(Fraction(num, den))
            return self.ctx.scalar(num)
        if tok.kind == "name":
            self.i += 1
            if tok.text == "eta":
                power = 1
                if self._accept("^"):
                    sign = -1 if self._accept("-") else 1
                    power = sign * self._int()
                return self.ctx.scalar(Coefficient({power: 1}))
            if tok.text == "i":
                return self.ctx.scalar(GaussianRational(0, 1))
            if tok.text == "exp":
                self._expect("(")
                arg_pos = self.tok.pos
                arg = self.expr()
                self._expect(")")
                try:
                    return mv_exp(arg)
                except ValueError as exc:
                    raise ParseError(f"exp argument invalid: {exc}", arg_pos) from None
            try:
                return self.ctx.generator(self.ctx.index(tok.text))
            except KeyError:
                raise ParseError(f"unknown generator {tok.text!r}", tok.pos) from None
        if self._accept("("):
            result = self.expr()
            self._expect(")")
            return result
        if tok.kind == "end":
            raise ParseError("unexpected end of input", tok.pos)
        raise ParseError(f"unexpected {tok.text!r}", tok.pos)


def parse_mv(ctx: AlgebraContext, text: str) -> Multivector:
    """Parse ``text`` into a multivector of ``ctx``."""
    return _Parser(ctx, text).parse()


def _join_signed(parts: list[str]) -> str:
    out = parts[0]
    for p in parts[1:]:
        if p.startswith("-"):
            out += " - " + p[1:]
        else:
            out += " + " + p
    return out


def _imag_text(im: Fraction) -> str:
    if im == 1:
        return "i"
    if im == -1:
        return "-i"
    return f"{im}*i"


def format_gaussian(g: GaussianRational) -> str:
    if g.im == 0:
        return str(g.re)
    if g.re == 0:
        return _imag_text(g.im)
    return "(" + _join_signed([str(g.re), _imag_text(g.im)]) + ")"


def _laurent_term(e: int, g: GaussianRational) -> str:
    if e == 0:
        return format_gaussian(g)
    power = "eta" if e == 1 else f"eta^{e}"
    if g == 1:
        return power
    if g == -1:
        return "-" + power
    return f"{format_gaussian(g)}*{power}"


def format_coefficient(c: Coefficient) -> str:
    """Canonical text for a Laurent coefficient, lowest power first."""
    items = c.items()
    if not items:
        return "0"
    parts = [_laurent_term(e, g) for e, g in items]
    if len(parts) == 1:
        return parts[0]
    return "(" + _join_signed(parts) + ")"


def _term_text(ctx: AlgebraContext, mask: int, c: Coefficient) -> str:
    if mask == 0:
        return format_coefficient(c)
    idx = mask_indices(mask)
    gens = "*".join(ctx.names[k] for k in idx)
    if c == 1:
        return gens
    if c == -1:
        return f"-({gens})" if len(idx) > 1 else "-" + gens
    return f"{format_coefficient(c)}*{gens}"


def format_mv(x: Multivector) -> str:
    """Canonical text: terms by (grade, indices), generators ascending."""
    items = x.items()
    if not items:
        return "0"
    return _join_signed([_term_text(x.ctx, m, c) for m, c in items])
