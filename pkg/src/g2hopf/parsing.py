"""Recursive-descent parser shared by scalar text and element text.

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := power (('*'|'/') power)*
    power  := atom ('^' int)?
    atom   := int | name | '(' expr ')'

Names are the scalar variables (r, s, ...) and, for elements, the generators
e1, e2, k1, k2 and root vectors X1..X6.  Division is only by scalars.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Tuple

from .coefficients import CORE_VARS, EXTENDED_VARS, LaurentPoly, LocalizedPoly, scalar_inverse


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.message = message
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}" + (f": {text!r}" if text else ""))


@dataclass(frozen=True)
class Token:
    kind: str  # 'int', 'name', 'op', 'end'
    value: str
    pos: int


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def tokenize(text: str) -> List[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(Token("int", m.group(1), start))
        elif m.group(2):
            out.append(Token("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", start, text)
            out.append(Token("op", ch, start))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


class _Parser:
    """Generic parser; subclasses supply the value domain."""

    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    # token helpers
    def peek(self) -> Token:
        return self.toks[self.i]

    def take(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def accept(self, op: str) -> bool:
        t = self.peek()
        if t.kind == "op" and t.value == op:
            self.i += 1
            return True
        return False

    def error(self, msg: str, tok: Token = None):
        tok = tok or self.peek()
        return ParseError(msg, tok.pos, self.text)

    # grammar
    def parse(self):
        if self.peek().kind == "end":
            raise self.error("empty expression")
        v = self.expr()
        if self.peek().kind != "end":
            raise self.error(f"unexpected token {self.peek().value!r}")
        return v

    def expr(self):
        neg = False
        if self.accept("-"):
            neg = True
        else:
            self.accept("+")
        v = self.term()
        if neg:
            v = self.neg(v)
        while True:
            if self.accept("+"):
                v = self.add(v, self.term())
            elif self.accept("-"):
                v = self.add(v, self.neg(self.term()))
            else:
                return v

    def term(self):
        v = self.power()
        while True:
            if self.accept("*"):
                v = self.mul(v, self.power())
            elif self.peek().kind == "op" and self.peek().value == "/":
                tok = self.take()
                v = self.div(v, self.power(), tok)
            else:
                return v

    def integer(self) -> int:
        paren = self.accept("(")
        sign = -1 if self.accept("-") else 1
        if not sign == -1:
            self.accept("+")
        t = self.take()
        if t.kind != "int":
            raise self.error("expected an integer exponent", t)
        if paren and not self.accept(")"):
            raise self.error("expected ')'")
        return sign * int(t.value)

    def power(self):
        start = self.peek()
        base = self.atom()
        if self.accept("^"):
            n = self.integer()
            return self.pow(base, n, start)
        return base

    def atom(self):
        t = self.take()
        if t.kind == "int":
            return self.const(int(t.value))
        if t.kind == "name":
            return self.name(t)
        if t.kind == "op" and t.value == "(":
            v = self.expr()
            if not self.accept(")"):
                raise self.error("expected ')'")
            return v
        if t.kind == "end":
            raise self.error("unexpected end of input", t)
        raise self.error(f"unexpected token {t.value!r}", t)


class _ScalarParser(_Parser):
    def __init__(self, text, names):
        super().__init__(text)
        self.names = tuple(names)

    def const(self, n):
        return LaurentPoly.const(n, self.names)

    def name(self, tok):
        if tok.value not in self.names:
            raise self.error(f"unknown variable {tok.value!r}", tok)
        return LaurentPoly.var(tok.value, names=self.names)

    def neg(self, v):
        return -v

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def div(self, a, b, tok):
        if not b:
            raise self.error("division by zero", tok)
        try:
            inv = scalar_inverse(b)
        except ArithmeticError as exc:
            raise self.error(f"cannot divide by {b}: {exc}", tok) from None
        out = a * inv
        return out.simplify() if isinstance(out, LocalizedPoly) else out

    def pow(self, base, n, tok):
        if n >= 0:
            out = LaurentPoly.const(1, self.names) if isinstance(base, LaurentPoly) else LocalizedPoly.lift(1)
            for _ in range(n):
                out = out * base
            return out
        try:
            inv = scalar_inverse(base)
        except (ArithmeticError, ZeroDivisionError) as exc:
            raise self.error(f"negative power of non-invertible scalar: {exc}", tok) from None
        return self.pow(inv, -n, tok)


def parse_scalar_text(text: str, names: Tuple[str, ...] = CORE_VARS):
    """Parse scalar text into a LaurentPoly (or a LocalizedPoly when a catalog denominator remains)."""
    v = _ScalarParser(text, names).parse()
    if isinstance(v, LocalizedPoly):
        v = v.simplify()
    return v


_X_NAMES = {f"X{i}": i for i in range(1, 7)}
_E_NAMES = {"e1": 6, "e2": 1}


class _ElementParser(_Parser):
    def __init__(self, text, algebra=None):
        super().__init__(text)
        from . import pbw_algebra as pa
        self.pa = pa
        self.alg = algebra or pa.DEFAULT_ALGEBRA

    def _scalar_of(self, v):
        """The scalar value of an element with only a constant term, else None."""
        if not v.terms:
            return LaurentPoly.zero()
        if len(v.terms) == 1 and self.pa.ONE_MONO in v.terms:
            return v.terms[self.pa.ONE_MONO]
        return None

    def const(self, n):
        return self.pa.AlgebraElement.scalar(n) if n else self.pa.AlgebraElement()

    def name(self, tok):
        pa = self.pa
        v = tok.value
        if v in _E_NAMES:
            return pa.AlgebraElement.monomial(pa.gen_mono(_E_NAMES[v]))
        if v in _X_NAMES:
            return pa.AlgebraElement.monomial(pa.gen_mono(_X_NAMES[v]))
        if v == "k1":
            return pa.AlgebraElement.monomial(pa.k_mono(1, 0))
        if v == "k2":
            return pa.AlgebraElement.monomial(pa.k_mono(0, 1))
        if v in EXTENDED_VARS:
            names = CORE_VARS if v in CORE_VARS else EXTENDED_VARS
            return pa.AlgebraElement.scalar(LaurentPoly.var(v, names=names))
        raise self.error(f"unknown name {v!r}", tok)

    def neg(self, v):
        return -v

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return self.alg.multiply(a, b)

    def div(self, a, b, tok):
        s = self._scalar_of(b)
        if s is None:
            raise self.error("can only divide by a scalar", tok)
        if not s:
            raise self.error("division by zero", tok)
        try:
            inv = scalar_inverse(s)
        except ArithmeticError as exc:
            raise self.error(f"cannot divide by {s}: {exc}", tok) from None
        if isinstance(inv, LocalizedPoly):
            inv = inv.simplify()
        return a.scale(inv)

    def pow(self, base, n, tok):
        pa = self.pa
        if n >= 0:
            out = pa.AlgebraElement.one()
            for _ in range(n):
                out = self.alg.multiply(out, base)
            return out
        if len(base.terms) == 1:
            (m, c), = base.terms.items()
            if not any(m.x):
                try:
                    inv_c = scalar_inverse(c)
                except (ArithmeticError, ZeroDivisionError):
                    inv_c = None
                if inv_c is not None:
                    if isinstance(inv_c, LocalizedPoly):
                        inv_c = inv_c.simplify()
                    inv = pa.AlgebraElement.monomial(pa.k_mono(-m.k[0], -m.k[1]), inv_c)
                    return self.pow(inv, -n, tok)
        raise self.error("negative power of a non-invertible element (e-generators are not invertible)", tok)


def parse_element_text(text: str, algebra=None):
    """Parse and normalize an element to canonical PBW form."""
    return _ElementParser(text, algebra).parse()
