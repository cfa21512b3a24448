"""Text grammar for series and parametrizations.

    expr     := term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := atom ['^' NAT]
    atom     := RATIONAL | 't' | '(' expr ')' | '-' atom | oterm
    RATIONAL := INT ['/' INT]
    oterm    := 'O' '(' 't' '^' NAT ')'     -- declares finite precision

An O-term may only occur additively; a parametrization is a comma-separated
list of expressions, each a series of order >= 1.  `format_series` output
round-trips through `parse_series`.
"""

from fractions import Fraction

from hkcurves.errors import ParseError
from hkcurves.series import INFINITY, PowerSeries

_SYMBOLS = "+-*^/(),"


class _Tokenizer:
    def __init__(self, text):
        self.text = text
        self.pos = 0
        self.tokens = []
        self._scan()
        self.index = 0

    def _scan(self):
        text = self.text
        i = 0
        n = len(text)
        while i < n:
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < n and text[j].isdigit():
                    j += 1
                self.tokens.append(("int", int(text[i:j]), i))
                i = j
            elif ch == "t":
                self.tokens.append(("t", "t", i))
                i += 1
            elif ch == "O":
                self.tokens.append(("O", "O", i))
                i += 1
            elif ch in _SYMBOLS:
                self.tokens.append((ch, ch, i))
                i += 1
            else:
                raise ParseError("unexpected character %r" % ch, i)
        self.tokens.append(("end", None, n))

    def peek(self):
        return self.tokens[self.index]

    def next(self):
        tok = self.tokens[self.index]
        if tok[0] != "end":
            self.index += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError("expected %r, found %r" % (kind, tok[1]), tok[2])
        return tok


class _Parser:
    """Recursive descent; evaluates directly to (PowerSeries, declared precision)."""

    def __init__(self, tokenizer):
        self.toks = tokenizer

    def parse_expr(self):
        series = PowerSeries.zero()
        prec = INFINITY
        sign = 1
        first = True
        while True:
            tok = self.toks.peek()
            if not first:
                if tok[0] == "+":
                    sign = 1
                elif tok[0] == "-":
                    sign = -1
                else:
                    break
                self.toks.next()
            elif tok[0] == "-":
                sign = -1
                self.toks.next()
            value = self.parse_term()
            if value is _OTERM_FLAG:
                prec = min(prec, self._oterm_prec)
            else:
                series = series.axpy(sign, value)
            sign = 1
            first = False
        return series.clip(prec) if prec != INFINITY else series

    def parse_term(self):
        left = self.parse_factor()
        while self.toks.peek()[0] == "*":
            self.toks.next()
            right = self.parse_factor()
            if left is _OTERM_FLAG or right is _OTERM_FLAG:
                raise ParseError("O(...) is only allowed as an additive term", self.toks.peek()[2])
            left = left * right
        return left

    def parse_factor(self):
        base = self.parse_atom()
        if self.toks.peek()[0] == "^":
            pos = self.toks.next()[2]
            if base is _OTERM_FLAG:
                raise ParseError("O(...) cannot be raised to a power", pos)
            n = self.toks.expect("int")[1]
            base = base ** n
        return base

    def parse_atom(self):
        tok = self.toks.next()
        kind, value, pos = tok
        if kind == "int":
            num = value
            if self.toks.peek()[0] == "/":
                self.toks.next()
                den = self.toks.expect("int")[1]
                if den == 0:
                    raise ParseError("zero denominator", pos)
                return PowerSeries.monomial(0, Fraction(num, den))
            return PowerSeries.monomial(0, num)
        if kind == "t":
            return PowerSeries.monomial(1)
        if kind == "-":
            inner = self.parse_atom()
            if inner is _OTERM_FLAG:
                raise ParseError("O(...) cannot be negated", pos)
            return -inner
        if kind == "(":
            inner = self.parse_expr()
            self.toks.expect(")")
            return inner
        if kind == "O":
            self.toks.expect("(")
            self.toks.expect("t")
            self.toks.expect("^")
            d = self.toks.expect("int")[1]
            self.toks.expect(")")
            self._oterm_prec = d
            return _OTERM_FLAG
        raise ParseError("unexpected token %r" % (value,), pos)


_OTERM_FLAG = object()


def parse_series(text):
    toks = _Tokenizer(text)
    parser = _Parser(toks)
    series = parser.parse_expr()
    tok = toks.peek()
    if tok[0] != "end":
        raise ParseError("unexpected token %r" % (tok[1],), tok[2])
    return series


def parse_generators(text):
    """Parse a comma-separated parametrization; every series must have order >= 1."""
    from hkcurves.engine import Parametrization

    pieces = [p for p in text.split(",")]
    if not any(p.strip() for p in pieces):
        raise ParseError("empty generator list", 0)
    gens = []
    for piece in pieces:
        if not piece.strip():
            raise ParseError("empty generator entry", 0)
        f = parse_series(piece)
        if f.order_floor() < 1:
            raise ParseError("generator is a unit or zero: %r" % piece.strip(), 0)
        if not f._exps and f.exact:
            raise ParseError("generator is a unit or zero: %r" % piece.strip(), 0)
        gens.append(f)
    return Parametrization(gens)
