"""Polynomials in the ring generators x1..xm, used as rewriting certificates.

A GenPoly records how a table representative (or a split part) is assembled
from the input generators; evaluating it on the generator series reproduces
the element exactly.
"""

from fractions import Fraction

from hkcurves.series import PowerSeries


class GenPoly:
    __slots__ = ("arity", "terms")

    def __init__(self, arity, terms=None):
        self.arity = arity
        self.terms = {}
        if terms:
            for mono, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[tuple(mono)] = c

    @classmethod
    def zero(cls, arity):
        return cls(arity)

    @classmethod
    def const(cls, arity, c):
        return cls(arity, {(0,) * arity: Fraction(c)})

    @classmethod
    def var(cls, arity, i):
        mono = [0] * arity
        mono[i] = 1
        return cls(arity, {tuple(mono): Fraction(1)})

    @property
    def is_zero(self):
        return not self.terms

    def copy(self):
        p = GenPoly(self.arity)
        p.terms = dict(self.terms)
        return p

    def axpy(self, c, other):
        """self + c*other."""
        c = Fraction(c)
        out = dict(self.terms)
        for mono, v in other.terms.items():
            w = out.get(mono, 0) + c * v
            if w:
                out[mono] = w
            else:
                out.pop(mono, None)
        p = GenPoly(max(self.arity, other.arity))
        p.terms = {self._pad(m, p.arity): v for m, v in out.items()}
        return p

    def __add__(self, other):
        return self.axpy(1, other)

    def __sub__(self, other):
        return self.axpy(-1, other)

    def scale(self, c):
        c = Fraction(c)
        p = GenPoly(self.arity)
        if c:
            p.terms = {m: c * v for m, v in self.terms.items()}
        return p

    def __mul__(self, other):
        arity = max(self.arity, other.arity)
        out = {}
        for m1, c1 in self.terms.items():
            m1 = self._pad(m1, arity)
            for m2, c2 in other.terms.items():
                m2 = self._pad(m2, arity)
                m = tuple(a + b for a, b in zip(m1, m2))
                w = out.get(m, 0) + c1 * c2
                if w:
                    out[m] = w
                else:
                    out.pop(m, None)
        p = GenPoly(arity)
        p.terms = out
        return p

    @staticmethod
    def _pad(mono, arity):
        return mono if len(mono) == arity else mono + (0,) * (arity - len(mono))

    def degree(self):
        return max((sum(m) for m in self.terms), default=0)

    def drop_above_degree(self, d):
        p = GenPoly(self.arity)
        p.terms = {m: c for m, c in self.terms.items() if sum(m) <= d}
        return p

    def evaluate(self, gens):
        """Substitute the generator series; exact when the generators are exact."""
        if len(gens) < self.arity:
            raise ValueError("need %d generators, got %d" % (self.arity, len(gens)))
        total = PowerSeries.zero()
        for mono, c in sorted(self.terms.items()):
            term = PowerSeries.monomial(0, c)
            for i, e in enumerate(mono):
                if e:
                    term = term * gens[i] ** e
            total = total + term
        return total

    def text(self, names=None):
        if not self.terms:
            return "0"
        if names is None:
            names = ["x%d" % (i + 1) for i in range(self.arity)]
        pieces = []
        for mono, c in sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0])):
            vars_ = [
                names[i] if e == 1 else "%s^%d" % (names[i], e)
                for i, e in enumerate(mono)
                if e
            ]
            if not vars_:
                pieces.append(str(c))
            elif c == 1:
                pieces.append("*".join(vars_))
            elif c == -1:
                pieces.append("-" + "*".join(vars_))
            else:
                pieces.append("%s*%s" % (c, "*".join(vars_)))
        text = pieces[0]
        for p in pieces[1:]:
            text += " - " + p[1:] if p.startswith("-") else " + " + p
        return text

    def __eq__(self, other):
        if not isinstance(other, GenPoly):
            return NotImplemented
        a = {self._pad(m, max(self.arity, other.arity)): c for m, c in self.terms.items()}
        b = {self._pad(m, max(self.arity, other.arity)): c for m, c in other.terms.items()}
        return a == b

    def __repr__(self):
        return "GenPoly(%s)" % self.text()
