"""Truncated formal power series in one variable t over exact rationals.

A PowerSeries is a sparse, immutable map exponent -> nonzero Fraction together
with a precision: either a natural number d (coefficients are certified for
exponents < d) or INFINITY, meaning the series is a genuine polynomial with all
higher coefficients zero.  Every operation computes the weakest correct output
precision; nothing is ever rounded.

Newton iteration (quadratic convergence) drives unit inversion, n-th roots of
units and compositional reversion, which keeps the growth of exact rational
coefficients manageable.
"""

from fractions import Fraction
from bisect import bisect_left

from hkcurves._backend import kernel_merge, kernel_scale, kernel_mul
from hkcurves.errors import (
    IndeterminateOrderError,
    MathError,
    NoRationalRootError,
    NotUnitError,
    PrecisionError,
)

INFINITY = float("inf")

#: Coefficients are exact rationals, always in lowest terms.
ExactScalar = Fraction


def _as_scalar(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError("coefficients must be exact rationals, got %r" % (c,))


def _check_prec(prec):
    if prec == INFINITY:
        return INFINITY
    if isinstance(prec, int) and prec >= 0:
        return prec
    raise ValueError("precision must be a natural number or INFINITY: %r" % (prec,))


def _cutoff(prec):
    return None if prec == INFINITY else prec


class PowerSeries:
    """Immutable sparse series; safe to share and hash."""

    __slots__ = ("_exps", "_coeffs", "_prec")

    def __init__(self, terms=(), prec=INFINITY):
        prec = _check_prec(prec)
        items = terms.items() if hasattr(terms, "items") else terms
        cleaned = {}
        for e, c in items:
            if not (isinstance(e, int) and e >= 0):
                raise ValueError("exponents must be natural numbers: %r" % (e,))
            c = _as_scalar(c)
            if e in cleaned:
                c = cleaned[e] + c
            cleaned[e] = c
        exps = []
        coeffs = []
        for e in sorted(cleaned):
            if e >= prec:
                break
            if cleaned[e]:
                exps.append(e)
                coeffs.append(cleaned[e])
        self._exps = tuple(exps)
        self._coeffs = tuple(coeffs)
        self._prec = prec

    @classmethod
    def _raw(cls, exps, coeffs, prec):
        s = object.__new__(cls)
        s._exps = tuple(exps)
        s._coeffs = tuple(coeffs)
        s._prec = prec
        return s

    @classmethod
    def zero(cls):
        return cls._raw((), (), INFINITY)

    @classmethod
    def one(cls):
        return cls.monomial(0)

    @classmethod
    def monomial(cls, e, c=1):
        c = _as_scalar(c)
        if not c:
            return cls.zero()
        return cls._raw((e,), (c,), INFINITY)

    # -- inspection ---------------------------------------------------------

    @property
    def prec(self):
        return self._prec

    @property
    def exact(self):
        return self._prec == INFINITY

    @property
    def is_zero(self):
        """True iff the series is known to be identically zero."""
        return not self._exps and self.exact

    @property
    def is_monomial(self):
        return len(self._exps) == 1

    def terms(self):
        return tuple(zip(self._exps, self._coeffs))

    def coeff(self, e):
        i = bisect_left(self._exps, e)
        if i < len(self._exps) and self._exps[i] == e:
            return self._coeffs[i]
        if e >= self._prec:
            raise PrecisionError("coefficient at t^%d is beyond precision O(t^%s)" % (e, self._prec))
        return Fraction(0)

    def order(self):
        """t-adic valuation: least exponent with nonzero coefficient.

        INFINITY for the exact zero series; raises when the series has no known
        terms but finite precision (the order is then not determined).
        """
        if self._exps:
            return self._exps[0]
        if self.exact:
            return INFINITY
        raise IndeterminateOrderError("order below precision floor O(t^%d)" % self._prec)

    def order_floor(self):
        """Largest certified lower bound for the order (never raises)."""
        return self._exps[0] if self._exps else self._prec

    def leading_coeff(self):
        if not self._exps:
            raise IndeterminateOrderError("series has no known terms")
        return self._coeffs[0]

    # -- ring operations ----------------------------------------------------

    def axpy(self, c, other):
        """self + c*other with prec = min of the operand precisions."""
        c = _as_scalar(c)
        prec = min(self._prec, other._prec)
        if not c:
            return self if prec == self._prec else self.clip(prec)
        exps, coeffs = kernel_merge(
            list(self._exps), list(self._coeffs), list(other._exps), list(other._coeffs), c, _cutoff(prec)
        )
        return PowerSeries._raw(exps, coeffs, prec)

    def __add__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.axpy(1, other)

    def __sub__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.axpy(-1, other)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = _as_scalar(c)
        if not c:
            return PowerSeries.zero()
        exps, coeffs = kernel_scale(list(self._exps), list(self._coeffs), c, _cutoff(self._prec))
        return PowerSeries._raw(exps, coeffs, self._prec)

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, PowerSeries):
            return NotImplemented
        prec = min(self._prec + other.order_floor(), other._prec + self.order_floor())
        if prec != INFINITY:
            prec = int(prec)
        exps, coeffs = kernel_mul(
            list(self._exps), list(self._coeffs), list(other._exps), list(other._coeffs), _cutoff(prec)
        )
        return PowerSeries._raw(exps, coeffs, prec)

    def __pow__(self, n):
        if not (isinstance(n, int) and n >= 0):
            raise ValueError("exponent must be a natural number")
        result = PowerSeries.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, k):
        """Multiply by t^k (k >= 0)."""
        if not (isinstance(k, int) and k >= 0):
            raise ValueError("shift must be a natural number")
        prec = self._prec if self.exact else self._prec + k
        return PowerSeries._raw([e + k for e in self._exps], self._coeffs, prec)

    def unit_part(self):
        """self / (c * t^v) where v = order and c the leading coefficient."""
        v = self.order()
        if v == INFINITY:
            raise NotUnitError("zero series has no unit part")
        c = self._coeffs[0]
        prec = self._prec if self.exact else self._prec - v
        return PowerSeries._raw([e - v for e in self._exps], [x / c for x in self._coeffs], prec)

    # -- precision handling -------------------------------------------------

    def truncate(self, d):
        """Drop all terms with exponent >= d; the result is an exact polynomial."""
        if not (isinstance(d, int) and d >= 0):
            raise ValueError("truncation degree must be a natural number")
        if d > self._prec:
            raise PrecisionError("cannot truncate at t^%d: only O(t^%d) is known" % (d, self._prec))
        i = bisect_left(self._exps, d)
        return PowerSeries._raw(self._exps[:i], self._coeffs[:i], INFINITY)

    def clip(self, d):
        """View modulo t^d: terms below d, precision min(prec, d)."""
        prec = min(self._prec, d)
        if prec == self._prec:
            return self
        i = bisect_left(self._exps, d)
        return PowerSeries._raw(self._exps[:i], self._coeffs[:i], prec)

    # -- calculus and functional operations ----------------------------------

    def derivative(self):
        exps = []
        coeffs = []
        for e, c in zip(self._exps, self._coeffs):
            if e:
                exps.append(e - 1)
                coeffs.append(e * c)
        prec = INFINITY if self.exact else max(self._prec - 1, 0)
        return PowerSeries._raw(exps, coeffs, prec)

    def _newton_target(self, prec):
        if prec is not None:
            _check_prec(prec)
            return min(prec, self._prec)
        return self._prec

    def invert_unit(self, prec=None):
        """Multiplicative inverse of a unit (order 0), certified below `prec`."""
        if self.order_floor() > 0 or not self._exps:
            raise NotUnitError("not a unit")
        c0 = self._coeffs[0]
        if len(self._exps) == 1:
            inv = PowerSeries.monomial(0, 1 / c0)
            target = self._newton_target(prec)
            return inv if target == INFINITY else inv.clip(target)
        target = self._newton_target(prec)
        if target == INFINITY:
            raise PrecisionError("inverting an exact non-constant series needs an explicit precision")
        # Newton iterates are exact truncated polynomials: coefficients below the
        # working level are the true ones (correct digits double per step), which
        # generic precision propagation cannot see.
        g = PowerSeries.monomial(0, 1 / c0)
        two = PowerSeries.monomial(0, 2)
        known = 1
        while known < target:
            known = min(2 * known, target)
            f = self.clip(known)
            g = (g * (two - f * g)).truncate(known)
        return g.clip(target)

    def nth_root_unit(self, n, prec=None):
        """g with g^n = self, for a unit whose constant term has a rational n-th root."""
        if not (isinstance(n, int) and n >= 1):
            raise ValueError("root index must be a positive integer")
        if self.order_floor() > 0 or not self._exps:
            raise NotUnitError("not a unit")
        if n == 1:
            return self
        c0 = self._coeffs[0]
        r0 = _rational_nth_root(c0, n)
        if r0 is None:
            raise NoRationalRootError("no rational %d-th root of leading coefficient %s" % (n, c0))
        if len(self._exps) == 1:
            root = PowerSeries.monomial(0, r0)
            target = self._newton_target(prec)
            return root if target == INFINITY else root.clip(target)
        target = self._newton_target(prec)
        exact_requested = target == INFINITY
        if exact_requested:
            # try a polynomial root: degree d perfect n-th powers have roots of degree d//n
            target = self._exps[-1] // n + 2
        g = PowerSeries.monomial(0, r0)
        ninv = Fraction(1, n)
        known = 1
        while known < target:
            known = min(2 * known, target)
            f = self.clip(known)
            err = (g ** n - f).clip(known)
            g = (g - ninv * (err * (g ** (n - 1)).invert_unit(prec=known))).truncate(known)
        g = g.clip(target)
        if exact_requested:
            candidate = g.truncate(target)
            if candidate ** n == self:
                return candidate
            raise PrecisionError("exact series is not a perfect %d-th power; pass an explicit precision" % n)
        return g

    def compose(self, inner):
        """self(inner(t)); requires order(inner) >= 1."""
        if not isinstance(inner, PowerSeries):
            raise TypeError("inner must be a PowerSeries")
        if inner.order_floor() < 1:
            raise MathError("inner series has order 0")
        if self._prec == INFINITY:
            cap = INFINITY
        elif self._prec == 0:
            cap = 0
        else:
            cap = self._prec * inner.order_floor()
        acc = PowerSeries.zero()
        prev = None
        for e, c in zip(reversed(self._exps), reversed(self._coeffs)):
            cm = PowerSeries.monomial(0, c)
            if prev is None:
                acc = cm
            else:
                acc = acc * inner ** (prev - e) + cm
            prev = e
        if prev is not None and prev > 0:
            acc = acc * inner ** prev
        if cap == INFINITY:
            return acc
        return acc.clip(int(cap))

    def revert(self, prec=None):
        """Compositional inverse r with self(r) = r(self) = t.

        Requires order 1 and linear coefficient 1.
        """
        if self.order_floor() != 1 or not self._exps or self._exps[0] != 1:
            raise MathError("order != 1")
        if self._coeffs[0] != 1:
            raise MathError("linear coefficient != 1")
        t = PowerSeries.monomial(1)
        if len(self._exps) == 1:
            return t if self.exact else t.clip(self._prec)
        target = self._newton_target(prec)
        if target == INFINITY:
            raise PrecisionError("reverting an exact non-linear series needs an explicit precision")
        ds = self.derivative()
        r = t
        known = 2
        while known < target:
            known = min(2 * known, target)
            err = self.compose(r).clip(known) - t
            r = (r - err * ds.compose(r).invert_unit(prec=known)).truncate(known)
        return r.clip(target)

    # -- comparison and display ----------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self._exps == other._exps and self._coeffs == other._coeffs and self._prec == other._prec

    def __hash__(self):
        return hash((self._exps, self._coeffs, self._prec))

    def __str__(self):
        return format_series(self)

    def __repr__(self):
        return "PowerSeries(%r)" % format_series(self)


def _int_nth_root(m, n):
    """Exact integer n-th root of m >= 0, or None."""
    if m < 2:
        return m
    x = 1 << (-(-m.bit_length() // n))
    while True:
        y = ((n - 1) * x + m // x ** (n - 1)) // n
        if y >= x:
            break
        x = y
    return x if x ** n == m else None


def _rational_nth_root(q, n):
    """Exact rational n-th root of a Fraction, or None; negative q needs odd n."""
    sign = 1
    if q < 0:
        if n % 2 == 0:
            return None
        sign = -1
        q = -q
    num = _int_nth_root(q.numerator, n)
    den = _int_nth_root(q.denominator, n)
    if num is None or den is None:
        return None
    return Fraction(sign * num, den)


def _fmt_term(e, c):
    if e == 0:
        return str(c)
    tpow = "t" if e == 1 else "t^%d" % e
    if c == 1:
        return tpow
    if c == -1:
        return "-" + tpow
    return "%s*%s" % (c, tpow)


def format_series(f, display_limit=None):
    """Canonical text form: `c*t^e` terms with ascending exponents.

    With `display_limit`, terms at exponents >= the limit are elided and marked
    with a trailing ` + ...`; used only for report display, not for round trips.
    """
    parts = []
    elided = False
    for e, c in f.terms():
        if display_limit is not None and e >= display_limit:
            elided = True
            break
        parts.append(_fmt_term(e, c))
    text = ""
    for i, p in enumerate(parts):
        if i == 0:
            text = p
        elif p.startswith("-"):
            text += " - " + p[1:]
        else:
            text += " + " + p
    if elided:
        text += " + ..." if text else "..."
    if not f.exact and display_limit is None:
        otext = "O(t^%d)" % f.prec
        text = "%s + %s" % (text, otext) if text else otext
    return text or "0"
