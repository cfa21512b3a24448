"""Valuation-table engine for subrings of k[[t]] and their fractional ideals.

A ReducedBasis stores, for every valuation v realized below a working
precision D, one monic representative of that valuation.  Reduction is
Gaussian elimination by order: the current lowest term of an element is
cancelled against the representative at its valuation until the order leaves
the table or passes D.

Tables are kept in canonical echelon form (each representative's tail is
supported off the key set), which makes them independent of the generator
order and lets products of pure monomials be skipped during closure.  New
values are discovered by reducing pairwise products of representatives,
processed in ascending order of the product valuation; a discovery always has
valuation at least the current product valuation, so each pair is considered
exactly once and the key set below the sweep position is final.
"""

import math
from bisect import bisect_right, insort
from functools import lru_cache

from hkcurves.errors import (
    ConsistencyError,
    GcdError,
    IndeterminateOrderError,
    InsufficientBoundError,
    PrecisionError,
)
from hkcurves.genpoly import GenPoly
from hkcurves.semigroup import sg_from_value_set
from hkcurves.series import INFINITY, PowerSeries, format_series

RING = "ring"
IDEAL = "ideal"

DEFAULT_MAX_PRECISION = 1 << 14


class Parametrization:
    """Ordered generators y1,...,yn of a subring k[[y1,...,yn]] of k[[t]].

    Generators are kept exactly as given (the engine normalizes internally);
    each must have determinate order >= 1.
    """

    __slots__ = ("gens",)

    def __init__(self, gens):
        gens = tuple(gens)
        if not gens:
            raise ValueError("parametrization needs at least one generator")
        for g in gens:
            if not isinstance(g, PowerSeries):
                raise TypeError("generators must be PowerSeries")
            try:
                order = g.order()
            except IndeterminateOrderError:
                raise IndeterminateOrderError(
                    "generator %s has indeterminate order" % format_series(g)
                )
            if order == INFINITY or order < 1:
                raise ValueError("generator is a unit or zero: %s" % format_series(g))
        self.gens = gens

    @property
    def orders(self):
        return tuple(g.order() for g in self.gens)

    def texts(self):
        return [format_series(g) for g in self.gens]

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __eq__(self, other):
        if not isinstance(other, Parametrization):
            return NotImplemented
        return self.gens == other.gens

    def __hash__(self):
        return hash(self.gens)

    def __repr__(self):
        return "Parametrization(%s)" % ", ".join(self.texts())


class ReducedBasis:
    """Finished valuation table; immutable once built."""

    __slots__ = ("reps", "precision", "kind", "shift", "conductor_hint", "exprs")

    def __init__(self, reps, precision, kind, shift=0, conductor_hint=None, exprs=None):
        self.reps = dict(reps)
        self.precision = precision
        self.kind = kind
        self.shift = shift
        self.conductor_hint = conductor_hint
        self.exprs = exprs

    def keys(self):
        return sorted(self.reps)

    def rep(self, v):
        return self.reps[v]

    def min_valuation(self):
        return min(self.reps)

    def with_conductor(self, c):
        return ReducedBasis(self.reps, self.precision, self.kind, self.shift, c, self.exprs)

    def as_ideal(self):
        return ReducedBasis(self.reps, self.precision, IDEAL, self.shift, self.conductor_hint, self.exprs)

    def __repr__(self):
        return "ReducedBasis(%s keys=%s, D=%d)" % (self.kind, self.keys(), self.precision)


def _reduce_core(reps, f, bound):
    """Cancel lowest terms against table reps until the order leaves the table.

    Returns (remainder, used) where used lists (valuation, coefficient) steps.
    """
    r = f
    used = []
    while r._exps:
        w = r._exps[0]
        if w >= bound or w not in reps:
            break
        c = r._coeffs[0]
        r = r.axpy(-c, reps[w])
        used.append((w, c))
    return r, used


def reduce(f, basis):
    """Reduce f against a basis; error when the remainder becomes indeterminate.

    The remainder is f minus the recorded combination of representatives; its
    order strictly increases at every step.
    """
    r, used = _reduce_core(basis.reps, f, basis.precision)
    if not r._exps and r.prec < basis.precision:
        raise PrecisionError(
            "precision exhausted during reduction (remainder indeterminate below O(t^%d))"
            % basis.precision
        )
    return r, used


class _Builder:
    """Mutable closure state: canonical table plus optional expression tracking.

    Once a run of multiplicity-many consecutive keys certifies that every
    integer >= floor is a value, the region [floor, D) is filled with pure
    monomial representatives (t^w lies in the conductor ideal, hence in the
    ring, and the canonical representative above the conductor is exactly
    t^w).  This keeps exact-rational coefficients from swelling through long
    reduction chains and lets product pairs reaching the region be skipped.
    Disabled while expressions are tracked, so certificates stay explicit.
    """

    def __init__(self, precision, track_exprs=False):
        self.D = precision
        self.reps = {}
        self.sorted_keys = []
        self.exprs = {} if track_exprs else None
        self.floor = None
        self._floor_min = None
        self._filling = False

    def _effective_key(self, x):
        return x in self.reps or (self.floor is not None and x >= self.floor)

    def _consider_floor(self, w):
        """Look for a run of min-key-many consecutive keys through w."""
        if self.exprs is not None or self._filling:
            return
        a1 = min(self.reps)
        if a1 != self._floor_min:
            # the multiplicity estimate changed: rescan from scratch
            self._floor_min = a1
            limit = self.floor if self.floor is not None else self.D
            run = 0
            for x in range(1, limit + a1 + 1):
                run = run + 1 if self._effective_key(x) else 0
                if run >= a1:
                    self._set_floor(x - a1 + 1)
                    return
            return
        starts = range(max(1, w - a1 + 1), w + 1)
        for c in starts:
            if self.floor is not None and c >= self.floor:
                break
            if all(self._effective_key(c + i) for i in range(a1)):
                self._set_floor(c)
                return

    def _set_floor(self, c):
        """Snap [c, D) to monomial representatives and fill the missing keys."""
        if self.floor is not None and c >= self.floor:
            return
        self.floor = c
        filling = self._filling
        self._filling = True
        leftovers = []
        for w in range(c, self.D):
            rep = self.reps.get(w)
            mono = PowerSeries.monomial(w)
            if rep is None:
                self.insert(mono, None)
            elif len(rep._exps) > 1:
                leftovers.append(rep.axpy(-1, mono))
                self.insert(mono, None)
        for diff in leftovers:
            self.absorb(diff, None)
        self._filling = filling

    def _canonical_tail(self, f, expr):
        """Reduce every tail term sitting at a key; keep off-key terms."""
        kept_e = []
        kept_c = []
        r = f
        first = True
        while r._exps:
            w = r._exps[0]
            if not first and w in self.reps:
                c = r._coeffs[0]
                r = r.axpy(-c, self.reps[w])
                if expr is not None:
                    expr = expr.axpy(-c, self.exprs[w])
                continue
            kept_e.append(w)
            kept_c.append(r._coeffs[0])
            r = PowerSeries._raw(r._exps[1:], r._coeffs[1:], r.prec)
            first = False
        return PowerSeries._raw(kept_e, kept_c, r.prec), expr

    def insert(self, f, expr):
        """Insert a monic representative and re-canonicalize the table."""
        v = f._exps[0]
        lead = f._coeffs[0]
        g = f.scale(1 / lead)
        if expr is not None:
            expr = expr.scale(1 / lead)
        g, expr = self._canonical_tail(g, expr)
        if v not in self.reps:
            insort(self.sorted_keys, v)
        self.reps[v] = g
        if self.exprs is not None:
            self.exprs[v] = expr
        # keep older representatives clean at position v (those at or above the
        # floor are pure monomials and never carry tails)
        limit = v if self.floor is None else min(v, self.floor)
        for u in list(self.reps):
            if u >= limit:
                continue
            c = self.reps[u].coeff(v)
            if c:
                self.reps[u] = self.reps[u].axpy(-c, g)
                if self.exprs is not None:
                    self.exprs[u] = self.exprs[u].axpy(-c, expr)
        self._consider_floor(v)

    def absorb(self, f, expr):
        """Reduce f fully; insert the remainder when it realizes a new valuation."""
        f = f.clip(self.D)
        r, used = _reduce_core(self.reps, f, self.D)
        if not r._exps:
            if r.prec < self.D:
                raise PrecisionError("input precision insufficient for requested precision %d" % self.D)
            return None
        w = r._exps[0]
        if w >= self.D:
            return None
        if self.floor is not None and w >= self.floor:
            # [floor, D) is completely keyed with monomials: nothing to learn
            return None
        if expr is not None:
            for u, c in used:
                expr = expr.axpy(-c, self.exprs[u])
        self.insert(r, expr)
        return w

    def is_monomial(self, v):
        return len(self.reps[v]._exps) == 1

    def freeze(self, kind, shift=0, conductor_hint=None):
        return ReducedBasis(
            self.reps, self.D, kind, shift=shift, conductor_hint=conductor_hint, exprs=self.exprs
        )


def _seed(builder, seeds):
    for series, expr in seeds:
        if series.prec < builder.D:
            raise PrecisionError(
                "input precision O(t^%s) insufficient for requested precision %d"
                % (series.prec, builder.D)
            )
        builder.absorb(series, expr)


def ring_closure(parametrization, precision, track_exprs=False):
    """Valuation table of the maximal ideal of k[[y1,...,yn]] below `precision`.

    The key set equals v(m) on [1, precision) and is closed under addition
    within the window.
    """
    D = precision
    builder = _Builder(D, track_exprs)
    arity = len(parametrization.gens)
    seeds = []
    for i, g in enumerate(parametrization.gens):
        expr = GenPoly.var(arity, i) if track_exprs else None
        seeds.append((g, expr))
    _seed(builder, seeds)
    if not builder.reps:
        raise ConsistencyError("no generator order below precision %d" % D)
    a1 = min(builder.reps)
    for w in range(2 * a1, D):
        if builder.floor is not None and w >= builder.floor:
            break  # products of this order land in the completely keyed region
        keys = builder.sorted_keys
        for idx in range(bisect_right(keys, w // 2)):
            u = keys[idx]
            v = w - u
            if v not in builder.reps:
                continue
            if (
                builder.is_monomial(u)
                and builder.is_monomial(v)
                and w in builder.reps
                and builder.is_monomial(w)
            ):
                continue
            prod = builder.reps[u] * builder.reps[v]
            expr = None
            if track_exprs:
                expr = builder.exprs[u] * builder.exprs[v]
            builder.absorb(prod, expr)
    return builder.freeze(RING)


def ideal_closure(igens, ring_basis, precision=None, shift=0):
    """Valuation table of the (fractional) ideal generated by `igens`.

    Fractional ideals are carried as t^(-shift) times the integral table; the
    stored keys are valuations of the integral representatives.
    """
    D = precision if precision is not None else ring_basis.precision
    if D > ring_basis.precision:
        raise PrecisionError(
            "ideal precision %d exceeds the ring table precision %d" % (D, ring_basis.precision)
        )
    igens = list(igens)
    if not igens:
        raise ValueError("ideal needs at least one generator")
    hint = ring_basis.conductor_hint
    builder = _Builder(D, track_exprs=False)
    builder._floor_min = -1  # run detection is unsound for ideals (keys not sum-closed)
    builder._filling = True
    _seed(builder, [(g, None) for g in igens])
    if not builder.reps:
        return builder.freeze(IDEAL, shift, hint)
    if hint is not None:
        # any series of order >= min_I + c_R lies in m*I, hence in I
        builder._set_floor(min(builder.reps) + hint)
    ring_keys = ring_basis.keys()
    if not ring_keys:
        return builder.freeze(IDEAL, shift, hint)
    start = min(builder.reps) + ring_keys[0]
    for w in range(start, D):
        if builder.floor is not None and w >= builder.floor:
            break
        keys = builder.sorted_keys
        for idx in range(bisect_right(keys, w - ring_keys[0])):
            u = keys[idx]
            v = w - u
            if v not in ring_basis.reps:
                continue
            if (
                builder.is_monomial(u)
                and len(ring_basis.reps[v]._exps) == 1
                and w in builder.reps
                and builder.is_monomial(w)
            ):
                continue
            builder.absorb(builder.reps[u] * ring_basis.reps[v], None)
    return builder.freeze(IDEAL, shift, hint)


def _input_precision(parametrization):
    return min(g.prec for g in parametrization.gens)


def _observed_gcd(keys):
    g = 0
    for v in keys:
        g = math.gcd(g, v)
        if g == 1:
            break
    return g


@lru_cache(maxsize=256)
def _analyze_cached(parametrization, precision, max_precision):
    in_prec = _input_precision(parametrization)
    max_exp = max(g._exps[-1] for g in parametrization.gens)
    if precision is not None:
        if precision > in_prec:
            raise PrecisionError(
                "input precision O(t^%s) insufficient for requested precision %d"
                % (in_prec, precision)
            )
        D = precision
    else:
        D = 2 * (1 + max_exp)
        if D > in_prec:
            D = int(in_prec)
    limit = max_precision if in_prec == INFINITY else min(max_precision, int(in_prec))
    while True:
        basis = ring_closure(parametrization, D)
        values = frozenset([0, *basis.reps])
        try:
            sg = sg_from_value_set(values, D - 1)
            break
        except (GcdError, InsufficientBoundError):
            if 2 * D > limit:
                if _observed_gcd(sorted(basis.reps)) > 1:
                    raise GcdError(
                        "generators have gcd > 1 up to precision %d (extension not birational)" % D
                    )
                if in_prec != INFINITY and 2 * D > in_prec:
                    raise PrecisionError(
                        "input precision O(t^%s) insufficient to certify a conductor" % in_prec
                    )
                raise PrecisionError(
                    "conductor not certified below the maximum precision %d" % max_precision
                )
            D = 2 * D
    conductor = sg.conductor
    a1 = min(basis.reps)
    floor = conductor + 2 * a1 + 1
    if D < floor:
        if floor > in_prec:
            raise PrecisionError(
                "input precision O(t^%s) insufficient for the decision window %d" % (in_prec, floor)
            )
        D = floor
        basis = ring_closure(parametrization, D)
    return basis.with_conductor(conductor), conductor, a1


def analyze_ring(parametrization, precision=None, max_precision=DEFAULT_MAX_PRECISION):
    """Adaptive driver: closure + conductor certification + decision window.

    Returns (basis, conductor_degree, multiplicity).  The final precision is at
    least conductor + 2*multiplicity + 1 so that later membership queries in
    m and m^2 are certified.
    """
    return _analyze_cached(parametrization, precision, max_precision)


def ring_member(f, basis, conductor):
    """Membership in the ring: remainder zero or of order >= the conductor degree."""
    if basis.kind != RING:
        raise ValueError("ring_member needs a ring basis")
    if f.is_zero:
        return True
    if f.order_floor() == 0 and f._exps and f._exps[0] == 0:
        f = f.axpy(-1, PowerSeries.monomial(0, f._coeffs[0]))
    r, _ = reduce(f, basis)
    if not r._exps:
        return True
    return r._exps[0] >= conductor


def ideal_member(f, basis, min_valuation, conductor):
    """Membership in an ideal J: remainder zero or of order >= min_J + c_R."""
    if f.is_zero:
        return True
    threshold = min_valuation + conductor
    if basis.precision < threshold:
        raise PrecisionError(
            "ideal table precision %d below the decision threshold %d"
            % (basis.precision, threshold)
        )
    r, _ = reduce(f, basis)
    if not r._exps:
        return True
    return r._exps[0] >= threshold


def ideal_min_generators(ideal_basis, m_ideal_basis):
    """Valuations in v(I) \\ v(m*I) with their representatives, ascending.

    Elements at those valuations minimally generate the ideal.
    """
    conductor = ideal_basis.conductor_hint
    if conductor is None:
        conductor = m_ideal_basis.conductor_hint
    if conductor is None:
        raise ValueError("ideal bases must carry the ring conductor (conductor_hint)")
    threshold = m_ideal_basis.min_valuation() + conductor
    if ideal_basis.precision < threshold or m_ideal_basis.precision < threshold:
        raise PrecisionError(
            "insufficient precision: tables certified below %d, need %d"
            % (min(ideal_basis.precision, m_ideal_basis.precision), threshold)
        )
    vals = [v for v in ideal_basis.keys() if v not in m_ideal_basis.reps]
    for v in vals:
        if v >= threshold:
            raise ConsistencyError("valuation %d above the membership threshold %d" % (v, threshold))
    return [(v, ideal_basis.rep(v)) for v in vals]
