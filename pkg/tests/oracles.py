"""Independent brute-force oracles used to cross-check the engine.

Nothing here goes through the closure machinery: spans are reduced by textbook
row elimination over exact rationals, and semigroup membership is decided by
exhaustive recursion.
"""

from fractions import Fraction

from hkcurves.series import PowerSeries


def monomial_products(gens, bound):
    """Every nonempty product of generators with weighted order < bound."""
    orders = [g.order() for g in gens]
    rows = []

    def walk(i, series, weight):
        if i == len(gens):
            if weight > 0:
                rows.append(series)
            return
        power = series
        w = weight
        e = 0
        while w < bound:
            walk(i + 1, power, w)
            e += 1
            w = weight + e * orders[i]
            if w < bound:
                power = power * gens[i]

    walk(0, PowerSeries.one(), 0)
    return rows


def _echelon_orders(rows, bound):
    """Textbook row elimination pivoting on the least exponent.

    Rows are processed by ascending order; once every order in [w, bound) has
    a pivot, a row of order >= w reduces to zero mod t^bound, so the remaining
    rows are skipped.
    """
    pivots = {}
    realized = set()
    for row in sorted(rows, key=lambda r: r.order()):
        w0 = row.order()
        if w0 >= bound:
            break
        if all(x in pivots for x in range(w0, bound)):
            break
        r = row.clip(bound)
        while r.terms():
            w = r.order()
            if w >= bound:
                break
            if w in pivots:
                r = r.axpy(-r.coeff(w), pivots[w])
            else:
                pivots[w] = r.scale(1 / r.coeff(w))
                realized.add(w)
                break
    return sorted(realized)


def span_orders(gens, bound):
    """Valuations realized by the linear span of all monomials in the generators."""
    return _echelon_orders(monomial_products(gens, bound), bound)


def module_span_orders(module_gens, ring_gens, bound):
    """Valuations realized by the span of {g * monomial} for g in module_gens."""
    monomials = [PowerSeries.one()] + monomial_products(ring_gens, bound)
    rows = []
    for g in module_gens:
        for mu in monomials:
            if g.order() + mu.order() < bound:
                rows.append(g * mu)
    return _echelon_orders(rows, bound)


def member_by_search(generators, x, _memo=None):
    """Exhaustive semigroup membership: x is a sum of generators."""
    if _memo is None:
        _memo = {}
    if x == 0:
        return True
    if x < 0:
        return False
    if x in _memo:
        return _memo[x]
    result = any(member_by_search(generators, x - g, _memo) for g in generators if g <= x)
    _memo[x] = result
    return result


def _monomial_vectors(orders, lo, hi, cap=4000):
    """Exponent vectors with weighted order in (lo, hi), nonempty."""
    out = []

    def walk(i, weight, vec):
        if len(out) > cap:
            return
        if i == len(orders):
            if lo < weight < hi and vec:
                out.append(tuple(vec))
            return
        e = 0
        while weight + e * orders[i] < hi:
            walk(i + 1, weight + e * orders[i], vec + ([(i, e)] if e else []))
            e += 1

    walk(0, 0, [])
    return out


def random_combination(rng, gens, min_order, bound, max_terms=3):
    """A random nonzero ring element with order strictly above min_order.

    A rational combination of generator products whose weighted orders lie in
    (min_order, bound); None when no product fits the window.
    """
    orders = [g.order() for g in gens]
    candidates = _monomial_vectors(orders, min_order, bound)
    if not candidates:
        return None
    picks = rng.sample(candidates, min(max_terms, len(candidates)))
    total = PowerSeries.zero()
    for mono in picks:
        c = Fraction(rng.randint(1, 5), rng.randint(1, 3))
        if rng.random() < 0.5:
            c = -c
        term = PowerSeries.monomial(0, c)
        for i, e in mono:
            term = term * gens[i] ** e
        total = total + term
    if not total.terms():
        return None
    return total
