"""Numerical-semigroup combinatorics on certified value sets.

A value set observed up to a bound cannot distinguish a gap from missing data,
so conductor detection demands an explicit run of multiplicity-many consecutive
members; everything above such a run belongs to the semigroup by closure.
"""

import math
from dataclasses import dataclass
from functools import cached_property

from hkcurves.errors import ConsistencyError, GcdError, InsufficientBoundError


@dataclass(frozen=True)
class NumericalSemigroup:
    min_generators: tuple
    conductor: int
    gaps: tuple
    bound: int

    def contains(self, x):
        if x < 0:
            return False
        if x >= self.conductor:
            return True
        return x not in self._gapset

    @cached_property
    def _gapset(self):
        return frozenset(self.gaps)

    @property
    def genus(self):
        return len(self.gaps)

    def __str__(self):
        return "<%s>" % ", ".join(str(w) for w in self.min_generators)


def sg_close(generators, bound):
    """All sums of the generators that are <= bound, plus 0."""
    gens = sorted(set(generators))
    if not gens or gens[0] <= 0:
        raise ValueError("generators must be positive")
    reachable = [False] * (bound + 1)
    reachable[0] = True
    for w in gens:
        for i in range(w, bound + 1):
            if reachable[i - w]:
                reachable[i] = True
    return {i for i in range(bound + 1) if reachable[i]}


def sg_from_value_set(values, bound):
    """Build a NumericalSemigroup from a value set certified on [0, bound].

    `values` must contain 0 and be closed under addition within the bound.
    Raises GcdError when the certified values share a divisor > 1 and
    InsufficientBoundError when no run of multiplicity-many consecutive
    members completes below the bound.
    """
    values = set(values)
    if 0 not in values:
        raise ValueError("value set must contain 0")
    nonzero = sorted(v for v in values if v > 0)
    if not nonzero:
        raise InsufficientBoundError("no nonzero values certified below bound %d" % bound)
    g = 0
    for v in nonzero:
        g = math.gcd(g, v)
        if g == 1:
            break
    if g > 1:
        raise GcdError("certified values share gcd %d" % g)
    m = nonzero[0]
    conductor = None
    c = 0
    while c + m - 1 <= bound:
        if all(c + i in values for i in range(m)):
            conductor = c
            break
        c += 1
    if conductor is None:
        raise InsufficientBoundError(
            "no run of %d consecutive members below bound %d" % (m, bound)
        )
    for x in range(conductor, bound + 1):
        if x not in values:
            raise ConsistencyError("value set not closed: %d missing above conductor %d" % (x, conductor))
    gaps = tuple(x for x in range(1, conductor) if x not in values)
    if gaps and gaps[-1] + 1 != conductor:
        raise ConsistencyError("conductor %d does not sit above the largest gap %d" % (conductor, gaps[-1]))
    members = {v for v in values if v <= max(conductor + m - 1, m)}
    min_gens = []
    for w in sorted(members):
        if w == 0:
            continue
        if not any(u in members and (w - u) in members for u in range(1, w // 2 + 1)):
            min_gens.append(w)
    return NumericalSemigroup(tuple(min_gens), conductor, gaps, bound)


def sg_minimal_generators(sg):
    return list(sg.min_generators)


def sg_member(sg, x):
    return sg.contains(x)


def sg_genus(sg):
    return sg.genus
