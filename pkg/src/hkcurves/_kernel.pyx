# cython: language_level=3
"""Compiled sparse-series kernels; same contracts as hkcurves._kernel_py.

Coefficient arithmetic runs on normalized numerator/denominator integer pairs
with the classical gcd identities (the same ones fractions.Fraction uses), so
results are bit-identical to the pure backend while skipping per-operation
Python dispatch.  Result Fractions are built directly from already-normalized
pairs.
"""

from fractions import Fraction

from math import gcd as _gcd

BACKEND = "cython"

cdef object _F = Fraction
cdef bint _FAST_NEW

try:
    _probe = object.__new__(_F)
    _probe._numerator = 1
    _probe._denominator = 2
    _FAST_NEW = _probe == Fraction(1, 2) and (_probe + _probe) == Fraction(1, 1)
except Exception:
    _FAST_NEW = False


cdef inline object _make(object num, object den):
    """Fraction from an already-normalized pair (den > 0, gcd(num, den) = 1)."""
    if _FAST_NEW:
        f = object.__new__(_F)
        f._numerator = num
        f._denominator = den
        return f
    return _F(num, den)


cdef inline tuple _q_mul(object an, object ad, object bn, object bd):
    """Reduced product of two normalized rationals."""
    cdef object g1 = _gcd(an, bd)
    cdef object g2 = _gcd(bn, ad)
    if g1 > 1:
        an = an // g1
        bd = bd // g1
    if g2 > 1:
        bn = bn // g2
        ad = ad // g2
    return (an * bn, ad * bd)


cdef inline tuple _q_add(object an, object ad, object bn, object bd):
    """Reduced sum of two normalized rationals."""
    cdef object g = _gcd(ad, bd)
    cdef object s, t, g2
    if g == 1:
        return (an * bd + bn * ad, ad * bd)
    s = ad // g
    t = an * (bd // g) + bn * s
    g2 = _gcd(t, g)
    if g2 == 1:
        return (t, s * bd)
    return (t // g2, s * (bd // g2))


def kernel_merge(list xe, list xc, list ye, list yc, c, cutoff):
    cdef Py_ssize_t i = 0, j = 0, nx = len(xe), ny = len(ye)
    cdef long a, b, e
    cdef bint bounded = cutoff is not None
    cdef long cut = cutoff if bounded else 0
    cdef list re_ = [], rc = []
    cdef object cn = c.numerator, cd = c.denominator
    cdef object xco, num, den
    cdef tuple q
    while i < nx and j < ny:
        a = xe[i]
        b = ye[j]
        e = a if a < b else b
        if bounded and e >= cut:
            return re_, rc
        if a < b:
            re_.append(a)
            rc.append(xc[i])
            i += 1
        elif b < a:
            yco = yc[j]
            q = _q_mul(cn, cd, yco.numerator, yco.denominator)
            re_.append(b)
            rc.append(_make(q[0], q[1]))
            j += 1
        else:
            yco = yc[j]
            q = _q_mul(cn, cd, yco.numerator, yco.denominator)
            xco = xc[i]
            q = _q_add(xco.numerator, xco.denominator, q[0], q[1])
            if q[0]:
                re_.append(a)
                rc.append(_make(q[0], q[1]))
            i += 1
            j += 1
    while i < nx:
        a = xe[i]
        if bounded and a >= cut:
            return re_, rc
        re_.append(a)
        rc.append(xc[i])
        i += 1
    while j < ny:
        b = ye[j]
        if bounded and b >= cut:
            return re_, rc
        yco = yc[j]
        q = _q_mul(cn, cd, yco.numerator, yco.denominator)
        re_.append(b)
        rc.append(_make(q[0], q[1]))
        j += 1
    return re_, rc


def kernel_scale(list xe, list xc, c, cutoff):
    cdef Py_ssize_t i, n = len(xe)
    cdef long a
    cdef bint bounded = cutoff is not None
    cdef long cut = cutoff if bounded else 0
    cdef list re_ = [], rc = []
    cdef object cn = c.numerator, cd = c.denominator
    cdef tuple q
    for i in range(n):
        a = xe[i]
        if bounded and a >= cut:
            break
        xco = xc[i]
        q = _q_mul(cn, cd, xco.numerator, xco.denominator)
        re_.append(a)
        rc.append(_make(q[0], q[1]))
    return re_, rc


def kernel_mul(list xe, list xc, list ye, list yc, cutoff):
    cdef Py_ssize_t i, j, nx = len(xe), ny = len(ye)
    cdef long a, e, y0
    cdef bint bounded = cutoff is not None
    cdef long cut = cutoff if bounded else 0
    cdef dict acc = {}
    cdef list re_ = [], rc = []
    cdef list yn = [], yd = []
    cdef object an, ad, num, den
    cdef tuple q, cur
    if nx == 0 or ny == 0:
        return re_, rc
    for j in range(ny):
        yco = yc[j]
        yn.append(yco.numerator)
        yd.append(yco.denominator)
    y0 = ye[0]
    for i in range(nx):
        a = xe[i]
        if bounded and a + y0 >= cut:
            break
        xco = xc[i]
        an = xco.numerator
        ad = xco.denominator
        for j in range(ny):
            e = a + <long> ye[j]
            if bounded and e >= cut:
                break
            q = _q_mul(an, ad, yn[j], yd[j])
            cur = <tuple> acc.get(e)
            if cur is None:
                acc[e] = q
            else:
                acc[e] = _q_add(cur[0], cur[1], q[0], q[1])
    for e in sorted(acc):
        cur = <tuple> acc[e]
        if cur[0]:
            re_.append(e)
            rc.append(_make(cur[0], cur[1]))
    return re_, rc
