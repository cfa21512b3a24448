"""Pure-Python sparse-series kernels.

A series is a pair of parallel lists: strictly ascending integer exponents and
nonzero Fraction coefficients.  These three functions are the arithmetic inner
loops of the reduction engine; `hkcurves._kernel` is the compiled twin with the
same contracts, selected at import by `hkcurves._backend`.

`cutoff` is an int bound (terms with exponent >= cutoff are dropped) or None.
"""

BACKEND = "python"


def kernel_merge(xe, xc, ye, yc, c, cutoff):
    """Merge x + c*y (c a nonzero scalar), dropping zeros and exponents >= cutoff."""
    nx = len(xe)
    ny = len(ye)
    re_ = []
    rc = []
    i = 0
    j = 0
    while i < nx and j < ny:
        a = xe[i]
        b = ye[j]
        e = a if a < b else b
        if cutoff is not None and e >= cutoff:
            return re_, rc
        if a < b:
            re_.append(a)
            rc.append(xc[i])
            i += 1
        elif b < a:
            re_.append(b)
            rc.append(c * yc[j])
            j += 1
        else:
            v = xc[i] + c * yc[j]
            if v:
                re_.append(a)
                rc.append(v)
            i += 1
            j += 1
    while i < nx:
        a = xe[i]
        if cutoff is not None and a >= cutoff:
            return re_, rc
        re_.append(a)
        rc.append(xc[i])
        i += 1
    while j < ny:
        b = ye[j]
        if cutoff is not None and b >= cutoff:
            return re_, rc
        re_.append(b)
        rc.append(c * yc[j])
        j += 1
    return re_, rc


def kernel_scale(xe, xc, c, cutoff):
    """Scale by a nonzero scalar c, dropping exponents >= cutoff."""
    re_ = []
    rc = []
    for i in range(len(xe)):
        a = xe[i]
        if cutoff is not None and a >= cutoff:
            break
        re_.append(a)
        rc.append(c * xc[i])
    return re_, rc


def kernel_mul(xe, xc, ye, yc, cutoff):
    """Cauchy product, dropping exponents >= cutoff."""
    if not xe or not ye:
        return [], []
    acc = {}
    y0 = ye[0]
    ny = len(ye)
    for i in range(len(xe)):
        a = xe[i]
        if cutoff is not None and a + y0 >= cutoff:
            break
        ca = xc[i]
        for j in range(ny):
            e = a + ye[j]
            if cutoff is not None and e >= cutoff:
                break
            v = acc.get(e)
            if v is None:
                acc[e] = ca * yc[j]
            else:
                acc[e] = v + ca * yc[j]
    re_ = []
    rc = []
    for e in sorted(acc):
        v = acc[e]
        if v:
            re_.append(e)
            rc.append(v)
    return re_, rc
