"""Parametrization rewriting and the differential torsion witness.

Every transform here preserves the ring (checked on the fly via mutual
membership when `verify` is on): parameter normalization makes the first
generator a pure monomial, tail monomialization replaces generators above the
conductor degree, truncation at max(a_n + 1, c_R) produces polynomial
generators, and the extraction of Herzog-Kunz generators rewrites an arbitrary
minimal generating set as y_i = x_i + z_i with polynomial certificates z_i.
"""

from dataclasses import dataclass

from hkcurves.engine import (
    Parametrization,
    analyze_ring,
    ring_closure,
    ring_member,
)
from hkcurves.errors import (
    ConsistencyError,
    GcdError,
    HypothesisError,
    MathError,
    NotMinimalError,
    PrecisionError,
)
from hkcurves.genpoly import GenPoly
from hkcurves.invariants import HKProfile, reduced_type, ring_report
from hkcurves.series import INFINITY, PowerSeries, format_series


@dataclass(frozen=True)
class TorsionWitness:
    """The differential a_n*x_n*dx_1 - a_1*x_1*dx_n for a monomial pair x_1, x_n.

    Its image in the normalization module k[[t]]dt vanishes identically; when
    the conductor ideal is not contained in m^2 it is a nonzero torsion element
    of the universally finite differential module (cited, not recomputed here).
    """

    a1: int
    an: int
    x1: PowerSeries
    xn: PowerSeries
    omega_text: str
    image_in_normalization: PowerSeries


@dataclass(frozen=True)
class ExtensionReport:
    """Analysis of S = R[C_R/x_1] under the hypothesis C_R in m^2."""

    b_list: tuple
    s: int
    S_gens: Parametrization
    c_S: int
    hk_S: HKProfile
    i0: int
    chosen_generators: tuple


def rings_equal(p, q, max_precision=None):
    """True iff both parametrizations generate the same subring of k[[t]]."""
    if max_precision is None:
        bp, cp, _ = analyze_ring(p)
        bq, cq, _ = analyze_ring(q)
    else:
        bp, cp, _ = analyze_ring(p, max_precision=max_precision)
        bq, cq, _ = analyze_ring(q, max_precision=max_precision)
    return all(ring_member(g, bq, cq) for g in p.gens) and all(
        ring_member(g, bp, cp) for g in q.gens
    )


def _verify_equal(p, q, what):
    if not rings_equal(p, q):
        raise ConsistencyError("%s changed the ring" % what)


def normalize_parameter(p):
    """Change the parameter t so the minimal-order generator becomes t^a1.

    Returns (p', s) where s is the substitution series (the new parameter as a
    series in the old one) and p' = p composed with revert(s).  Valuations and
    the value semigroup are unchanged.
    """
    basis, conductor, a1 = analyze_ring(p)
    idx = min(i for i, g in enumerate(p.gens) if g.order() == a1)
    f = p.gens[idx]
    unit = f.unit_part()
    t = PowerSeries.monomial(1)
    if unit == PowerSeries.one():
        if f.leading_coeff() == 1 and f.is_monomial:
            return p, t
        gens = list(p.gens)
        gens[idx] = PowerSeries.monomial(a1)
        return Parametrization(gens), t
    work = basis.precision
    root = unit.nth_root_unit(a1, prec=work)
    subst = (t * root).clip(work)
    back = subst.revert(prec=work)
    gens = []
    for j, g in enumerate(p.gens):
        if j == idx:
            composed = g.compose(back)
            if composed.terms() != ((a1, g.leading_coeff()),):
                raise ConsistencyError("parameter change failed to monomialize the generator")
            gens.append(PowerSeries.monomial(a1))
        else:
            gens.append(g.compose(back))
    return Parametrization(gens), subst


def monomialize_tail(p, profile, conductor, verify=True):
    """Replace every Herzog-Kunz generator with a_i >= c_R by the monomial t^a_i."""
    gens = [
        PowerSeries.monomial(a) if a >= conductor else x
        for a, x in zip(profile.sequence, profile.generators)
    ]
    out = Parametrization(gens)
    if verify:
        _verify_equal(p, out, "tail monomialization")
    return out


def split_element(f, level, profile, basis):
    """Write f = p + g with p a polynomial in the generators below `level`.

    p involves only the x_i with a_i <= level, has total degree at most
    ceil(level/a_1), and v(g) >= level + 1.  Returns (p, g) with p a GenPoly
    over profile.generators.
    """
    if level >= basis.precision:
        raise MathError("split level %d not below the certified window %d" % (level, basis.precision))
    i0 = sum(1 for a in profile.sequence if a <= level)
    arity = i0
    prefix = profile.generators[:i0]
    poly = GenPoly.zero(arity)
    r = f
    if r._exps and r._exps[0] == 0:
        c = r._coeffs[0]
        poly = poly + GenPoly.const(arity, c)
        r = r.axpy(-1, PowerSeries.monomial(0, c))
    if i0:
        table = ring_closure(Parametrization(prefix), level + 1, track_exprs=True)
        while r._exps and r._exps[0] <= level:
            w = r._exps[0]
            if w not in table.reps:
                raise MathError(
                    "element has valuation %d outside the subring below level %d" % (w, level)
                )
            c = r._coeffs[0]
            r = r.axpy(-c, table.reps[w])
            poly = poly.axpy(c, table.exprs[w])
    elif r._exps and r._exps[0] <= level:
        raise MathError("element has valuation %d below the first generator" % r._exps[0])
    a1 = profile.sequence[0]
    poly = poly.drop_above_degree(-(-level // a1))
    g = f - poly.evaluate(prefix)
    if g._exps and g._exps[0] <= level:
        raise ConsistencyError("split failed: remainder has valuation %d <= %d" % (g._exps[0], level))
    return poly, g


def unit_order(x):
    """Order of (x / t^v(x) - 1): least positive tail offset; INFINITY for monomials."""
    v = x.order()
    if len(x._exps) > 1:
        return x._exps[1] - v
    if x.exact:
        return INFINITY
    shifted = x.unit_part()
    return shifted.axpy(-1, PowerSeries.one()).order()


def hk_generators(p, verify=True):
    """Rewrite a minimal generating set as y_i = x_i + z_i with v(x_i) = a_i.

    The certificates z_i are polynomials in x_1,...,x_{i-1}.  Raises when the
    given generators do not minimally generate the maximal ideal.
    """
    report = ring_report(p)
    seq = report.hk.sequence
    n = len(seq)
    if len(p.gens) != n:
        raise NotMinimalError(
            "generators not minimal: %d given, embedding dimension is %d" % (len(p.gens), n)
        )
    remaining = list(enumerate(p.gens))
    first = [i for i, (_, y) in enumerate(remaining) if y.order() == seq[0]]
    if not first:
        raise NotMinimalError("generators not minimal: no generator of order %d" % seq[0])
    pos = first[0]
    chosen_x = [remaining[pos][1]]
    chosen_z = [GenPoly.zero(0)]
    del remaining[pos]
    for k in range(2, n + 1):
        level = seq[k - 1] - 1
        prefix_profile = HKProfile(tuple(seq[: k - 1]), tuple(chosen_x))
        splits = []
        for idx, y in remaining:
            poly, g = split_element(y, level, prefix_profile, report.basis)
            splits.append((idx, poly, g))
        hit = [s for s in splits if s[2]._exps and s[2]._exps[0] == seq[k - 1]]
        if not hit:
            raise NotMinimalError(
                "generators not minimal: no remainder of valuation %d at stage %d" % (seq[k - 1], k)
            )
        idx, poly, g = min(hit, key=lambda s: s[0])
        chosen_x.append(g)
        chosen_z.append(poly)
        remaining = [(i, y) for i, y in remaining if i != idx]
    profile = HKProfile(seq, tuple(chosen_x), tuple(chosen_z))
    if verify:
        _verify_equal(p, Parametrization(chosen_x), "Herzog-Kunz extraction")
    return profile


def mm42_substitution(p, profile, conductor, i, d, verify=True):
    """Replace one Herzog-Kunz generator by its pure monomial when the unit
    orders allow it: with o_d = unit_order(x_d) finite and o_d + a_i >= c_R,
    either o_d <= o_i (replace x_i by t^a_i) or i <= d (replace x_d by t^a_d).

    Indices are 1-based positions in the Herzog-Kunz sequence; the
    order-comparison branch wins when both apply.
    """
    n = len(profile.sequence)
    if tuple(g.order() for g in p.gens) != tuple(profile.sequence):
        raise HypothesisError("parametrization is not in Herzog-Kunz form (orders != sequence)")
    if not (2 <= i <= n and 2 <= d <= n):
        raise HypothesisError("hypotheses not satisfied: need 2 <= i, d <= %d" % n)
    o_d = unit_order(p.gens[d - 1])
    o_i = unit_order(p.gens[i - 1])
    a_i = profile.sequence[i - 1]
    failures = []
    if o_d == INFINITY:
        failures.append("o(alpha_%d) is infinite" % d)
    elif o_d + a_i < conductor:
        failures.append("o(alpha_%d) + a_%d = %d < c_R = %d" % (d, i, o_d + a_i, conductor))
    if failures:
        raise HypothesisError("hypotheses not satisfied: " + "; ".join(failures))
    if o_d <= o_i:
        target = i
    elif i <= d:
        target = d
    else:
        raise HypothesisError(
            "hypotheses not satisfied: o(alpha_%d) > o(alpha_%d) and i > d" % (d, i)
        )
    gens = list(p.gens)
    gens[target - 1] = PowerSeries.monomial(profile.sequence[target - 1])
    out = Parametrization(gens)
    if verify:
        _verify_equal(p, out, "unit-order substitution")
    return out


def truncate_parametrization(p, profile, conductor, verify=True):
    """Truncate every generator at t^d with d = max(a_n + 1, c_R).

    The result generates the same ring with polynomial generators; smaller
    truncation degrees are not safe in general.
    """
    d = max(profile.sequence[-1] + 1, conductor)
    out = Parametrization([g.truncate(d) for g in p.gens])
    if verify:
        _verify_equal(p, out, "truncation at t^%d" % d)
    return out, d


def perturb_check(p, p_tilde):
    """Membership-check a perturbed generating set, then compare the rings.

    Each perturbed generator must lie in the original ring.  When every
    perturbation has order above a_n the result is guaranteed true; other
    perturbations are still answered honestly.
    """
    if len(p_tilde.gens) != len(p.gens):
        raise ValueError("parametrizations must have the same length")
    basis, conductor, _ = analyze_ring(p)
    for g in p_tilde.gens:
        if not ring_member(g, basis, conductor):
            raise HypothesisError("perturbation not inside R: %s" % format_series(g))
    return rings_equal(p, p_tilde)


def drop_redundant(p, max_precision=None):
    """Greedily remove generators whose removal keeps the ring equal.

    The result minimally generates the maximal ideal (its length is the
    embedding dimension).
    """
    if max_precision is None:
        basis, _, _ = analyze_ring(p)
    else:
        basis, _, _ = analyze_ring(p, max_precision=max_precision)
    # a subset generating the same ring certifies its conductor within the
    # original window, so candidate probes need not climb the full ladder
    probe_cap = 2 * max(basis.precision, max(2 * (1 + g._exps[-1]) for g in p.gens))
    current = list(p.gens)
    i = 0
    while i < len(current) and len(current) > 1:
        candidate = current[:i] + current[i + 1 :]
        try:
            same = rings_equal(p, Parametrization(candidate), max_precision=probe_cap)
        except (GcdError, PrecisionError):
            same = False
        if same:
            current = candidate
        else:
            i += 1
    return Parametrization(current)


def torsion_witness(p):
    """Build the monomial-pair differential witness, or None when C_R in m^2.

    Requires a_n >= c_R (otherwise the conductor ideal sits inside m^2 and the
    construction does not apply) and embedding dimension >= 2 (for a single
    generator the two terms of the differential coincide).
    """
    report = ring_report(p)
    seq = report.hk.sequence
    conductor = report.conductor_degree
    if seq[-1] < conductor or len(seq) == 1:
        return None
    p1, _ = normalize_parameter(p)
    report1 = ring_report(p1)
    if report1.hk.sequence != seq:
        raise ConsistencyError("parameter change altered the Herzog-Kunz sequence")
    p2 = monomialize_tail(p1, report1.hk, conductor)
    a1 = seq[0]
    an = seq[-1]
    x1 = PowerSeries.monomial(a1)
    xn = PowerSeries.monomial(an)
    if p2.gens[0].terms() != x1.terms() or p2.gens[-1].terms() != xn.terms():
        raise ConsistencyError("monomial witness pair does not match the rewritten generators")
    n = len(seq)
    image = an * (xn * x1.derivative()) - a1 * (x1 * xn.derivative())
    if not image.is_zero:
        raise ConsistencyError("witness image in k[[t]]dt is not identically zero")
    omega = "%d*x%d*dx1 - %d*x1*dx%d" % (an, n, a1, n)
    return TorsionWitness(a1, an, x1, xn, omega, image)


def extend_by_conductor(p):
    """Analyze S = R[C_R/x_1] = R[t^b_1, ..., t^b_s] under C_R in m^2.

    The b_i are the value-semigroup gaps in [c_R - a_1, c_R - 1]; the report
    cross-checks c_S = c_R - a_1, edim(S) = n + s and the tail-set identity of
    the two Herzog-Kunz sequences.
    """
    report = ring_report(p)
    seq = report.hk.sequence
    conductor = report.conductor_degree
    a1 = report.multiplicity
    if seq[-1] >= conductor:
        raise HypothesisError(
            "hypothesis failed: conductor ideal not contained in m^2 "
            "(a_n = %d >= c_R = %d); torsion_witness applies instead" % (seq[-1], conductor)
        )
    p1, _ = normalize_parameter(p)
    report1 = ring_report(p1)
    if report1.hk.sequence != seq or report1.conductor_degree != conductor:
        raise ConsistencyError("parameter change altered the invariants")
    s, b_list = reduced_type(report1.value_semigroup, conductor, a1)
    s_gens = Parametrization(list(p1.gens) + [PowerSeries.monomial(b) for b in b_list])
    report_s = ring_report(s_gens)
    c_s = report_s.conductor_degree
    if c_s != conductor - a1:
        raise ConsistencyError("c_S = %d differs from c_R - a_1 = %d" % (c_s, conductor - a1))
    hk_s = report_s.hk
    n = len(seq)
    if len(hk_s.sequence) != n + s:
        raise ConsistencyError(
            "edim(S) = %d differs from n + s = %d" % (len(hk_s.sequence), n + s)
        )
    i0 = sum(1 for a in seq if a < conductor - a1)
    if hk_s.sequence[:i0] != seq[:i0]:
        raise ConsistencyError("low Herzog-Kunz values of S differ from those of R")
    if set(hk_s.sequence[i0:]) != set(seq[i0:]) | set(b_list):
        raise ConsistencyError("tail of the Herzog-Kunz sequence of S is not {a_i} U {b_j}")
    chosen = list(report1.hk.generators[:i0]) + [
        PowerSeries.monomial(a) for a in hk_s.sequence[i0:]
    ]
    basis_s, cond_s, _ = analyze_ring(s_gens)
    for g in chosen[i0:]:
        if not ring_member(g, basis_s, cond_s):
            raise ConsistencyError("chosen monomial generator %s not in S" % format_series(g))
    return ExtensionReport(
        b_list=tuple(b_list),
        s=s,
        S_gens=s_gens,
        c_S=c_s,
        hk_S=hk_s,
        i0=i0,
        chosen_generators=tuple(chosen),
    )
