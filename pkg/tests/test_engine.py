"""Reduction, closure, the adaptive driver, and ideal tables."""

import itertools
import math
import random
from fractions import Fraction

import pytest

from hkcurves.engine import (
    Parametrization,
    analyze_ring,
    ideal_closure,
    ideal_member,
    ideal_min_generators,
    reduce,
    ring_closure,
    ring_member,
)
from hkcurves.errors import GcdError, PrecisionError
from hkcurves.parsing import parse_generators, parse_series
from hkcurves.series import PowerSeries
from oracles import span_orders

RING_A = "t^8, t^12 + t^14 + t^15"
RING_B = "t^6, t^9 + t^10, 2*t^19 + t^20 + t^41"
RING_C = "t^5, t^7, t^12 + t^23"


def S(text):
    return parse_series(text)


class TestReduce:
    def test_reduction_reveals_combination_value(self):
        p = parse_generators("t^6, t^9 + t^10")
        basis = ring_closure(p, 40)
        f = S("t^18 + 2*t^19 + t^20")  # x2^2
        r, used = reduce(f, basis)
        # the first cancellation (against t^18 = x1^3) leaves 2t^19 + t^20
        assert used[0][0] == 18
        after_first = f.axpy(-used[0][1], basis.rep(18))
        assert after_first.terms() == S("2*t^19 + t^20").terms()
        assert 19 in basis.reps

    def test_self_reduction(self):
        p = parse_generators(RING_B)
        basis, _, _ = analyze_ring(p)
        for v in basis.keys():
            r, _ = reduce(basis.rep(v), basis)
            assert not r.terms()

    def test_untouched_outside_value_set(self):
        p = parse_generators("t^5, t^7")
        basis = ring_closure(p, 40)
        r, used = reduce(S("t^23"), basis)
        assert used == [] and r == S("t^23")
        assert 23 not in basis.reps

    def test_precision_exhausted(self):
        p = parse_generators("t^2, t^3")
        basis = ring_closure(p, 10)
        with pytest.raises(PrecisionError):
            reduce(S("t^2 + O(t^6)"), basis)


class TestRingClosure:
    def test_key_set_ring_a(self):
        p = parse_generators(RING_A)
        basis = ring_closure(p, 70)
        expected = {v for v in span_orders(list(p.gens), 70)}
        assert set(basis.reps) == expected
        assert 26 in basis.reps and 53 in basis.reps

    def test_key_set_ring_b(self):
        from hkcurves.semigroup import sg_close

        p = parse_generators(RING_B)
        basis = ring_closure(p, 60)
        assert set(basis.reps) == sg_close({6, 9, 19, 41}, 59) - {0}

    def test_regular_ring(self):
        basis = ring_closure(parse_generators("t"), 17)
        assert set(basis.reps) == set(range(1, 17))

    def test_keys_sum_closed(self):
        p = parse_generators(RING_C)
        basis = ring_closure(p, 50)
        keys = set(basis.reps)
        for u in keys:
            for v in keys:
                if u + v < 50:
                    assert u + v in keys

    def test_canonical_under_permutation(self):
        p = parse_generators(RING_B)
        tables = []
        for perm in itertools.permutations(p.gens):
            basis = ring_closure(Parametrization(perm), 55)
            tables.append({v: basis.rep(v).terms() for v in basis.reps})
        assert all(t == tables[0] for t in tables)

    def test_insufficient_input_precision(self):
        p = Parametrization([S("t^2 + O(t^8)"), S("t^3 + O(t^8)")])
        with pytest.raises(PrecisionError):
            ring_closure(p, 20)


class TestAnalyzeRing:
    def test_ring_b(self):
        basis, conductor, a1 = analyze_ring(parse_generators(RING_B))
        assert (conductor, a1) == (36, 6)
        assert basis.precision >= conductor + 2 * a1 + 1

    def test_regular(self):
        basis, conductor, a1 = analyze_ring(parse_generators("t"))
        assert (conductor, a1) == (0, 1)

    def test_ring_c(self):
        basis, conductor, a1 = analyze_ring(parse_generators(RING_C))
        assert (conductor, a1) == (19, 5)

    def test_gcd_error(self):
        with pytest.raises(GcdError):
            analyze_ring(parse_generators("t^2, t^4"), max_precision=256)

    def test_single_generator_gcd(self):
        with pytest.raises(GcdError):
            analyze_ring(parse_generators("t^3"), max_precision=128)

    def test_precision_override_is_floor(self):
        basis, conductor, a1 = analyze_ring(parse_generators("t^2, t^3"), precision=64)
        assert basis.precision == 64 and conductor == 2

    def test_finite_input_precision_insufficient(self):
        p = Parametrization([S("t^5 + O(t^9)"), S("t^7 + O(t^9)")])
        with pytest.raises(PrecisionError):
            analyze_ring(p)


class TestRingMember:
    def test_tail_monomial_member(self):
        basis, conductor, _ = analyze_ring(parse_generators(RING_C))
        assert ring_member(S("t^23"), basis, conductor) is True

    def test_not_member_after_truncation(self):
        basis, conductor, _ = analyze_ring(parse_generators("t^5, t^7, t^12"))
        assert ring_member(S("t^23"), basis, conductor) is False

    def test_zero_member(self):
        basis, conductor, _ = analyze_ring(parse_generators("t^2, t^3"))
        assert ring_member(PowerSeries.zero(), basis, conductor) is True

    def test_generators_member(self):
        for text in (RING_A, RING_B, RING_C):
            p = parse_generators(text)
            basis, conductor, _ = analyze_ring(p)
            assert all(ring_member(g, basis, conductor) for g in p.gens)

    def test_below_conductor_not_member(self):
        for text in (RING_A, RING_B, RING_C):
            basis, conductor, _ = analyze_ring(parse_generators(text))
            probe = PowerSeries.monomial(conductor - 1) + PowerSeries.monomial(conductor + 3)
            assert ring_member(probe, basis, conductor) is False

    def test_constants_member(self):
        basis, conductor, _ = analyze_ring(parse_generators("t^2, t^3"))
        assert ring_member(S("5 + t^2"), basis, conductor) is True
        assert ring_member(S("5 + t"), basis, conductor) is False


class TestIdealClosure:
    def test_maximal_ideal(self):
        from hkcurves.semigroup import sg_close

        p = parse_generators(RING_B)
        basis, conductor, _ = analyze_ring(p)
        m = ideal_closure(list(p.gens), basis)
        assert set(m.reps) == sg_close({6, 9, 19, 41}, basis.precision - 1) - {0}
        # the ideal table of m agrees with the ring table (same canonical form)
        assert {v: m.rep(v).terms() for v in m.reps} == {
            v: basis.rep(v).terms() for v in basis.reps
        }

    def test_conductor_ideal(self):
        p = parse_generators(RING_B)
        basis, conductor, a1 = analyze_ring(p)
        igens = [PowerSeries.monomial(conductor + i) for i in range(a1)]
        cond = ideal_closure(igens, basis)
        assert set(cond.reps) == set(range(conductor, basis.precision))

    def test_principal_ideal(self):
        p = parse_generators("t^2, t^3")
        basis, conductor, _ = analyze_ring(p)
        x1 = p.gens[0]
        principal = ideal_closure([x1], basis)
        # v((x1)) = 2 + V(R): brute-force products x1 * monomials
        members = {2 + v for v in [0, *basis.reps] if 2 + v < basis.precision}
        assert set(principal.reps) == members


class TestIdealMember:
    def test_high_order_in_msquare(self):
        p = parse_generators(RING_B)
        basis, conductor, a1 = analyze_ring(p)
        gens = list(p.gens)
        m2 = ideal_closure([a * b for a in gens for b in gens], basis)
        f = PowerSeries.monomial(min(m2.reps) + conductor + 2)
        assert ideal_member(f, m2, min(m2.reps), conductor) is True

    def test_zero_member(self):
        p = parse_generators(RING_B)
        basis, conductor, _ = analyze_ring(p)
        m2 = ideal_closure([a * b for a in p.gens for b in p.gens], basis)
        assert ideal_member(PowerSeries.zero(), m2, min(m2.reps), conductor) is True

    def test_t19_not_in_msquare(self):
        p = parse_generators(RING_B)
        basis, conductor, _ = analyze_ring(p)
        m2 = ideal_closure([a * b for a in p.gens for b in p.gens], basis)
        assert 19 in m2.reps  # 2t^19 + t^20 = x2^2 - x1^3 lies in m^2
        # but the pure monomial t^19 reduces to an order-20 remainder and 20
        # is not a value at all, so t^19 is not in m^2
        r, used = reduce(S("t^19"), m2)
        assert used[0][0] == 19 and r.order() == 20
        assert ideal_member(S("t^19"), m2, min(m2.reps), conductor) is False

    def test_against_brute_force_span(self):
        from oracles import module_span_orders

        for text in ("t^2, t^3", RING_B):
            p = parse_generators(text)
            basis, conductor, _ = analyze_ring(p)
            gens = list(p.gens)
            n = len(gens)
            prods = [gens[i] * gens[j] for i in range(n) for j in range(i, n)]
            m2 = ideal_closure(prods, basis)
            assert sorted(m2.reps) == module_span_orders(prods, gens, basis.precision)


class TestIdealMinGenerators:
    def _min_gens(self, text):
        p = parse_generators(text)
        basis, conductor, _ = analyze_ring(p)
        gens = list(p.gens)
        m2 = ideal_closure([gens[i] * gens[j] for i in range(len(gens)) for j in range(i, len(gens))], basis)
        return [v for v, _ in ideal_min_generators(basis.as_ideal(), m2)]

    def test_ring_a(self):
        assert self._min_gens(RING_A) == [8, 12]

    def test_ring_b(self):
        assert self._min_gens(RING_B) == [6, 9, 41]

    def test_unit_ideal(self):
        p = parse_generators("t^2, t^3")
        basis, conductor, _ = analyze_ring(p)
        unit = ideal_closure([PowerSeries.one()], basis)
        m_ideal = ideal_closure(list(p.gens), basis)
        assert [v for v, _ in ideal_min_generators(unit, m_ideal)] == [0]


class TestFractionalShift:
    def test_conductor_over_x1_presentation(self):
        # C_R/x1 carried as shift a1 plus the integral table of C_R; the
        # classical presentation (t^c, ..., t^(c+a1-1))*R appears as
        # v(C_R) \ v(m*C_R)
        p = parse_generators(RING_B)
        basis, conductor, a1 = analyze_ring(p)
        igens = [PowerSeries.monomial(conductor + i) for i in range(a1)]
        cond_ideal = ideal_closure(igens, basis, shift=a1)
        assert cond_ideal.shift == a1
        assert set(cond_ideal.reps) == set(range(conductor, basis.precision))
        m_cond = ideal_closure([g * h for g in igens for h in p.gens], basis, shift=a1)
        vals = [v for v, _ in ideal_min_generators(cond_ideal, m_cond)]
        assert vals == list(range(conductor, conductor + a1))
        # fractional valuations are the stored keys minus the shift
        assert [v - cond_ideal.shift for v in vals] == list(
            range(conductor - a1, conductor)
        )


class TestWindowConsistency:
    def test_tables_agree_across_precisions(self):
        for text in (RING_B, RING_C):
            p = parse_generators(text)
            small = ring_closure(p, 40)
            large = ring_closure(p, 90)
            assert {v for v in large.reps if v < 40} == set(small.reps)
            for v in small.reps:
                assert large.rep(v).clip(40).terms() == small.rep(v).terms()


class TestFinitePrecisionInputs:
    def test_declared_precision_suffices(self):
        exact = parse_generators(RING_C)
        limited = Parametrization([g.clip(60) for g in exact.gens])
        be, ce, ae = analyze_ring(exact)
        bl, cl, al = analyze_ring(limited)
        assert (ce, ae) == (cl, al) == (19, 5)
        assert set(bl.reps) == {v for v in be.reps if v < bl.precision}


class TestExpressionTracking:
    def test_reps_match_their_certificates(self):
        p = parse_generators("t^6, t^9 + t^10")
        basis = ring_closure(p, 30, track_exprs=True)
        for v in basis.keys():
            rebuilt = basis.exprs[v].evaluate(list(p.gens))
            assert rebuilt.clip(30).terms() == basis.rep(v).terms()


class TestFloorDifferential:
    # expression tracking runs the closure without the monomial-floor shortcuts,
    # so it doubles as the unoptimized reference: tables must be identical
    def test_optimized_matches_reference_on_samples(self):
        for text in (RING_A, RING_B, RING_C, "t^2, t^3", "t^4, t^6 + t^7"):
            p = parse_generators(text)
            fast = ring_closure(p, 45)
            slow = ring_closure(p, 45, track_exprs=True)
            assert set(fast.reps) == set(slow.reps)
            for v in fast.reps:
                assert fast.rep(v).terms() == slow.rep(v).terms()

    def test_optimized_matches_reference_randomized(self):
        rng = random.Random(71)
        done = 0
        while done < 10:
            k = rng.randint(2, 3)
            orders = [rng.randint(2, 8) for _ in range(k)]
            if math.gcd(*orders) != 1:
                continue
            gens = []
            for a in orders:
                terms = {a: Fraction(rng.randint(1, 2))}
                for _ in range(rng.randint(0, 2)):
                    terms[rng.randint(a + 1, 11)] = Fraction(rng.randint(-2, 2))
                gens.append(PowerSeries(terms))
            p = Parametrization(gens)
            fast = ring_closure(p, 40)
            slow = ring_closure(p, 40, track_exprs=True)
            assert {v: fast.rep(v).terms() for v in fast.reps} == {
                v: slow.rep(v).terms() for v in slow.reps
            }
            done += 1

    def test_ideal_floor_matches_reference(self):
        for text in (RING_B, "t^2, t^3"):
            p = parse_generators(text)
            basis, conductor, _ = analyze_ring(p)
            gens = list(p.gens)
            prods = [gens[i] * gens[j] for i in range(len(gens)) for j in range(i, len(gens))]
            with_floor = ideal_closure(prods, basis)
            without = ideal_closure(prods, basis.with_conductor(None))
            assert {v: with_floor.rep(v).terms() for v in with_floor.reps} == {
                v: without.rep(v).terms() for v in without.reps
            }


class TestOracleEquivalence:
    def test_random_parametrizations(self):
        rng = random.Random(31)
        done = 0
        while done < 12:
            k = rng.randint(2, 3)
            orders = [rng.randint(2, 9) for _ in range(k)]
            if math.gcd(*orders) != 1:
                continue
            gens = []
            for a in orders:
                terms = {a: Fraction(rng.randint(1, 3))}
                for _ in range(rng.randint(0, 2)):
                    e = rng.randint(a + 1, 12)
                    terms[e] = Fraction(rng.randint(-3, 3))
                gens.append(PowerSeries(terms))
            p = Parametrization(gens)
            basis = ring_closure(p, 60)
            assert sorted(basis.reps) == span_orders(gens, 60)
            done += 1
