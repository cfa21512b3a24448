"""Grammar, error positions, and print/parse round trips."""

import random
from fractions import Fraction

import pytest

from hkcurves.errors import ParseError
from hkcurves.parsing import parse_generators, parse_series
from hkcurves.series import PowerSeries, format_series


class TestGrammar:
    def test_polynomial(self):
        f = parse_series("t^8")
        assert f.terms() == ((8, Fraction(1)),) and f.exact

    def test_coefficients(self):
        f = parse_series("2*t^19 + t^20 + t^41")
        assert dict(f.terms()) == {19: Fraction(2), 20: Fraction(1), 41: Fraction(1)}

    def test_rational_coefficient(self):
        assert parse_series("1/2*t^3").terms() == ((3, Fraction(1, 2)),)

    def test_o_term(self):
        f = parse_series("t^3 + O(t^10)")
        assert f.prec == 10 and f.terms() == ((3, Fraction(1)),)

    def test_o_term_truncates(self):
        f = parse_series("t^3 + t^12 + O(t^10)")
        assert f.prec == 10 and f.terms() == ((3, Fraction(1)),)

    def test_parentheses_and_power(self):
        assert parse_series("(t + t^2)^2") == parse_series("t^2 + 2*t^3 + t^4")

    def test_unary_minus(self):
        assert parse_series("-t^2 + t^3") == parse_series("t^3 - t^2")

    def test_product(self):
        assert parse_series("3*t*(1 + t)") == parse_series("3*t + 3*t^2")

    def test_bare_t(self):
        assert parse_series("t").order() == 1


class TestErrors:
    def test_syntax_error_has_position(self):
        with pytest.raises(ParseError) as exc:
            parse_series("t^ + 3")
        assert exc.value.position is not None

    def test_unknown_character(self):
        with pytest.raises(ParseError):
            parse_series("t^2 + x")

    def test_trailing_garbage(self):
        with pytest.raises(ParseError):
            parse_series("t^2 )")

    def test_o_not_multiplicative(self):
        with pytest.raises(ParseError):
            parse_series("t * O(t^5)")

    def test_unit_generator_rejected(self):
        with pytest.raises(ParseError):
            parse_generators("t^2, 1 + t")

    def test_zero_generator_rejected(self):
        with pytest.raises(ParseError):
            parse_generators("t^2, 0")

    def test_empty_entry(self):
        with pytest.raises(ParseError):
            parse_generators("t^2, , t^3")


class TestRoundTrip:
    def test_reference_inputs(self):
        for text in ("t^8", "t^12 + t^14 + t^15", "2*t^19 + t^20 + t^41", "1/2*t^3"):
            f = parse_series(text)
            assert parse_series(format_series(f)) == f

    def test_random_round_trips(self):
        rng = random.Random(11)
        for _ in range(150):
            terms = {
                rng.randint(0, 30): Fraction(rng.randint(-9, 9), rng.randint(1, 7))
                for _ in range(rng.randint(1, 6))
            }
            prec = rng.choice([None, rng.randint(31, 40)])
            f = PowerSeries(terms) if prec is None else PowerSeries(terms, prec)
            assert parse_series(format_series(f)) == f

    def test_zero_forms(self):
        assert format_series(PowerSeries.zero()) == "0"
        assert parse_series("0").is_zero
        f = parse_series("O(t^5)")
        assert f.prec == 5 and not f.terms()


class TestGenerators:
    def test_two_exact_series(self):
        p = parse_generators("t^8, t^12 + t^14 + t^15")
        assert len(p) == 2 and all(g.exact for g in p)

    def test_orders(self):
        p = parse_generators("t^6, t^9+t^10, 2*t^19+t^20+t^41")
        assert p.orders == (6, 9, 19)
