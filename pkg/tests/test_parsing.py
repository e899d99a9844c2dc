import pytest
from hypothesis import given, settings

from planederiv import ParseError, Poly, parse_poly
from planederiv.poly import poly_to_str

from .properties import check_parse_print_roundtrip
from .strategies import polys

x, y = Poly.var(2, 0), Poly.var(2, 1)


class TestGrammar:
    def test_expansion(self):
        assert parse_poly("x^2 + 2*x*y + y^2", 2) == (x + y) ** 2

    def test_rational_literal(self):
        p = parse_poly("3/2*x - 1", 2)
        assert p * 2 == 3 * x - 2

    def test_parenthesized(self):
        assert parse_poly("x*(x+y)^2", 2) == x**3 + 2 * x**2 * y + x * y**2

    def test_unary_minus(self):
        assert parse_poly("-x^2", 2) == -(x**2)
        assert parse_poly("--x", 2) == x

    def test_numbered_variables(self):
        p = parse_poly("x1*x3 + x2", 3)
        assert p == Poly.var(3, 0) * Poly.var(3, 2) + Poly.var(3, 1)
        assert parse_poly("x1", 2) == x

    def test_zero_and_constants(self):
        assert parse_poly("0", 2).is_zero
        assert parse_poly("7/3", 1) == Poly.const(1, "7/3")


class TestErrors:
    def test_empty(self):
        with pytest.raises(ParseError):
            parse_poly("", 2)
        with pytest.raises(ParseError):
            parse_poly("   ", 2)

    def test_unknown_variable(self):
        with pytest.raises(ParseError) as exc:
            parse_poly("x + z", 2)
        assert exc.value.position == 4

    def test_missing_star(self):
        with pytest.raises(ParseError):
            parse_poly("2x", 2)

    def test_negative_exponent(self):
        with pytest.raises(ParseError):
            parse_poly("x^-2", 2)

    def test_fractional_exponent(self):
        with pytest.raises(ParseError):
            parse_poly("x^1/2", 2)

    def test_unbalanced(self):
        with pytest.raises(ParseError) as exc:
            parse_poly("(x + y", 2)
        assert "expected" in str(exc.value)

    def test_position_reported(self):
        with pytest.raises(ParseError) as exc:
            parse_poly("x + + y", 2)
        assert exc.value.position == 4


class TestRoundTrip:
    @settings(max_examples=100, deadline=None)
    @given(polys(nvars=2, max_deg=4, max_terms=5))
    def test_two_variables(self, p):
        check_parse_print_roundtrip(p)

    @settings(max_examples=40, deadline=None)
    @given(polys(nvars=3, max_deg=3, max_terms=4))
    def test_three_variables(self, p):
        check_parse_print_roundtrip(p)

    @settings(max_examples=40, deadline=None)
    @given(polys(nvars=1, max_deg=4, max_terms=4))
    def test_one_variable(self, p):
        check_parse_print_roundtrip(p)
