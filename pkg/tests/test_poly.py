from fractions import Fraction

import pytest
from hypothesis import given, settings

from planederiv import (NEG_INF, ArityError, DomainError, Poly, exact_divide,
                        gcd2, monic_grlex, univariate_membership)
from planederiv.poly import poly_to_str

from .properties import (check_degree_multiplicative, check_exact_divide_roundtrip,
                         check_ring_axioms, check_substitution_composition)
from .strategies import nonzero_polys, polys, rationals, univariate_polys

x, y = Poly.var(2, 0), Poly.var(2, 1)


class TestArithmetic:
    def test_add_cancel(self):
        assert (x + y) + (x - y) == 2 * x

    def test_mul_difference_of_squares(self):
        assert (x + y) * (x - y) == x**2 - y**2

    def test_pow_binomial(self):
        # oracle: repeated multiplication
        expected = Poly.const(2, 1)
        for _ in range(3):
            expected = expected * (x + 1)
        assert (x + 1) ** 3 == expected
        assert (x + 1) ** 3 == x**3 + 3 * x**2 + 3 * x + 1

    def test_arity_mismatch(self):
        with pytest.raises(ArityError):
            x + Poly.var(3, 0)


class TestPartial:
    def test_basic(self):
        assert (x**2 * y).partial(0) == 2 * x * y
        assert (x**2).partial(1) == Poly.zero(2)

    def test_expand_then_differentiate(self):
        # oracle: expand, then differentiate termwise
        p = (x + y) ** 3
        manual = Poly.zero(2)
        for mono, c in p.terms.items():
            if mono[0]:
                manual = manual + Poly(2, {(mono[0] - 1, mono[1]): c * mono[0]})
        assert p.partial(0) == manual
        assert p.partial(0) == 3 * (x + y) ** 2

    def test_index_out_of_range(self):
        with pytest.raises(DomainError):
            x.partial(2)


class TestSubstitute:
    def test_swap(self):
        assert (x**2 + y).substitute([y, x]) == y**2 + x

    def test_identity_like(self):
        assert x.substitute([x + y**2, y]) == x + y**2

    def test_expand_by_hand(self):
        assert (x * y).substitute([x + 1, y - 1]) == x * y - x + y - 1

    def test_arity(self):
        with pytest.raises(ArityError):
            x.substitute([x])


class TestDegreeAndForms:
    def test_total_degree(self):
        assert (x**2 * y + y).total_degree() == 3
        assert Poly.zero(2).total_degree() == NEG_INF
        assert ((x + y) ** 5).total_degree() == 5

    def test_leading_form(self):
        assert (x**2 + x + 1).leading_form() == x**2
        assert (x**2 * y + x * y**2 + x).leading_form() == x**2 * y + x * y**2
        assert ((x + y) ** 2 + x).leading_form() == x**2 + 2 * x * y + y**2

    def test_leading_form_zero(self):
        with pytest.raises(DomainError):
            Poly.zero(2).leading_form()


class TestGcd2:
    def test_examples(self):
        assert gcd2(x**2 - y**2, x - y) == x - y
        assert gcd2(x * y, x**2) == x
        assert gcd2(x**2 + 2 * x * y + y**2, x**2 - y**2) == x + y

    def test_zero_cases(self):
        assert gcd2(Poly.zero(2), 2 * x) == x
        with pytest.raises(DomainError):
            gcd2(Poly.zero(2), Poly.zero(2))

    @settings(max_examples=60, deadline=None)
    @given(nonzero_polys(max_deg=2, max_terms=3), nonzero_polys(max_deg=2, max_terms=3),
           nonzero_polys(max_deg=2, max_terms=2))
    def test_common_factor_is_associate(self, p, q, r):
        g1 = gcd2(p * r, q * r)
        g2 = gcd2(p, q) * r
        ratio = exact_divide(g2, g1)
        assert ratio is not None and ratio.is_constant() and not ratio.is_zero


class TestExactDivide:
    def test_examples(self):
        assert exact_divide(x**2 - y**2, x - y) == x + y
        assert exact_divide(x**2 + 1, x) is None
        assert exact_divide(x**3 * y + x, x) == x**2 * y + 1

    def test_zero_divisor(self):
        with pytest.raises(DomainError):
            exact_divide(x, Poly.zero(2))

    @settings(max_examples=60, deadline=None)
    @given(polys(max_deg=3), nonzero_polys(max_deg=3))
    def test_roundtrip(self, p, d):
        check_exact_divide_roundtrip(p, d)


class TestUnivariateMembership:
    def test_examples(self):
        assert univariate_membership((x - y) ** 2 + 3, x - y) == [3, 0, 1]
        assert univariate_membership(x, x**2) is None
        # oracle: (x^2+1)^2 + 1 expands to x^4 + 2 x^2 + 2
        assert (x**2 + 1) ** 2 + 1 == x**4 + 2 * x**2 + 2
        assert univariate_membership(x**4 + 2 * x**2 + 2, x**2 + 1) == [1, 0, 1]

    def test_constant_target_rejected(self):
        with pytest.raises(DomainError):
            univariate_membership(x, Poly.const(2, 5))

    @settings(max_examples=60, deadline=None)
    @given(st_coeffs=univariate_polys(var=0, nvars=1, max_deg=4, nonzero=False),
           f=nonzero_polys(max_deg=2, max_terms=3).filter(lambda p: not p.is_constant()))
    def test_recovers_random_polynomial(self, st_coeffs, f):
        coeffs = st_coeffs.univariate_coeffs(0) if not st_coeffs.is_zero else []
        c = Poly.zero(2)
        for k, ck in enumerate(coeffs):
            c = c + f**k * ck
        got = univariate_membership(c, f)
        assert got is not None
        rebuilt = Poly.zero(2)
        for k, ck in enumerate(got):
            rebuilt = rebuilt + f**k * ck
        assert rebuilt == c


class TestRingProperties:
    @settings(max_examples=60, deadline=None)
    @given(polys(), polys(), polys())
    def test_ring_axioms(self, p, q, r):
        check_ring_axioms(p, q, r)

    @settings(max_examples=60, deadline=None)
    @given(polys(max_deg=2, max_terms=3),
           polys(max_deg=2, max_terms=2), polys(max_deg=2, max_terms=2),
           polys(max_deg=2, max_terms=2), polys(max_deg=2, max_terms=2))
    def test_substitution_composition(self, p, a1, a2, b1, b2):
        check_substitution_composition(p, [a1, a2], [b1, b2])

    @settings(max_examples=60, deadline=None)
    @given(nonzero_polys(), nonzero_polys())
    def test_degree_multiplicative(self, p, q):
        check_degree_multiplicative(p, q)


class TestPrinting:
    def test_canonical_strings(self):
        assert poly_to_str(Poly.zero(2)) == "0"
        assert poly_to_str(-x) == "-x"
        assert poly_to_str(x * Fraction(3, 2) - 1) == "3/2*x - 1"
        assert poly_to_str(x**2 * y + y) == "x^2*y + y"

    def test_monic(self):
        assert monic_grlex(2 * x + 4 * y) == x + 2 * y
