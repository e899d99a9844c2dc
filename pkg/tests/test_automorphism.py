from fractions import Fraction

import pytest
from hypothesis import given, settings

from planederiv import (NotAnAutomorphismError, Poly, PolyMap, complete_coordinate,
                        compose, degree, invert, is_coordinate, validate)
from planederiv.automorphism import (AffineFactor, ElementaryFactor, jacobian_det,
                                     map_compose, tame_decompose)

from .properties import (check_conjugate_inverse_roundtrip, check_degree_submultiplicative,
                         check_invert_compose, check_jacobian_multiplicative,
                         check_tame_roundtrip)
from .strategies import tame_automorphism_maps

x, y = Poly.var(2, 0), Poly.var(2, 1)


class TestValidate:
    def test_elementary(self):
        phi = validate(PolyMap(2, (x + y**2, y)))
        assert phi.jacobian == 1
        assert len(phi.factorization.factors) >= 1

    def test_nonconstant_jacobian(self):
        with pytest.raises(NotAnAutomorphismError) as exc:
            validate(PolyMap(2, (x**2, y)))
        assert exc.value.stage == "jacobian"

    def test_keller_like_composition(self):
        # oracle: compose the stated factors and compare against the pair
        inner = validate(PolyMap(2, (x + y**2, y)))
        outer = validate(PolyMap(2, (y + x**3, x)))
        expected = compose(outer, inner)
        assert expected.components == (y + (x + y**2) ** 3, x + y**2)
        direct = validate(PolyMap(2, (y + (x + y**2) ** 3, x + y**2)))
        assert direct.factorization.recompose().components == direct.components

    def test_degenerate_map_stuck(self):
        with pytest.raises(NotAnAutomorphismError):
            validate(PolyMap(2, (x + y, x + y)))


class TestCompose:
    def test_substitution_convention(self):
        phi = validate(PolyMap(2, (x, y + x**2)))
        psi = validate(PolyMap(2, (x + 1, y)))
        got = compose(phi, psi)
        assert got.components == (x + 1, y + (x + 1) ** 2)

    def test_identity_neutral(self):
        phi = validate(PolyMap(2, (x, y + x**2)))
        ident = validate(PolyMap.identity(2))
        assert compose(phi, ident).components == phi.components
        assert compose(ident, phi).components == phi.components

    def test_degree_example(self):
        phi = validate(PolyMap(2, (x, y + x**2)))
        psi = validate(PolyMap(2, (x + y**2, y)))
        assert degree(compose(phi, psi)).value == 4


class TestTameDecompose:
    def test_single_elementary(self):
        factors = tame_decompose(PolyMap(2, (x, y + x**3))).factors
        assert len(factors) == 2  # shift then identity affine
        assert isinstance(factors[0], ElementaryFactor)

    def test_affine(self):
        factors = tame_decompose(PolyMap(2, (2 * x + y + 1, x - y))).factors
        assert len(factors) == 1
        assert isinstance(factors[0], AffineFactor)

    @settings(max_examples=60, deadline=None)
    @given(tame_automorphism_maps())
    def test_roundtrip(self, m):
        check_tame_roundtrip(m)


class TestInvert:
    def test_examples(self):
        phi = validate(PolyMap(2, (x, y + x**2)))
        assert invert(phi).components == (x, y - x**2)
        aff = validate(PolyMap(2, (2 * x + 1, 3 * y)))
        assert invert(aff).components == (x * Fraction(1, 2) - Fraction(1, 2),
                                          y * Fraction(1, 3))

    def test_big_example(self):
        phi = validate(PolyMap(2, (y + (x + y**2) ** 3, x + y**2)))
        check_invert_compose(phi)

    @settings(max_examples=40, deadline=None)
    @given(tame_automorphism_maps())
    def test_inversion_properties(self, m):
        check_invert_compose(validate(m))

    @settings(max_examples=40, deadline=None)
    @given(tame_automorphism_maps(max_len=3, degree_budget=6),
           tame_automorphism_maps(max_len=3, degree_budget=6))
    def test_submultiplicativity_and_jacobian(self, m1, m2):
        phi, psi = validate(m1), validate(m2)
        check_degree_submultiplicative(phi, psi)
        check_jacobian_multiplicative(phi, psi)


class TestCoordinateRecognition:
    def test_affine_coordinate(self):
        assert is_coordinate(x - y).status == "yes"

    def test_one_elementary(self):
        assert is_coordinate(x + y**3).status == "yes"

    def test_circle_not_coordinate(self):
        res = is_coordinate(x**2 + y**2)
        assert res.status == "no"
        assert res.certificate["reason"] == "squarefree_part_degree"
        assert res.certificate["squarefree_degree"] == 2

    def test_univariate_square(self):
        assert is_coordinate(x**2).status == "no"

    def test_cusp(self):
        assert is_coordinate(y**2 + x**3).status == "no"

    def test_towers(self):
        for f in (y + (x + y**2) ** 3, x + (y + x**5) ** 2, x + (y + x**2) ** 2 + (y + x**2) ** 3):
            assert is_coordinate(f).status == "yes"

    def test_constant_rejected(self):
        with pytest.raises(Exception):
            is_coordinate(Poly.const(2, 3))

    @settings(max_examples=50, deadline=None)
    @given(tame_automorphism_maps())
    def test_components_are_recognized(self, m):
        res = is_coordinate(m.components[0])
        assert res.status == "yes"
        g = complete_coordinate(m.components[0], res.steps)
        completed = validate(PolyMap(2, (m.components[0], g)))
        assert completed.factorization.recompose().components == completed.components


class TestCompleteCoordinate:
    def test_examples(self):
        assert complete_coordinate(x - y, is_coordinate(x - y).steps) == y
        assert complete_coordinate(x + y**3, is_coordinate(x + y**3).steps) == y

    def test_validates(self):
        f = y + (x + y**2) ** 3
        g = complete_coordinate(f, is_coordinate(f).steps)
        validate(PolyMap(2, (f, g)))


class TestJacobian:
    def test_three_variable_determinant(self):
        x1, x2, x3 = (Poly.var(3, i) for i in range(3))
        m = PolyMap(3, (x1 + x3**4, x2, x3))
        assert jacobian_det(m) == Poly.const(3, 1)
