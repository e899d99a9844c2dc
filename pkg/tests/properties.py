"""Concrete property checkers, shared between module tests and acceptance.

Each function takes fully concrete inputs and raises AssertionError on
violation, so the same checks can run under different hypothesis budgets.
"""

from fractions import Fraction

from planederiv import (Derivation, Poly, PolyMap, compose, conjugate, degree,
                        invert, parse_poly, validate)
from planederiv.automorphism import map_compose, tame_decompose, TameDecomposition
from planederiv.linalg import QMatrix, PolyMatrix, det_bareiss
from planederiv.poly import poly_to_str


def check_ring_axioms(p: Poly, q: Poly, r: Poly):
    assert (p + q) + r == p + (q + r)
    assert p + q == q + p
    assert (p * q) * r == p * (q * r)
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r


def check_substitution_composition(p: Poly, amap: list[Poly], bmap: list[Poly]):
    composed = [a.substitute(bmap) for a in amap]
    assert p.substitute(amap).substitute(bmap) == p.substitute(composed)


def check_degree_multiplicative(p: Poly, q: Poly):
    assert (p * q).total_degree() == p.total_degree() + q.total_degree()


def check_exact_divide_roundtrip(p: Poly, d: Poly):
    from planederiv import exact_divide

    assert exact_divide(p * d, d) == p


def check_leibniz(d: Derivation, p: Poly, q: Poly):
    assert d.apply(p * q) == d.apply(p) * q + p * d.apply(q)


def check_tame_roundtrip(m: PolyMap):
    decomposition = tame_decompose(m)
    assert decomposition.recompose().components == m.components


def check_degree_submultiplicative(phi, psi):
    assert degree(compose(phi, psi)).value <= degree(phi).value * degree(psi).value


def check_invert_compose(phi):
    inv = invert(phi)
    ident = (Poly.var(2, 0), Poly.var(2, 1))
    assert compose(phi, inv).components == ident
    assert compose(inv, phi).components == ident
    assert invert(inv).components == phi.components


def check_jacobian_multiplicative(phi, psi):
    assert compose(phi, psi).jacobian == phi.jacobian * psi.jacobian


def check_conjugation_functorial(phi, psi, d: Derivation):
    lhs = conjugate(compose(phi, psi), d)
    rhs = conjugate(phi, conjugate(psi, d))
    assert lhs.components == rhs.components


def check_conjugate_inverse_roundtrip(phi, d: Derivation):
    back = conjugate(phi, conjugate(invert(phi), d))
    assert back.components == d.components


def det_cofactor(rows):
    """Independent determinant oracle by first-row cofactor expansion."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = None
    for j in range(n):
        minor = [[rows[i][k] for k in range(n) if k != j] for i in range(1, n)]
        term = rows[0][j] * det_cofactor(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def check_bareiss_vs_cofactor_q(rows):
    assert det_bareiss(QMatrix.from_rows(rows)) == det_cofactor(
        [[Fraction(v) for v in row] for row in rows])


def check_bareiss_vs_cofactor_poly(rows):
    assert det_bareiss(PolyMatrix.from_rows(rows)) == det_cofactor(rows)


def check_parse_print_roundtrip(p: Poly):
    assert parse_poly(poly_to_str(p), p.nvars) == p
