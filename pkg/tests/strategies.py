"""Hypothesis strategies shared across the test modules."""

from fractions import Fraction

import hypothesis.strategies as st

from planederiv import Derivation, Poly, PolyMap
from planederiv.automorphism import AffineFactor, ElementaryFactor

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=3)
nonzero_rationals = rationals.filter(lambda q: q != 0)
small_ints = st.integers(min_value=-4, max_value=4)


def monomials(nvars=2, max_deg=3):
    return (st.lists(st.integers(0, max_deg), min_size=nvars, max_size=nvars)
            .map(tuple)
            .filter(lambda m: sum(m) <= max_deg))


def polys(nvars=2, max_deg=3, max_terms=4):
    return st.dictionaries(monomials(nvars, max_deg), nonzero_rationals,
                           max_size=max_terms).map(lambda d: Poly(nvars, d))


def nonzero_polys(nvars=2, max_deg=3, max_terms=4):
    return polys(nvars, max_deg, max_terms).filter(lambda p: not p.is_zero)


def univariate_polys(var=0, nvars=2, max_deg=4, nonzero=True):
    def build(coeffs):
        return Poly.from_univariate(nvars, var, coeffs)

    strat = st.lists(rationals, min_size=1, max_size=max_deg + 1).map(build)
    return strat.filter(lambda p: not p.is_zero) if nonzero else strat


def derivations(nvars=2, max_deg=2, max_terms=3):
    comp = polys(nvars, max_deg, max_terms)
    return (st.tuples(*[comp] * nvars)
            .map(lambda cs: Derivation(nvars, cs))
            .filter(lambda d: not d.is_zero))


@st.composite
def affine_factors(draw):
    # L*diag*U product: invertible by construction, no rejection loop
    u1 = draw(nonzero_rationals)
    u2 = draw(nonzero_rationals)
    low = draw(rationals)
    up = draw(rationals)
    a, b = u1, u1 * up
    c, d = low * u1, low * u1 * up + u2
    e, f = draw(rationals), draw(rationals)
    return AffineFactor(((Fraction(a), Fraction(b)), (Fraction(c), Fraction(d))),
                        (Fraction(e), Fraction(f)))


@st.composite
def elementary_factors(draw, max_shift_deg=4):
    axis = draw(st.integers(0, 1))
    deg = draw(st.integers(1, max_shift_deg))
    coeffs = [draw(rationals) for _ in range(deg)] + [draw(nonzero_rationals)]
    return ElementaryFactor(axis, Poly.from_univariate(2, 1 - axis, coeffs))


@st.composite
def tame_factor_sequences(draw, max_len=5, max_shift_deg=4, degree_budget=12):
    """Factor lists whose composed degree stays within a runtime budget."""
    length = draw(st.integers(1, max_len))
    factors = []
    degree_product = 1
    for _ in range(length):
        if degree_product < degree_budget and draw(st.booleans()):
            cap = min(max_shift_deg, degree_budget // degree_product)
            if cap >= 2:
                fac = draw(elementary_factors(max_shift_deg=cap))
                degree_product *= max(1, int(fac.shift.total_degree()))
                factors.append(fac)
                continue
        factors.append(draw(affine_factors()))
    return factors


@st.composite
def tame_automorphism_maps(draw, **kwargs):
    from functools import reduce

    from planederiv.automorphism import map_compose

    factors = draw(tame_factor_sequences(**kwargs))
    return reduce(map_compose, [f.to_map() for f in factors])
