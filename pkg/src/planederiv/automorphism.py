"""Polynomial automorphisms of the plane.

Validation, composition and inversion all go through the tame
(Jung-van der Kulk) factorization into affine and elementary factors;
since every plane automorphism is tame, a map with constant nonzero
Jacobian that admits no reduction step is not an automorphism.

Convention fixed once for the whole package: an automorphism acts on
polynomials by substitution, phi(p) = p(f, g), and ``compose(phi, psi)``
has components substitute(phi_i, psi components).  Under this convention
``compose`` matches composition of the induced point maps phi o psi.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from .errors import ArityError, DomainError, NotAnAutomorphismError
from .linalg import PolyMatrix, det_bareiss, rational_roots
from .poly import Poly, exact_divide, grlex_key, monic_grlex


@dataclass(frozen=True)
class PolyMap:
    """A polynomial endomorphism given by its images of the variables."""

    nvars: int
    components: tuple[Poly, ...]

    def __post_init__(self):
        if len(self.components) != self.nvars:
            raise ArityError("component count must equal nvars")
        for c in self.components:
            if c.nvars != self.nvars:
                raise ArityError("component has wrong variable count")

    @classmethod
    def identity(cls, nvars: int) -> "PolyMap":
        return cls(nvars, tuple(Poly.var(nvars, i) for i in range(nvars)))

    def apply_to(self, p: Poly) -> Poly:
        """Substitution action on a polynomial."""
        return p.substitute(list(self.components))

    def degree(self):
        return max(c.total_degree() for c in self.components)


def map_compose(outer: PolyMap, inner: PolyMap) -> PolyMap:
    """Components substitute(outer_i, inner); point maps outer o inner."""
    if outer.nvars != inner.nvars:
        raise ArityError("composition arity mismatch")
    return PolyMap(outer.nvars, tuple(inner.apply_to(c) for c in outer.components))


def jacobian_matrix(m: PolyMap) -> PolyMatrix:
    rows = [[m.components[i].partial(j) for j in range(m.nvars)] for i in range(m.nvars)]
    return PolyMatrix.from_rows(rows)


def jacobian_det(m: PolyMap) -> Poly:
    if m.nvars == 2:
        f, g = m.components
        return f.partial(0) * g.partial(1) - f.partial(1) * g.partial(0)
    return det_bareiss(jacobian_matrix(m))


# -- tame factors -----------------------------------------------------------


@dataclass(frozen=True)
class AffineFactor:
    """Invertible affine map x -> A x + t."""

    matrix: tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]
    translation: tuple[Fraction, Fraction]

    def to_map(self) -> PolyMap:
        (a, b), (c, d) = self.matrix
        e, f = self.translation
        x, y = Poly.var(2, 0), Poly.var(2, 1)
        return PolyMap(2, (x * a + y * b + Poly.const(2, e),
                           x * c + y * d + Poly.const(2, f)))

    def det(self) -> Fraction:
        (a, b), (c, d) = self.matrix
        return a * d - b * c

    def inverse(self) -> "AffineFactor":
        (a, b), (c, d) = self.matrix
        det = self.det()
        if det == 0:
            raise NotAnAutomorphismError("jacobian", "singular affine factor")
        ia, ib, ic, id_ = d / det, -b / det, -c / det, a / det
        e, f = self.translation
        return AffineFactor(((ia, ib), (ic, id_)),
                            (-(ia * e + ib * f), -(ic * e + id_ * f)))


@dataclass(frozen=True)
class ElementaryFactor:
    """axis 0: (x + q(y), y); axis 1: (x, y + q(x)).  q univariate."""

    axis: int
    shift: Poly  # univariate in the other variable, stored with nvars=2

    def __post_init__(self):
        other = 1 - self.axis
        if not self.shift.is_univariate_in(other):
            raise DomainError("elementary shift must be univariate in the other variable")

    def to_map(self) -> PolyMap:
        x, y = Poly.var(2, 0), Poly.var(2, 1)
        if self.axis == 0:
            return PolyMap(2, (x + self.shift, y))
        return PolyMap(2, (x, y + self.shift))

    def inverse(self) -> "ElementaryFactor":
        return ElementaryFactor(self.axis, -self.shift)


TameFactor = AffineFactor | ElementaryFactor


@dataclass(frozen=True)
class TameDecomposition:
    factors: tuple[TameFactor, ...]

    def recompose(self) -> PolyMap:
        maps = [f.to_map() for f in self.factors]
        return reduce(map_compose, maps) if maps else PolyMap.identity(2)

    def inverse_map(self) -> PolyMap:
        maps = [f.inverse().to_map() for f in reversed(self.factors)]
        return reduce(map_compose, maps) if maps else PolyMap.identity(2)


@dataclass(frozen=True)
class PlaneAuto:
    """Validated plane automorphism with its tame factorization."""

    f: Poly
    g: Poly
    jacobian: Fraction
    factorization: TameDecomposition

    @property
    def components(self) -> tuple[Poly, Poly]:
        return (self.f, self.g)

    def to_map(self) -> PolyMap:
        return PolyMap(2, (self.f, self.g))

    def apply_to(self, p: Poly) -> Poly:
        return p.substitute([self.f, self.g])

    @classmethod
    def identity(cls) -> "PlaneAuto":
        return validate(PolyMap.identity(2))

    def __str__(self):
        return f"({self.f}, {self.g})"


@dataclass(frozen=True)
class DegreeValue:
    value: int


def _affine_from_linear(f: Poly, g: Poly) -> AffineFactor:
    def lin(p: Poly):
        return (p.terms.get((1, 0), Fraction(0)), p.terms.get((0, 1), Fraction(0)),
                p.constant_term())

    a, b, e = lin(f)
    c, d, t = lin(g)
    fac = AffineFactor(((a, b), (c, d)), (e, t))
    if fac.det() == 0:
        raise NotAnAutomorphismError("stuck", "affine part singular")
    return fac


def tame_decompose(m: PolyMap) -> TameDecomposition:
    """Peel an automorphism into affine/elementary factors.

    Loop invariant: m == compose(emitted factors, current map).  Each
    elementary step cancels the higher component's leading form against a
    power of the other's, strictly decreasing total degree; failure to do
    so proves the map is not an automorphism.
    """
    if m.nvars != 2:
        raise ArityError("tame decomposition is for plane maps")
    jac = jacobian_det(m)
    if not jac.is_constant() or jac.is_zero:
        raise NotAnAutomorphismError("jacobian", f"jacobian is {jac}")
    f, g = m.components
    factors: list[TameFactor] = []
    while True:
        df, dg = f.total_degree(), g.total_degree()
        if df is None or df < 1 or dg < 1:  # constants cannot occur with jac != 0
            raise NotAnAutomorphismError("stuck", "constant component")
        if max(df, dg) == 1:
            factors.append(_affine_from_linear(f, g))
            return TameDecomposition(tuple(factors))
        if df == dg:
            c = exact_divide(f.leading_form(), g.leading_form())
            if c is None or not c.is_constant():
                raise NotAnAutomorphismError("stuck", "equal-degree leading forms not proportional")
            c = c.constant_term()
            factors.append(AffineFactor(((Fraction(1), c), (Fraction(0), Fraction(1))),
                                        (Fraction(0), Fraction(0))))
            f = f - g * c
            continue
        if df > dg:
            if df % dg:
                raise NotAnAutomorphismError("stuck", "degree of f not a multiple of degree of g")
            t = df // dg
            c = exact_divide(f.leading_form(), g.leading_form() ** t)
            if c is None or not c.is_constant():
                raise NotAnAutomorphismError("stuck", "leading form of f is not c*(lf g)^t")
            c = c.constant_term()
            factors.append(ElementaryFactor(0, Poly.from_univariate(2, 1, [0] * t + [c])))
            f = f - g**t * c
        else:
            if dg % df:
                raise NotAnAutomorphismError("stuck", "degree of g not a multiple of degree of f")
            t = dg // df
            c = exact_divide(g.leading_form(), f.leading_form() ** t)
            if c is None or not c.is_constant():
                raise NotAnAutomorphismError("stuck", "leading form of g is not c*(lf f)^t")
            c = c.constant_term()
            factors.append(ElementaryFactor(1, Poly.from_univariate(2, 0, [0] * t + [c])))
            g = g - f**t * c


def validate(m: PolyMap) -> PlaneAuto:
    """Accept a plane map as an automorphism, or raise NotAnAutomorphismError."""
    if m.nvars != 2:
        raise ArityError("validate expects a plane map")
    decomposition = tame_decompose(m)
    jac = jacobian_det(m).constant_term()
    auto = PlaneAuto(m.components[0], m.components[1], jac, decomposition)
    assert decomposition.recompose().components == m.components
    return auto


def compose(phi: PlaneAuto, psi: PlaneAuto) -> PlaneAuto:
    """Components substitute(phi_i, psi components); point maps phi o psi."""
    return validate(map_compose(phi.to_map(), psi.to_map()))


def invert(phi: PlaneAuto) -> PlaneAuto:
    return validate(phi.factorization.inverse_map())


def degree(phi: PlaneAuto) -> DegreeValue:
    return DegreeValue(int(phi.to_map().degree()))


# -- coordinate recognition ---------------------------------------------------


@dataclass(frozen=True)
class CoordinateResult:
    status: str  # "yes" | "no" | "extension_required"
    steps: tuple[TameFactor, ...] = ()
    certificate: dict | None = None


def _linear_power_form(lf: Poly):
    """Decide lf == c * (p x + q y)^d for rational p, q.

    Returns (p, q) or None together with a certificate describing the
    distinct-linear-factor structure over the algebraic closure.
    """
    d = lf.total_degree()
    # strip the y-power content
    e = min(m[1] for m in lf.terms)
    rest = Poly(2, {(m[0], m[1] - e): c for m, c in lf.terms.items()})
    if rest.is_constant():
        return (Fraction(0), Fraction(1)), None  # lf = c * y^d
    w = rest.substitute([Poly.var(1, 0), Poly.const(1, 1)])  # dehomogenize at y=1
    if e > 0:
        cert = {"reason": "distinct_linear_factors",
                "y_multiplicity": e, "other_factor_degree": int(w.total_degree())}
        return None, cert
    from .poly import _gcd_coeff_lists

    wc = w.univariate_coeffs(0)
    dwc = w.partial(0).univariate_coeffs(0)
    g = _gcd_coeff_lists(wc, dwc)
    gp = Poly.from_univariate(1, 0, g)
    sqfree = exact_divide(w, gp)
    assert sqfree is not None
    if sqfree.total_degree() >= 2:
        cert = {"reason": "squarefree_part_degree",
                "squarefree_degree": int(sqfree.total_degree()),
                "squarefree_part": str(sqfree)}
        return None, cert
    sc = sqfree.univariate_coeffs(0)
    root = -sc[0] / sc[1]
    # single distinct root r over the closure: lf = c (x - r y)^d, rational
    x, y = Poly.var(2, 0), Poly.var(2, 1)
    form = x - y * root
    c = lf.leading_coeff() / (form**d).leading_coeff()
    if lf != form**d * c:  # multiple roots collapsing differently cannot occur
        cert = {"reason": "squarefree_part_degree", "squarefree_degree": 2,
                "squarefree_part": str(sqfree)}
        return None, cert
    return (Fraction(1), -root), None


def _frame_affine(p: Fraction, q: Fraction) -> AffineFactor | None:
    """Affine substitution step sending the form p x + q y to x."""
    if p == 1 and q == 0:
        return None
    if p != 0:
        # (x - q y)/p for the first slot
        return AffineFactor(((1 / p, -q / p), (Fraction(0), Fraction(1))),
                            (Fraction(0), Fraction(0)))
    return AffineFactor(((Fraction(0), Fraction(1)), (1 / q, Fraction(0))),
                        (Fraction(0), Fraction(0)))


def _finish_affine(h: Poly) -> AffineFactor | None:
    """Affine step carrying a degree-1 polynomial to x exactly."""
    a = h.terms.get((1, 0), Fraction(0))
    b = h.terms.get((0, 1), Fraction(0))
    g = h.constant_term()
    if a != 0:
        if a == 1 and b == 0 and g == 0:
            return None
        return AffineFactor(((1 / a, -b / a), (Fraction(0), Fraction(1))),
                            (-g / a, Fraction(0)))
    return AffineFactor(((Fraction(0), Fraction(1)), (1 / b, Fraction(0))),
                        (Fraction(0), -g / b))


def _reduce_coordinate(h: Poly, steps: list[TameFactor]):
    """Greedy Newton-edge peeling; returns steps on success, certificate on failure.

    With the leading form framed to c*x^d, any polynomial obtained from x
    by substitutions admits an edge of integer slope at the vertex (d, 0)
    whose edge polynomial has a rational root; substituting that shift
    strictly decreases total degree.  Rational roots are branched over.
    """
    d = h.total_degree()
    if d <= 1:
        fin = _finish_affine(h)
        if fin is not None:
            steps.append(fin)
        return steps, None
    form, cert = _linear_power_form(h.leading_form())
    if form is None:
        return None, cert
    frame = _frame_affine(*form)
    if frame is not None:
        h = frame.to_map().apply_to(h)
        steps = steps + [frame]
    assert h.leading_form().leading_monomial() == (d, 0)
    if h.degree_in(1) < 1:
        return None, {"reason": "univariate_nonlinear", "degree": int(d)}
    slopes = [Fraction(d - m[0], m[1]) for m in h.terms if m[1] >= 1]
    t = min(slopes)
    if t.denominator != 1:
        return None, {"reason": "edge_slope_not_integer", "slope": str(t)}
    t = int(t)
    edge = {}
    for m, c in h.terms.items():
        if m[0] + t * m[1] == d:
            edge[m[1]] = c
    edge_poly = Poly(1, {(j,): c for j, c in edge.items()})
    roots = sorted(set(rational_roots(edge_poly)))
    if not roots:
        return None, {"reason": "no_rational_edge_root", "edge": str(edge_poly),
                      "slope": t}
    last_cert = None
    for mu in roots:
        if mu == 0:
            continue
        shift = ElementaryFactor(1, Poly.from_univariate(2, 0, [0] * t + [mu]))
        reduced = shift.to_map().apply_to(h)
        assert reduced.total_degree() < d
        got, cert = _reduce_coordinate(reduced, steps + [shift])
        if got is not None:
            return got, None
        last_cert = cert
    return None, (last_cert or {"reason": "no_rational_edge_root",
                                "edge": str(edge_poly), "slope": t})


def is_coordinate(f: Poly) -> CoordinateResult:
    """Decide whether f is a component of some plane automorphism.

    ``yes`` comes with elementary/affine substitution steps carrying f to x;
    ``no`` with a re-checkable certificate (leading form with at least two
    distinct linear factors over the closure, or a failed edge reduction).
    """
    if f.nvars != 2:
        raise ArityError("is_coordinate expects a bivariate polynomial")
    if f.is_constant():
        raise DomainError("constants are not coordinates")
    steps, cert = _reduce_coordinate(f, [])
    if steps is None:
        return CoordinateResult("no", (), cert)
    chain = steps
    # sanity: the steps really do carry f to x
    h = f
    for s in chain:
        h = s.to_map().apply_to(h)
    assert h == Poly.var(2, 0)
    return CoordinateResult("yes", tuple(chain), None)


def complete_coordinate(f: Poly, steps: tuple[TameFactor, ...]) -> Poly:
    """Complete a recognized coordinate f to an automorphism (f, g)."""
    chain = [s.to_map() for s in steps]
    sigma = reduce(map_compose, chain) if chain else PolyMap.identity(2)
    if f.substitute(list(sigma.components)) != Poly.var(2, 0):
        raise DomainError("steps do not carry f to x")
    inv = validate(sigma).factorization.inverse_map()
    if inv.components[0] != f:
        raise DomainError("inconsistent reduction steps")
    g = inv.components[1]
    validate(PolyMap(2, (f, g)))
    return g
