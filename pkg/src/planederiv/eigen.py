"""Darboux eigenvectors, extactic determinants and the invariant-curve census.

A Darboux pair (h, lambda) satisfies D(h) = lambda * h exactly; its zero set
is a D-stable curve.  The extactic determinant of order m vanishes on every
invariant curve of degree <= m, and identical vanishing signals an infinite
family; because the raw criterion has degenerate cases, the census only
declares an infinite family when a nonconstant bounded-degree kernel element
corroborates it, and otherwise reports the vanishing orders as evidence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .derivation import Derivation
from .errors import ArityError, BudgetError, DomainError
from .linalg import PolyMatrix, QMatrix, det_bareiss, nullspace, rank, rational_roots, resultant_wrt
from .poly import Poly, exact_divide, monic_grlex

DEFAULT_EXTACTIC_DIM = 15  # matrix size cap; order m needs (m+1)(m+2)/2


@dataclass(frozen=True)
class DarbouxPair:
    h: Poly
    lam: Poly

    def __str__(self):
        return f"(h={self.h}, lambda={self.lam})"


def normalize_eigenvector(h: Poly) -> Poly:
    return monic_grlex(h)


def darboux_verify(d: Derivation, h: Poly):
    """Return lambda with D(h) = lambda*h, or None."""
    if d.nvars != 2:
        raise ArityError("darboux_verify is for two variables")
    if h.is_constant():
        raise DomainError("eigenvector must be nonconstant")
    return exact_divide(d.apply(h), h)


def _monomials_upto(m: int) -> list[tuple[int, int]]:
    """Degree <= m, ordered by total degree then x-power descending: 1, x, y, x^2, ..."""
    out = []
    for total in range(m + 1):
        for i in range(total, -1, -1):
            out.append((i, total - i))
    return out


def extactic(d: Derivation, m: int, max_dim: int = DEFAULT_EXTACTIC_DIM) -> Poly:
    """Determinant of the iterated-derivative matrix on monomials of degree <= m.

    Every Darboux eigenvector of degree <= m divides the result exactly.
    """
    if d.nvars != 2:
        raise ArityError("extactic is for two variables")
    if m < 1:
        raise DomainError("order must be at least 1")
    n = (m + 1) * (m + 2) // 2
    if n > max_dim:
        raise BudgetError(f"extactic order {m} needs a {n}x{n} polynomial determinant "
                          f"(budget {max_dim}); raise the budget explicitly")
    row = [Poly(2, {mono: Fraction(1)}) for mono in _monomials_upto(m)]
    rows = [row]
    for _ in range(n - 1):
        row = [d.apply(p) for p in row]
        rows.append(row)
    return det_bareiss(PolyMatrix.from_rows(rows))


def extactic_profile(d: Derivation, m: int, max_dim: int = DEFAULT_EXTACTIC_DIM):
    """(determinant, rank of the extactic matrix) for degenerate-case reporting."""
    n = (m + 1) * (m + 2) // 2
    if n > max_dim:
        raise BudgetError(f"extactic order {m} exceeds budget {max_dim}")
    row = [Poly(2, {mono: Fraction(1)}) for mono in _monomials_upto(m)]
    rows = [row]
    for _ in range(n - 1):
        row = [d.apply(p) for p in row]
        rows.append(row)
    mat = PolyMatrix.from_rows(rows)
    return det_bareiss(mat), rank(mat)


def kernel_bounded(d: Derivation, m: int) -> list[Poly]:
    """Deterministic basis of {p : deg p <= m, D(p) = 0}."""
    if m < 0:
        raise DomainError("degree bound must be non-negative")
    if d.nvars != 2:
        raise ArityError("kernel_bounded is for two variables")
    domain = _monomials_upto(m)
    image_bound = m + max(0, d.max_degree() - 1)
    image = _monomials_upto(image_bound)
    index = {mono: i for i, mono in enumerate(image)}
    cols = []
    for mono in domain:
        img = d.apply(Poly(2, {mono: Fraction(1)}))
        col = [Fraction(0)] * len(image)
        for mm, c in img.terms.items():
            col[index[mm]] = c
        cols.append(col)
    rows = [[cols[j][i] for j in range(len(domain))] for i in range(len(image))]
    basis = nullspace(QMatrix.from_rows(rows))
    polys = []
    for vec in basis:
        p = Poly(2, {mono: c for mono, c in zip(domain, vec) if c})
        polys.append(p)
    return polys


# -- degree-1 eigenvector search ----------------------------------------------


@dataclass(frozen=True)
class LinearSearchResult:
    pairs: tuple[DarbouxPair, ...]
    families: tuple[str, ...]  # descriptions of 1-parameter line families
    extension_flag: bool


def _solve_two_unknown_system(polys: list[Poly]):
    """Common rational zeros of bivariate constraint polys in (c0, c1).

    Returns (points, family_flags, extension_flag); family_flags lists free
    solution components discovered (parametric lines of solutions).
    """
    polys = [p for p in polys if not p.is_zero]
    if not polys:
        return [], ["all parameter values"], False
    extension = False
    families: list[str] = []
    # variables: 0 -> c0, 1 -> c1
    only_c1 = [p for p in polys if p.degree_in(0) <= 0]
    with_c0 = [p for p in polys if p.degree_in(0) >= 1]

    def common_univariate_roots(ps: list[Poly], var: int):
        nonlocal extension
        roots = None
        for p in ps:
            r = set(rational_roots(p, var))
            roots = r if roots is None else roots & r
        # leftover irreducible factors may hide closure-only roots
        for p in ps:
            rr = rational_roots(p, var)
            deg = p.degree_in(var)
            if len(rr) < deg:
                extension = True
        return sorted(roots) if roots else []

    c1_candidates: set[Fraction] = set()
    if with_c0:
        base = with_c0[0]
        others = with_c0[1:] + only_c1
        if not others:
            # a single constraint: solution curve, not isolated points
            families.append(f"solution curve of {base}")
            return [], families, extension
        elim = []
        for other in with_c0[1:]:
            r = resultant_wrt(base, other, 0)
            elim.append(r)
        elim.extend(only_c1)
        elim = [e for e in elim if not e.is_zero]
        if not elim:
            families.append("positive-dimensional solution set")
            return [], families, extension
        c1_candidates.update(common_univariate_roots(elim, 1))
    else:
        c1_candidates.update(common_univariate_roots(only_c1, 1))

    points = []
    for c1 in sorted(c1_candidates):
        sub = [p.substitute([Poly.var(2, 0), Poly.const(2, c1)]) for p in polys]
        sub = [p for p in sub if not p.is_zero]
        if not sub:
            families.append(f"c1 = {c1}, c0 free")
            continue
        if all(p.degree_in(0) <= 0 for p in sub):
            continue  # inconsistent constants
        roots = None
        for p in sub:
            if p.degree_in(0) >= 1:
                r = set(rational_roots(p, 0))
                roots = r if roots is None else roots & r
        consistent_consts = all(p.degree_in(0) >= 1 for p in sub)
        if not consistent_consts:
            continue
        for c0 in sorted(roots or []):
            if all(p.evaluate((c0, c1)) == 0 for p in polys):
                points.append((c0, c1))
    return points, families, extension


def linear_darboux_search(d: Derivation) -> LinearSearchResult:
    """All degree-1 eigenvectors over Q, by elimination on the coefficients.

    Normalization split: h = y + c1*x + c0, then h = x + c0.  A detected
    one-parameter family of lines is reported instead of being enumerated;
    the extension flag marks eliminants whose remaining roots live only in
    an extension of Q.
    """
    if d.nvars != 2:
        raise ArityError("linear_darboux_search is for two variables")
    a, b = d.components
    pairs: list[DarbouxPair] = []
    families: list[str] = []
    extension = False

    # case h = y + c1 x + c0: divisibility == vanishing after y -> -c1 x - c0.
    # Work in the ring (x, y, c0, c1).
    big_a = _lift4(a)
    big_b = _lift4(b)
    x4, c0, c1 = Poly.var(4, 0), Poly.var(4, 2), Poly.var(4, 3)
    dh = big_a * c1 + big_b
    substituted = dh.substitute([x4, -c1 * x4 - c0, c0, c1])
    constraints = [_drop_xy(pc) for pc in substituted.coeffs_wrt(0).values()]
    points, fams, ext = _solve_two_unknown_system(constraints)
    extension = extension or ext
    for c0v, c1v in points:
        h = Poly(2, {(0, 1): Fraction(1), (1, 0): c1v, (0, 0): c0v})
        lam = darboux_verify(d, h)
        assert lam is not None
        pairs.append(DarbouxPair(normalize_eigenvector(h), lam))
    families.extend(f"lines y + c1*x + c0 with {f}" for f in fams)

    # case h = x + c0: a(-c0, y) must vanish identically.
    if a.is_zero:
        families.append("lines x + c0 for every c0 (first component vanishes)")
    else:
        neg_t = -Poly.var(1, 0)
        conds = []
        for coeff in a.coeffs_wrt(1).values():  # y-power coefficients, polys in x
            univ = Poly(1, {(m[0],): c for m, c in coeff.terms.items()})
            conds.append(univ.substitute([neg_t]))
        roots = None
        for p in conds:
            if p.is_constant():
                roots = set()
                break
            r = rational_roots(p, 0)
            roots = set(r) if roots is None else roots & set(r)
            if len(r) < p.degree_in(0):
                extension = True
        for c0v in sorted(roots or []):
            h = Poly(2, {(1, 0): Fraction(1), (0, 0): c0v})
            lam = darboux_verify(d, h)
            if lam is not None:
                pairs.append(DarbouxPair(normalize_eigenvector(h), lam))
    # dedupe by normalized eigenvector
    seen = {}
    for p in pairs:
        seen.setdefault(p.h, p)
    return LinearSearchResult(tuple(seen.values()), tuple(families), extension)


def _lift4(p: Poly) -> Poly:
    return Poly(4, {(m[0], m[1], 0, 0): c for m, c in p.terms.items()})


def _drop_xy(p: Poly) -> Poly:
    """Project a (x, y, c0, c1) poly with no x, y content to the (c0, c1) ring."""
    assert p.degree_in(1) <= 0
    return Poly(2, {(m[2], m[3]): c for m, c in p.terms.items()})


# -- census -------------------------------------------------------------------


@dataclass(frozen=True)
class NoEigenvectorUpTo:
    bound: int


@dataclass(frozen=True)
class FiniteList:
    pairs: tuple[DarbouxPair, ...]
    bound: int


@dataclass(frozen=True)
class InfiniteFamily:
    extactic_order: int


@dataclass(frozen=True)
class EigenCensus:
    bound: int
    kind: NoEigenvectorUpTo | FiniteList | InfiniteFamily
    kernel_basis: tuple[Poly, ...]
    extactic_vanishing: tuple[int, ...] = ()
    rank_profiles: dict = field(default_factory=dict)
    uncorroborated_vanishing: bool = False
    extension_flag: bool = False
    family_notes: tuple[str, ...] = ()


def census(d: Derivation, m_max: int = 3, candidates=(),
           max_dim: int = DEFAULT_EXTACTIC_DIM) -> EigenCensus:
    """Bounded-degree invariant-curve census; never claims beyond the bound."""
    if d.nvars != 2:
        raise ArityError("census is for two variables")
    if d.is_zero:
        raise DomainError("zero derivation")
    kernel = kernel_bounded(d, m_max)
    nonconstant_kernel = [p for p in kernel if not p.is_constant()]
    vanishing = []
    ranks = {}
    for m in range(1, m_max + 1):
        det, rk = extactic_profile(d, m, max_dim=max_dim)
        ranks[m] = rk
        if det.is_zero:
            vanishing.append(m)
    a, b = d.components
    line_pencil = a.is_zero or b.is_zero
    corroborated = bool(nonconstant_kernel) or line_pencil
    search = linear_darboux_search(d)
    if vanishing and corroborated:
        return EigenCensus(m_max, InfiniteFamily(vanishing[0]), tuple(kernel),
                           tuple(vanishing), ranks, False, search.extension_flag,
                           search.families)
    pairs = {p.h: p for p in search.pairs}
    for cand in candidates:
        lam = darboux_verify(d, cand)
        if lam is not None and int(cand.total_degree()) <= m_max:
            h = normalize_eigenvector(cand)
            pairs.setdefault(h, DarbouxPair(h, lam))
    if pairs:
        kind = FiniteList(tuple(pairs.values()), m_max)
    else:
        kind = NoEigenvectorUpTo(m_max)
    return EigenCensus(m_max, kind, tuple(kernel), tuple(vanishing), ranks,
                       bool(vanishing), search.extension_flag, search.families)
