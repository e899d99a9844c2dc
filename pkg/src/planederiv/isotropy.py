"""Isotropy machinery: commutation, conjugation, triangular solvers, sweeps.

The automorphisms commuting with a derivation D form its isotropy group
under conjugation.  For locally nilpotent D the group contains commuting
maps of arbitrarily large degree (exponentials of kernel multiples of D);
otherwise degree sweeps over the de Jonquieres (triangular) class
(alpha x + beta, gamma y + P(x)) locate all triangular members over Q.
Sweep completeness is scoped to that class and labeled as such in results.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import automorphism as am
from . import eigen as eig
from .derivation import (Derivation, Lnd, LndVerdict, NilpotentWithin, NotLnd,
                         exp_auto, lnd_decide2, lnd_semidecide)
from .errors import ArityError, BudgetError, DomainError, NotAnAutomorphismError
from .linalg import QMatrix, rational_roots, solve_affine
from .poly import Poly, eval_univariate, _gcd_coeff_lists

TRIANGULAR_CLASS = ("de Jonquieres triangular class (alpha*x+beta, gamma*y+P(x)) over Q; "
                    "completeness is scoped to this class")


# -- commutation and conjugation ------------------------------------------------


@dataclass(frozen=True)
class CommutationReport:
    commutes: bool
    residuals: tuple[Poly, ...]
    caveats: tuple[str, ...] = ()


def is_in_isotropy(m, d: Derivation) -> CommutationReport:
    """Check phi(D(x_i)) == D(phi(x_i)) for every variable.

    Two-variable maps must validate as automorphisms; in more variables a
    constant nonzero Jacobian is required and reported as a caveat.
    """
    if isinstance(m, am.PlaneAuto):
        pm = m.to_map()
        caveats: tuple[str, ...] = ()
    else:
        pm = m
        if pm.nvars != d.nvars:
            raise ArityError("map/derivation arity mismatch")
        if pm.nvars == 2:
            am.validate(pm)
            caveats = ()
        else:
            jac = am.jacobian_det(pm)
            if not jac.is_constant() or jac.is_zero:
                raise NotAnAutomorphismError("jacobian", f"jacobian is {jac}")
            caveats = ("n-variate map accepted on a constant-Jacobian check only",)
    if pm.nvars != d.nvars:
        raise ArityError("map/derivation arity mismatch")
    imgs = list(pm.components)
    residuals = []
    for i in range(d.nvars):
        lhs = d.components[i].substitute(imgs)
        rhs = d.apply(pm.components[i])
        residuals.append(lhs - rhs)
    return CommutationReport(all(r.is_zero for r in residuals), tuple(residuals), caveats)


def conjugate(phi: am.PlaneAuto, d: Derivation) -> Derivation:
    """The derivation phi^{-1} o D o phi (components in the new coordinates)."""
    if d.nvars != 2:
        raise ArityError("conjugate is for two variables")
    inv = am.invert(phi)
    comps = tuple(d.apply(c).substitute([inv.f, inv.g]) for c in phi.components)
    return Derivation(2, comps)


# -- scale-shift equations v(alpha x + beta) = rho v(x) ------------------------


@dataclass(frozen=True)
class ScaleShiftFamily:
    """Solutions of v(alpha x + beta) = alpha^n v(x), n = deg v.

    kind "all": v constant, every (alpha, beta) works with ratio 1.
    kind "parametric": every alpha != 0 works with beta = beta(alpha).
    kind "finite": alpha restricted to the roots of residual_gcd.
    """

    n: int
    kind: str
    beta_of_alpha: tuple[Fraction, ...] = ()
    residual_gcd: tuple[Fraction, ...] = ()
    extension_flag: bool = False

    def beta_at(self, alpha: Fraction) -> Fraction:
        return eval_univariate(self.beta_of_alpha, alpha)

    def alphas(self) -> list[Fraction]:
        if self.kind != "finite":
            raise DomainError("not a finite family")
        g = Poly.from_univariate(1, 0, self.residual_gcd)
        return [r for r in sorted(set(rational_roots(g))) if r != 0]


def solve_scale_shift(v: Poly, var: int = 0) -> ScaleShiftFamily:
    """Coefficient-matching solver; the top coefficient forces rho = alpha^n,
    the next one gives beta as a polynomial in alpha, the rest are univariate
    residual constraints on alpha."""
    if v.is_zero:
        raise DomainError("scale-shift equation needs a nonzero polynomial")
    if not v.is_univariate_in(var):
        raise ArityError("scale-shift polynomial must be univariate")
    coeffs = v.univariate_coeffs(var)
    n = len(coeffs) - 1
    if n == 0:
        return ScaleShiftFamily(0, "all")
    un = coeffs[n]
    un1 = coeffs[n - 1]
    ratio = un1 / (n * un)
    beta = (-ratio, ratio)  # beta(alpha) = ratio*(alpha - 1)
    # residuals in the ring (s, t): s the polynomial variable, t = alpha
    s, t = Poly.var(2, 0), Poly.var(2, 1)
    beta_t = t * ratio - ratio
    v2 = Poly.from_univariate(2, 0, coeffs)
    lhs = v2.substitute([s * t + beta_t, t])
    rhs = v2 * t**n
    residual = lhs - rhs
    res_lists = []
    for e, coeff in residual.coeffs_wrt(0).items():
        cl = coeff.univariate_coeffs(1)
        if cl:
            res_lists.append(cl)
    if not res_lists:
        return ScaleShiftFamily(n, "parametric", beta)
    g = res_lists[0]
    for other in res_lists[1:]:
        g = [Fraction(c) for c in _gcd_coeff_lists([Fraction(c) for c in g], other)]
    gp = Poly.from_univariate(1, 0, g)
    nroots = len(rational_roots(gp)) if not gp.is_constant() else 0
    ext = nroots < (len(g) - 1)
    return ScaleShiftFamily(n, "finite", beta, tuple(Fraction(c) for c in g), ext)


# -- J_u groups -----------------------------------------------------------------


@dataclass(frozen=True)
class JuParametric:
    beta_of_alpha: tuple[Fraction, ...]
    gamma_power: int


@dataclass(frozen=True)
class JuGroupData:
    """Triangular maps (alpha x + beta, gamma y + P(x)) commuting with u(x) d/dy.

    The shift P is always unconstrained (free_shift); the data records the
    solutions of u(alpha x + beta) = gamma u(x).
    """

    u: Poly
    affine_solutions: tuple[tuple[Fraction, Fraction, Fraction], ...]
    parametric: JuParametric | None
    all_affine: bool
    free_shift: bool = True
    extension_flag: bool = False


def ju_group(u: Poly) -> JuGroupData:
    if u.is_zero:
        raise DomainError("u must be nonzero")
    fam = solve_scale_shift(u, 0)
    if fam.kind == "all":
        return JuGroupData(u, (), None, True)
    if fam.kind == "parametric":
        return JuGroupData(u, (), JuParametric(fam.beta_of_alpha, fam.n), False)
    sols = []
    coeffs = u.univariate_coeffs(0)
    x1 = Poly.var(1, 0)
    u1 = Poly.from_univariate(1, 0, coeffs)
    for alpha in fam.alphas():
        beta = fam.beta_at(alpha)
        gamma = alpha**fam.n
        # re-verify by exact substitution
        if u1.substitute([x1 * alpha + Poly.const(1, beta)]) == u1 * gamma:
            sols.append((alpha, beta, gamma))
    return JuGroupData(u, tuple(sols), None, False, True, fam.extension_flag)


# -- triangular isotropy problems ------------------------------------------------


@dataclass(frozen=True)
class TriangularIsotropyProblem:
    """Data of D = x^ell a(x) d/dx + (b0(x) + b1(x) y) d/dy, with x not dividing a."""

    ell: int
    a: Poly
    b0: Poly
    b1: Poly

    def __post_init__(self):
        if self.ell < 0:
            raise DomainError("ell must be a natural number")
        for p in (self.a, self.b0, self.b1):
            if p.nvars != 2 or not p.is_univariate_in(0):
                raise DomainError("a, b0, b1 must be univariate in x (two-variable ring)")
        if self.a.is_zero:
            raise DomainError("a must be nonzero")
        if self.a.constant_term() == 0:
            raise DomainError("x must not divide a")

    @property
    def r(self) -> int:
        return int(self.a.degree_in(0))

    @property
    def lead_a(self) -> Fraction:
        return self.a.univariate_coeffs(0)[-1]

    @property
    def s(self) -> int:
        if self.b1.is_zero:
            raise DomainError("b1 is zero")
        return int(self.b1.degree_in(0))

    @property
    def lead_b1(self) -> Fraction:
        if self.b1.is_zero:
            raise DomainError("b1 is zero")
        return self.b1.univariate_coeffs(0)[-1]

    def derivation(self) -> Derivation:
        x = Poly.var(2, 0)
        y = Poly.var(2, 1)
        return Derivation(2, (x**self.ell * self.a, self.b0 + self.b1 * y))


@dataclass(frozen=True)
class TriangularSolution:
    alpha: Fraction
    gamma: Fraction
    particular: Poly
    basis: tuple[Poly, ...]

    def members(self):
        yield self.particular
        for v in self.basis:
            yield self.particular + v

    @property
    def dimension(self) -> int:
        return len(self.basis)


def predicted_degree(prob: TriangularIsotropyProblem, alpha: Fraction) -> Fraction:
    """The forced shift degree alpha^s * B_s / A_r from top-coefficient matching."""
    if prob.lead_a == 0:
        raise DomainError("leading coefficient of a is zero")
    return Fraction(alpha) ** prob.s * prob.lead_b1 / prob.lead_a


def triangular_isotropy_solve(prob: TriangularIsotropyProblem, alpha: Fraction,
                              gamma: Fraction, m: int):
    """Affine space of shifts P (deg <= m) with (alpha x, gamma y + P) commuting.

    Verifies the scalar compatibility of a and b1 under x -> alpha x first;
    the remaining identity b1 P - x^ell a P' = gamma b0 - b0(alpha x) is
    linear in the coefficients of P.  Returns None when inconsistent.
    """
    alpha = Fraction(alpha)
    gamma = Fraction(gamma)
    if alpha == 0 or gamma == 0:
        raise DomainError("alpha and gamma must be nonzero")
    if m < 0:
        raise DomainError("degree bound must be non-negative")
    x, y = Poly.var(2, 0), Poly.var(2, 1)
    scale = [x * alpha, y]
    # compatibility of the x-component: alpha^(ell-1) a(alpha x) == a(x)
    if prob.a.substitute(scale) * Fraction(alpha) ** (prob.ell - 1) != prob.a:
        return None
    # b1(alpha x) == b1(x)
    if prob.b1.substitute(scale) != prob.b1:
        return None
    xl_a = x**prob.ell * prob.a
    rhs_poly = prob.b0 * gamma - prob.b0.substitute(scale)

    def op(p: Poly) -> Poly:
        return prob.b1 * p - xl_a * p.partial(0)

    images = [op(x**k) for k in range(m + 1)]
    top = max([int(p.degree_in(0)) for p in images + [rhs_poly] if not p.is_zero],
              default=0)
    rows = []
    img_coeff = [p.univariate_coeffs(0) for p in images]
    rhs_coeff = rhs_poly.univariate_coeffs(0)
    for r in range(top + 1):
        rows.append([c[r] if r < len(c) else Fraction(0) for c in img_coeff])
    rhs_vec = [rhs_coeff[r] if r < len(rhs_coeff) else Fraction(0) for r in range(top + 1)]
    sol = solve_affine(QMatrix.from_rows(rows), rhs_vec)
    if sol is None:
        return None
    particular, kernel = sol
    p_part = Poly.from_univariate(2, 0, particular)
    basis = tuple(Poly.from_univariate(2, 0, v) for v in kernel)
    d = prob.derivation()
    for member in (p_part, *(p_part + v for v in basis)):
        phi = am.PolyMap(2, (x * alpha, y * gamma + member))
        rep = is_in_isotropy(phi, d)
        assert rep.commutes, "triangular solution failed re-verification"
    return TriangularSolution(alpha, gamma, p_part, basis)


# -- unbounded-degree witness families -------------------------------------------


def witness_unbounded_family(d: Derivation, verdict: LndVerdict, k_max: int) -> list[am.PlaneAuto]:
    """exp(f^k D) for k = 1..k_max, f the kernel generator; all commute with D."""
    if not isinstance(verdict, Lnd):
        raise DomainError("witness family needs an LND verdict")
    f = verdict.kernel_generator
    if f.is_constant():
        raise DomainError("kernel generator must be nonconstant")
    proof = lnd_semidecide(d)
    assert isinstance(proof, NilpotentWithin)
    witnesses = []
    for k in range(1, k_max + 1):
        delta = d.scale(f**k)
        phi = exp_auto(delta, proof)
        rep = is_in_isotropy(phi, d)
        assert rep.commutes, "witness failed commutation"
        witnesses.append(phi)
    return witnesses


# -- de Jonquieres sweep ----------------------------------------------------------


@dataclass(frozen=True)
class SweepResult:
    d_max: int
    per_degree: dict
    search_class: str = TRIANGULAR_CLASS
    caveats: tuple[str, ...] = ()

    def max_witness_degree(self):
        found = [dd for dd, w in self.per_degree.items() if w is not None]
        return max(found) if found else None


@dataclass(frozen=True)
class _Candidate:
    alpha: Fraction | None          # None = free parameter
    beta: Fraction | tuple | None   # tuple = poly in alpha; None = free
    gamma: Fraction | tuple | None  # ("pow", e) = alpha^e; None = free


def _alpha_power_one(k: int) -> list[Fraction]:
    # alpha^k = 1 as an ascending coefficient list
    return [Fraction(-1)] + [Fraction(0)] * (k - 1) + [Fraction(1)]


def _merge_gamma(spec, new, alpha_eqs):
    """Record the alpha-constraints making two gamma requirements agree."""
    if spec is None:
        return new
    a, b = spec, new
    if isinstance(a, tuple) and isinstance(b, tuple):
        k = abs(a[1] - b[1])
        if k:
            alpha_eqs.append(_alpha_power_one(k))
        return a
    if isinstance(b, tuple):
        a, b = b, a
    if isinstance(a, tuple):
        e, c = a[1], Fraction(b)
        if e >= 1:
            alpha_eqs.append([-c] + [Fraction(0)] * (e - 1) + [Fraction(1)])
        elif e == 0:
            if c != 1:
                alpha_eqs.append([Fraction(1)])
        else:
            alpha_eqs.append([Fraction(-1)] + [Fraction(0)] * (-e - 1) + [c])
        return b
    if a != b:
        alpha_eqs.append([Fraction(1)])  # inconsistent
    return a


def _candidate_set(a0, a1, b0, b1):
    """Solve the shift-free commutation constraints on (alpha, beta, gamma)."""
    alpha_eqs: list[list[Fraction]] = []
    beta_expr = None
    gamma_spec = None
    extension = False

    constraints = []
    if not a1.is_zero:
        constraints.append((a1, "alpha_over_gamma"))
    if a1.is_zero and not a0.is_zero:
        constraints.append((a0, "alpha"))
    if a1.is_zero and not b1.is_zero:
        constraints.append((b1, "one"))
    if b1.is_zero and a0.is_zero and not b0.is_zero:
        constraints.append((b0, "gamma"))

    def power_eq(k: int):
        # alpha^k = 1 with alpha != 0
        return _alpha_power_one(abs(k)) if k else None

    for v, rel in constraints:
        fam = solve_scale_shift(v, 0)
        if fam.kind == "all":
            if rel == "alpha_over_gamma":
                gamma_spec = _merge_gamma(gamma_spec, ("pow", 1), alpha_eqs)
            elif rel == "alpha":
                alpha_eqs.append([Fraction(-1), Fraction(1)])  # alpha = 1
            elif rel == "gamma":
                gamma_spec = _merge_gamma(gamma_spec, Fraction(1), alpha_eqs)
            continue
        if beta_expr is None:
            beta_expr = fam.beta_of_alpha
        else:
            diff = [Fraction(p) - Fraction(q) for p, q in
                    zip(list(beta_expr) + [Fraction(0)] * 4, list(fam.beta_of_alpha) + [Fraction(0)] * 4)]
            while diff and not diff[-1]:
                diff.pop()
            if diff:
                alpha_eqs.append(diff)
        if fam.kind == "finite":
            alpha_eqs.append(list(fam.residual_gcd))
            extension = extension or fam.extension_flag
        n = fam.n
        if rel == "alpha_over_gamma":
            gamma_spec = _merge_gamma(gamma_spec, ("pow", 1 - n), alpha_eqs)
        elif rel == "alpha":
            eq = power_eq(n - 1)
            if eq:
                alpha_eqs.append(eq)
        elif rel == "one":
            eq = power_eq(n)
            if eq:
                alpha_eqs.append(eq)
        elif rel == "gamma":
            gamma_spec = _merge_gamma(gamma_spec, ("pow", n), alpha_eqs)

    alpha_eqs = [e for e in alpha_eqs if e]
    if not alpha_eqs:
        beta = beta_expr if beta_expr is not None else None
        return [_Candidate(None, beta, gamma_spec)], extension
    g = alpha_eqs[0]
    for other in alpha_eqs[1:]:
        g = [Fraction(c) for c in _gcd_coeff_lists([Fraction(c) for c in g], other)]
    gp = Poly.from_univariate(1, 0, g)
    if gp.is_constant():
        return [], extension
    roots = [r for r in sorted(set(rational_roots(gp))) if r != 0]
    extension = extension or (len(rational_roots(gp)) < int(gp.degree_in(0)))
    cands = []
    for alpha in roots:
        beta = eval_univariate(beta_expr, alpha) if beta_expr is not None else None
        gamma = gamma_spec
        if isinstance(gamma, tuple):
            gamma = Fraction(alpha) ** gamma[1]
        cands.append(_Candidate(alpha, beta, gamma))
    return cands, extension


def _p_system(d: Derivation, cand: _Candidate, deg_p: int):
    """Rows of the commutation system, affine-linear in the shift coefficients.

    Builds the residuals symbolically in a ring (x, y, free params, p_0..p_K)
    and groups coefficients by (x, y)-monomial.  Entries are polynomials in
    the free parameters (plain rationals when there are none).
    """
    params = []
    if cand.alpha is None:
        params.append("t")
    if cand.beta is None:
        params.append("tb")
    if cand.gamma is None:
        params.append("tg")
    base = 2 + len(params)
    nv = base + deg_p + 1
    pidx = {name: 2 + i for i, name in enumerate(params)}

    def lift(p: Poly) -> Poly:
        return Poly(nv, {m + (0,) * (nv - 2): c for m, c in p.terms.items()})

    def pvar(i: int) -> Poly:
        return Poly.var(nv, i)

    x, y = pvar(0), pvar(1)
    if cand.alpha is None:
        alpha_p = pvar(pidx["t"])
    else:
        alpha_p = Poly.const(nv, cand.alpha)
    if cand.beta is None:
        beta_p = pvar(pidx["tb"])
    elif isinstance(cand.beta, tuple):
        beta_p = Poly.zero(nv)
        for k, c in enumerate(cand.beta):
            beta_p = beta_p + alpha_p**k * c
    else:
        beta_p = Poly.const(nv, cand.beta)
    clear_power = 0
    if cand.gamma is None:
        gamma_p = pvar(pidx["tg"])
    elif isinstance(cand.gamma, tuple):
        e = cand.gamma[1]
        if cand.alpha is not None:
            gamma_p = Poly.const(nv, Fraction(cand.alpha) ** e)
        elif e >= 0:
            gamma_p = alpha_p**e
        else:
            raise BudgetError("sweep: negative parametric gamma power; "
                              "unsupported candidate shape")
    else:
        gamma_p = Poly.const(nv, cand.gamma)
    shift = Poly.zero(nv)
    for k in range(deg_p + 1):
        shift = shift + pvar(base + k) * x**k
    phi1 = alpha_p * x + beta_p
    phi2 = gamma_p * y + shift
    a_l, b_l = lift(d.components[0]), lift(d.components[1])

    def apply_big(p: Poly) -> Poly:
        return a_l * p.partial(0) + b_l * p.partial(1)

    res1 = a_l.substitute([phi1, phi2] + [pvar(i) for i in range(2, nv)]) - apply_big(phi1)
    res2 = b_l.substitute([phi1, phi2] + [pvar(i) for i in range(2, nv)]) - apply_big(phi2)

    groups: dict = {}
    for which, res in enumerate((res1, res2)):
        for mono, coeff in res.terms.items():
            pexps = mono[base:]
            if sum(pexps) > 1:
                raise BudgetError("sweep: commutation system is nonlinear in the shift; "
                                  "derivation outside the solved triangular class")
            pslot = next((i for i, e in enumerate(pexps) if e), None)
            key = (which, mono[0], mono[1])
            param_mono = mono[2:base]
            row = groups.setdefault(key, {})
            cell = row.setdefault(pslot, {})
            cell[param_mono] = cell.get(param_mono, Fraction(0)) + coeff
    nparams = len(pidx)
    rows = []
    rhs = []
    for key in sorted(groups):
        row = groups[key]
        entries = []
        for k in range(deg_p + 1):
            cell = row.get(k, {})
            entries.append(Poly(max(nparams, 1), dict(cell)) if nparams else
                           Fraction(cell.get((), Fraction(0)) if cell else 0))
        free_cell = row.get(None, {})
        if nparams:
            rhs.append(-Poly(max(nparams, 1), dict(free_cell)))
        else:
            rhs.append(-Fraction(free_cell.get((), Fraction(0)) if free_cell else 0))
        rows.append(entries)
    return rows, rhs, nparams


@dataclass(frozen=True)
class _PBranch:
    assignment: dict
    particular: tuple[Fraction, ...]
    basis: tuple[tuple[Fraction, ...], ...]
    generic: bool


def _solve_p_rows(rows, rhs, nparams, p_count):
    """Solve the extracted affine system; branch on parameter specializations."""
    if not rows:
        zerovec = tuple(Fraction(0) for _ in range(p_count))
        unit = tuple(tuple(Fraction(1 if i == j else 0) for j in range(p_count))
                     for i in range(p_count))
        return [_PBranch({}, zerovec, unit, True)]
    if nparams == 0:
        sol = solve_affine(QMatrix.from_rows(rows), rhs)
        if sol is None:
            return []
        return [_PBranch({}, sol[0], tuple(sol[1]), True)]
    # collect special parameter values: rational roots of every entry polynomial
    specials: set[Fraction] = set()
    allpolys = [e for row in rows for e in row] + list(rhs)
    if nparams == 1:
        for p in allpolys:
            if not p.is_zero and not p.is_constant():
                specials.update(rational_roots(p, 0))
        specials.discard(Fraction(0))
        generic = Fraction(1)
        while generic in specials:
            generic += 1
        branches = []
        for t0, gen in [(v, False) for v in sorted(specials)] + [(generic, True)]:
            crows = [[e.evaluate((t0,)) for e in row] for row in rows]
            crhs = [e.evaluate((t0,)) for e in rhs]
            sol = solve_affine(QMatrix.from_rows(crows), crhs)
            if sol is not None:
                branches.append(_PBranch({"t": t0}, sol[0], tuple(sol[1]), gen))
        return branches
    # several free parameters: canonical specialization only (reported as caveat)
    point = tuple(Fraction(1) for _ in range(nparams))
    crows = [[e.evaluate(point) for e in row] for row in rows]
    crhs = [e.evaluate(point) for e in rhs]
    sol = solve_affine(QMatrix.from_rows(crows), crhs)
    if sol is None:
        return []
    return [_PBranch({"*": Fraction(1)}, sol[0], tuple(sol[1]), False)]


def _member_with_exact_degree(particular, basis, dd: int):
    """Member of the affine coefficient space with top coefficient exactly at dd.

    For dd <= 1 any member supported on degrees <= 1 qualifies.
    """
    k_count = len(particular)
    high = [k for k in range(k_count) if k > max(dd, 1)]
    rows = [[Fraction(b[k]) for b in basis] for k in high]
    rhs = [-Fraction(particular[k]) for k in high]
    if basis:
        sol = solve_affine(QMatrix.from_rows(rows), rhs) if rows else \
            (tuple(Fraction(0) for _ in basis), [tuple(Fraction(1 if i == j else 0) for j in range(len(basis))) for i in range(len(basis))])
        if sol is None:
            return None
        c_part, c_kernel = sol
    else:
        if any(r != 0 for r in rhs):
            return None
        c_part, c_kernel = tuple(), []

    def realize(cvec):
        out = list(particular)
        for ci, b in zip(cvec, basis):
            for k in range(k_count):
                out[k] += ci * b[k]
        return out

    member = realize(c_part)
    if dd <= 1:
        return member
    if member[dd] != 0:
        return member
    for direction in c_kernel:
        shifted = realize([a + bb for a, bb in zip(c_part, direction)])
        if shifted[dd] != 0:
            return shifted
    return None


def jonquieres_sweep(d: Derivation, d_max: int) -> SweepResult:
    """Per-degree commuting-witness search in the triangular class over Q."""
    if d.nvars != 2:
        raise ArityError("sweep is for two variables")
    if d_max < 1:
        raise DomainError("d_max must be at least 1")
    a, b = d.components
    if a.degree_in(1) > 1 or b.degree_in(1) > 1:
        raise BudgetError("sweep solves derivations with deg_y <= 1 components "
                          "(triangular class); this input is outside that class")
    a_parts = a.coeffs_wrt(1)
    b_parts = b.coeffs_wrt(1)
    zero = Poly.zero(2)
    a0, a1 = a_parts.get(0, zero), a_parts.get(1, zero)
    b0, b1 = b_parts.get(0, zero), b_parts.get(1, zero)
    for name, p in (("a0", a0), ("a1", a1), ("b0", b0), ("b1", b1)):
        if not p.is_univariate_in(0):
            raise BudgetError(f"sweep: component part {name} must be univariate in x")
    cands, extension = _candidate_set(a0, a1, b0, b1)
    caveats = [TRIANGULAR_CLASS]
    if extension:
        caveats.append("elimination leaves non-rational factors: more solutions may "
                       "exist over an extension of Q")
    per_degree: dict = {dd: None for dd in range(1, d_max + 1)}
    for cand in cands:
        rows, rhs, nparams = _p_system(d, cand, d_max)
        if nparams >= 2:
            caveats.append("several free parameters: searched at the canonical "
                           "specialization only")
        branches = _solve_p_rows(rows, rhs, nparams, d_max + 1)
        for branch in branches:
            for dd in range(1, d_max + 1):
                if per_degree[dd] is not None:
                    continue
                member = _member_with_exact_degree(list(branch.particular),
                                                   [list(v) for v in branch.basis], dd)
                if member is None:
                    continue
                phi = _candidate_map(cand, branch, member)
                if phi is None:
                    continue
                if int(phi.to_map().degree()) != dd:
                    continue
                rep = is_in_isotropy(phi, d)
                if rep.commutes:
                    per_degree[dd] = phi
    return SweepResult(d_max, per_degree, TRIANGULAR_CLASS, tuple(caveats))


def _candidate_map(cand: _Candidate, branch: _PBranch, member):
    alpha = cand.alpha
    if alpha is None:
        alpha = branch.assignment.get("t", branch.assignment.get("*", Fraction(1)))
    if isinstance(cand.beta, tuple):
        beta = eval_univariate(cand.beta, alpha)
    elif cand.beta is None:
        beta = branch.assignment.get("tb", branch.assignment.get("*", Fraction(1)))
        if "tb" not in branch.assignment and "*" not in branch.assignment:
            beta = Fraction(0)
    else:
        beta = cand.beta
    if isinstance(cand.gamma, tuple):
        gamma = Fraction(alpha) ** cand.gamma[1]
    elif cand.gamma is None:
        gamma = branch.assignment.get("tg", branch.assignment.get("*", Fraction(1)))
    else:
        gamma = cand.gamma
    if alpha == 0 or gamma == 0:
        return None
    x, y = Poly.var(2, 0), Poly.var(2, 1)
    shift = Poly.from_univariate(2, 0, member)
    try:
        return am.validate(am.PolyMap(2, (x * alpha + Poly.const(2, beta),
                                          y * gamma + shift)))
    except NotAnAutomorphismError:
        return None


# -- theorem harness ---------------------------------------------------------------


@dataclass(frozen=True)
class TheoremCheckReport:
    verdict: LndVerdict
    d_max: int
    witnesses: tuple = ()
    witness_max_degree: int | None = None
    sweep: SweepResult | None = None
    census: "eig.EigenCensus | None" = None
    caveats: tuple[str, ...] = ()


def theorem_check(d: Derivation, d_max: int, m_max: int = 2) -> TheoremCheckReport:
    """LND: produce verified commuting maps of degree >= d_max; otherwise sweep
    the triangular class and report the eigen evidence.  Boundedness of the
    full isotropy group is never claimed, only searched-class results."""
    if d.nvars != 2:
        raise ArityError("theorem_check is for two variables")
    if d.is_zero:
        raise DomainError("zero derivation")
    verdict = lnd_decide2(d)
    if isinstance(verdict, Lnd):
        k = 1
        witnesses = []
        best = 0
        while best < d_max and k <= 4 * d_max + 8:
            fam = witness_unbounded_family(d, verdict, k)
            witnesses = fam
            best = max(int(w.to_map().degree()) for w in fam)
            k += max(1, d_max // 4)
        return TheoremCheckReport(verdict, d_max, tuple(witnesses), best,
                                  caveats=("witnesses are exponentials of kernel "
                                           "multiples of the derivation",))
    caveats = []
    sweep = None
    try:
        sweep = jonquieres_sweep(d, d_max)
        caveats.extend(sweep.caveats)
    except BudgetError as exc:
        caveats.append(str(exc))
    if isinstance(verdict, NotLnd):
        caveats.append(_recheck_certificate(d, verdict))
    cen = eig.census(d, m_max)
    return TheoremCheckReport(verdict, d_max, (), None, sweep, cen, tuple(caveats))


def _recheck_certificate(d: Derivation, verdict: NotLnd) -> str:
    cert = verdict.certificate
    if cert.kind == "nonzero_divergence":
        a0, b0 = cert.data["reduced_components"]
        again = a0.partial(0) + b0.partial(1)
        ok = (again == cert.data["divergence"]) and not again.is_zero
        return f"certificate nonzero_divergence re-verified: {ok}"
    if cert.kind == "cofactor_not_in_kernel_algebra":
        from .poly import univariate_membership

        ok = univariate_membership(cert.data["cofactor"], cert.data["kernel_generator"]) is None
        return f"certificate cofactor_not_in_kernel_algebra re-verified: {ok}"
    if cert.kind == "kernel_generator_not_coordinate":
        ok = am.is_coordinate(cert.data["kernel_generator"]).status == "no"
        return f"certificate kernel_generator_not_coordinate re-verified: {ok}"
    return f"certificate {cert.kind} recorded"


# -- dimension-3 reproduction -------------------------------------------------------


@dataclass(frozen=True)
class Dim3Report:
    derivation: Derivation
    nilpotence: object
    witness: am.PolyMap
    witness_degree: int
    commutation: CommutationReport
    control: Derivation
    control_nilpotence: object


def dim3_counterexample(p_degree: int, a1: Poly | None = None,
                        a2: Poly | None = None) -> Dim3Report:
    """Three-variable derivation that is not locally nilpotent yet commutes
    with (x1 + p(x3), x2, x3) for p of any degree; the a2 = 0 control case is
    certified nilpotent for contrast."""
    if p_degree < 1:
        raise DomainError("p_degree must be at least 1")
    x2 = Poly.var(3, 1)
    if a1 is None:
        a1 = x2
    if a2 is None:
        a2 = x2
    d = Derivation(3, (a1, a2, Poly.zero(3)))
    nil = lnd_semidecide(d)
    x1, x3 = Poly.var(3, 0), Poly.var(3, 2)
    witness = am.PolyMap(3, (x1 + x3**p_degree, x2, x3))
    rep = is_in_isotropy(witness, d)
    control = Derivation(3, (a1, Poly.zero(3), Poly.zero(3)))
    control_nil = lnd_semidecide(control)
    return Dim3Report(d, nil, witness, int(witness.degree()), rep, control, control_nil)
