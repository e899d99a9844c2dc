"""Polynomial derivations: application, iteration, nilpotence, rectification.

The two-variable local-nilpotence decision is exact and runs in six steps:
split off the gcd of the components, test the divergence of the reduced
part, integrate the closed dual form to a kernel generator f, test that the
cofactor is a univariate polynomial in f, recognize f as a coordinate, and
finally complete f to a rectifying automorphism.  Every negative answer
carries a certificate that can be re-checked independently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from . import automorphism as am
from .errors import ArityError, DomainError
from .poly import Poly, exact_divide, gcd2, univariate_membership


@dataclass(frozen=True)
class Derivation:
    """Sum of components[i] * d/dx_i acting on Q[x1..xn]."""

    nvars: int
    components: tuple[Poly, ...]

    def __post_init__(self):
        if len(self.components) != self.nvars:
            raise ArityError("component count must equal nvars")
        for c in self.components:
            if c.nvars != self.nvars:
                raise ArityError("component has wrong variable count")

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.components)

    def apply(self, p: Poly) -> Poly:
        if p.nvars != self.nvars:
            raise ArityError("derivation/polynomial arity mismatch")
        out = Poly.zero(self.nvars)
        for i, c in enumerate(self.components):
            if not c.is_zero:
                out = out + c * p.partial(i)
        return out

    def iterate(self, p: Poly, k: int) -> Poly:
        for _ in range(k):
            p = self.apply(p)
        return p

    def divergence(self) -> Poly:
        out = Poly.zero(self.nvars)
        for i, c in enumerate(self.components):
            out = out + c.partial(i)
        return out

    def max_degree(self) -> int:
        degs = [c.total_degree() for c in self.components if not c.is_zero]
        return int(max(degs)) if degs else 0

    def scale(self, p: Poly) -> "Derivation":
        return Derivation(self.nvars, tuple(p * c for c in self.components))

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"


def default_cap(d: Derivation) -> int:
    """Generous iteration cap (d_max + 2)^2 for the semi-decision."""
    return (d.max_degree() + 2) ** 2


@dataclass(frozen=True)
class NilpotentWithin:
    k: int


@dataclass(frozen=True)
class NotNilpotentWithin:
    cap: int
    degree_trajectories: tuple[tuple[int, ...], ...]


def lnd_semidecide(d: Derivation, cap: int | None = None):
    """Iterate on every variable; NilpotentWithin(k) certifies nilpotence.

    Variables generate the ring, so killing them all after k steps proves
    local nilpotence.  The converse failure is only "not within cap".
    """
    if cap is None:
        cap = default_cap(d)
    if cap < 1:
        raise DomainError("cap must be at least 1")
    worst = 0
    trajectories = []
    for i in range(d.nvars):
        p = Poly.var(d.nvars, i)
        traj = []
        steps = 0
        while steps < cap:
            p = d.apply(p)
            steps += 1
            if p.is_zero:
                break
            traj.append(int(p.total_degree()))
        trajectories.append(tuple(traj))
        if not p.is_zero:
            return NotNilpotentWithin(cap, tuple(trajectories))
        worst = max(worst, steps)
    return NilpotentWithin(worst)


def exp_auto(delta: Derivation, proof: NilpotentWithin):
    """Exponential of a certified nilpotent derivation.

    Component i is sum_j delta^j(x_i)/j!; returns a validated PlaneAuto in
    two variables, a plain PolyMap otherwise.
    """
    if not isinstance(proof, NilpotentWithin):
        raise DomainError("nilpotence certificate missing")
    comps = []
    for i in range(delta.nvars):
        term = Poly.var(delta.nvars, i)
        acc = term
        j = 0
        while True:
            term = delta.apply(term)
            j += 1
            if term.is_zero:
                break
            if j >= proof.k:
                raise DomainError("nilpotence certificate does not cover this derivation")
            acc = acc + term * Fraction(1, factorial(j))
        comps.append(acc)
    m = am.PolyMap(delta.nvars, tuple(comps))
    if delta.nvars == 2:
        return am.validate(m)
    return m


# -- verdicts ----------------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    kind: str  # nonzero_divergence | cofactor_not_in_kernel_algebra |
    #            kernel_generator_not_coordinate | nonzero_eigenvalue_witness |
    #            iteration_degree_growth
    data: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Lnd:
    kernel_generator: Poly
    cofactor_coeffs: tuple[Fraction, ...]
    rectifier: am.PlaneAuto
    normal_u: Poly

    status = "lnd"


@dataclass(frozen=True)
class NotLnd:
    certificate: Certificate

    status = "not_lnd"


@dataclass(frozen=True)
class Inconclusive:
    reason: str

    status = "inconclusive"


LndVerdict = Lnd | NotLnd | Inconclusive


def integrate_closed(fx: Poly, fy: Poly) -> Poly:
    """Polynomial f with df/dx = fx and df/dy = fy, zero constant term.

    Requires the closedness condition d(fx)/dy == d(fy)/dx.
    """
    if fx.partial(1) != fy.partial(0):
        raise DomainError("form is not closed")

    def integrate_var(p: Poly, var: int) -> Poly:
        out = {}
        for m, c in p.terms.items():
            mm = list(m)
            mm[var] = m[var] + 1
            out[tuple(mm)] = c / (m[var] + 1)
        return Poly(p.nvars, out)

    f = integrate_var(fx, 0)
    # remaining y-part: fy with the already-integrated contribution removed
    rest = fy - f.partial(1)
    # rest depends only on y by closedness
    assert rest.degree_in(0) <= 0
    return f + integrate_var(rest, 1)


def lnd_decide2(d: Derivation) -> LndVerdict:
    """Exact local-nilpotence decision for a nonzero plane derivation."""
    if d.nvars != 2:
        raise ArityError("lnd_decide2 is for two variables")
    if d.is_zero:
        raise DomainError("zero derivation")
    a, b = d.components
    c = gcd2(a, b)
    a0 = exact_divide(a, c)
    b0 = exact_divide(b, c)
    assert a0 is not None and b0 is not None
    div = a0.partial(0) + b0.partial(1)
    if not div.is_zero:
        return NotLnd(Certificate("nonzero_divergence", {
            "divergence": div, "reduced_components": (a0, b0), "gcd": c}))
    # closed form b0 dx - a0 dy integrates to the kernel generator
    f = integrate_closed(b0, -a0)
    assert d.apply(f).is_zero
    p_coeffs = univariate_membership(c, f)
    if p_coeffs is None:
        return NotLnd(Certificate("cofactor_not_in_kernel_algebra", {
            "cofactor": c, "kernel_generator": f}))
    coord = am.is_coordinate(f)
    if coord.status == "no":
        return NotLnd(Certificate("kernel_generator_not_coordinate", {
            "kernel_generator": f, "coordinate_certificate": coord.certificate}))
    if coord.status == "extension_required":
        return Inconclusive("kernel generator needs an extension of Q to rectify")
    g = am.complete_coordinate(f, coord.steps)
    rectifier = am.validate(am.PolyMap(2, (f, g)))
    # conjugating by (f, g) sends d to (0, jac * P(x)) with c == P(f)
    normal_u = Poly.from_univariate(2, 0, [rectifier.jacobian * pc for pc in p_coeffs])
    inv = am.invert(rectifier)
    conj0 = d.apply(rectifier.f).substitute([inv.f, inv.g])
    conj1 = d.apply(rectifier.g).substitute([inv.f, inv.g])
    assert conj0.is_zero and conj1 == normal_u
    return Lnd(f, tuple(p_coeffs), rectifier, normal_u)
