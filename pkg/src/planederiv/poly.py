"""Exact sparse multivariate polynomials over the rationals.

A monomial is an exponent tuple (one entry per variable); a polynomial maps
monomials to nonzero ``Fraction`` coefficients.  The term order used
everywhere is graded lexicographic with x1 > x2 > ...; all constructors
canonicalize (no stored zero coefficients), so equality is structural and
outputs are reproducible.

The degree of the zero polynomial is the sentinel ``NEG_INF``, which
participates correctly in ``max`` and ``+`` so degree laws remain testable.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd, lcm as _int_lcm

from .errors import ArityError, DomainError

NEG_INF = float("-inf")

Monomial = tuple  # exponent vector, length == nvars


def grlex_key(mono: Monomial):
    """Sort key realizing graded lex order with x1 > x2 > ... ."""
    return (sum(mono), mono)


def var_names(nvars: int) -> list[str]:
    if nvars == 1:
        return ["x"]
    if nvars == 2:
        return ["x", "y"]
    return [f"x{i + 1}" for i in range(nvars)]


class Poly:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms=None):
        if nvars < 1:
            raise DomainError("nvars must be positive")
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for mono, coeff in (terms.items() if isinstance(terms, dict) else terms):
                mono = tuple(mono)
                if len(mono) != nvars:
                    raise ArityError(f"monomial {mono} does not have {nvars} exponents")
                if any(e < 0 for e in mono):
                    raise DomainError(f"negative exponent in {mono}")
                c = Fraction(coeff)
                if c:
                    acc = clean.get(mono, Fraction(0)) + c
                    if acc:
                        clean[mono] = acc
                    else:
                        clean.pop(mono, None)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):  # pragma: no cover - guard
        raise AttributeError("Poly is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, value) -> "Poly":
        return cls(nvars, {(0,) * nvars: Fraction(value)})

    @classmethod
    def var(cls, nvars: int, index: int) -> "Poly":
        if not 0 <= index < nvars:
            raise DomainError(f"variable index {index} out of range for nvars={nvars}")
        mono = tuple(1 if i == index else 0 for i in range(nvars))
        return cls(nvars, {mono: Fraction(1)})

    @classmethod
    def from_univariate(cls, nvars: int, var: int, coeffs) -> "Poly":
        """Build sum(coeffs[k] * x_var^k) inside an nvars-variable ring."""
        terms = {}
        for k, c in enumerate(coeffs):
            c = Fraction(c)
            if c:
                mono = tuple(k if i == var else 0 for i in range(nvars))
                terms[mono] = c
        return cls(nvars, terms)

    # -- predicates and basic data ----------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def total_degree(self):
        """Max total degree of the stored monomials; NEG_INF for zero."""
        if not self.terms:
            return NEG_INF
        return max(sum(m) for m in self.terms)

    def degree_in(self, var: int) -> int:
        if not 0 <= var < self.nvars:
            raise DomainError("variable index out of range")
        if not self.terms:
            return NEG_INF
        return max(m[var] for m in self.terms)

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise DomainError("zero polynomial has no leading monomial")
        return max(self.terms, key=grlex_key)

    def leading_coeff(self) -> Fraction:
        return self.terms[self.leading_monomial()]

    def leading_form(self) -> "Poly":
        """Sum of the terms of maximal total degree (homogeneous)."""
        if not self.terms:
            raise DomainError("zero polynomial has no leading form")
        d = self.total_degree()
        return Poly(self.nvars, {m: c for m, c in self.terms.items() if sum(m) == d})

    def variables_used(self) -> set[int]:
        used = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(i)
        return used

    # -- ring operations ---------------------------------------------------

    def _check_arity(self, other: "Poly"):
        if self.nvars != other.nvars:
            raise ArityError(f"variable-count mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(self.nvars, other)
        self._check_arity(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            acc = out.get(m, Fraction(0)) + c
            if acc:
                out[m] = acc
            else:
                out.pop(m, None)
        return Poly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = Fraction(other)
            if not c:
                return Poly(self.nvars)
            return Poly(self.nvars, {m: cc * c for m, cc in self.terms.items()})
        self._check_arity(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                acc = out.get(m, Fraction(0)) + c1 * c2
                if acc:
                    out[m] = acc
                else:
                    out.pop(m, None)
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise DomainError("negative power")
        result = Poly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.nvars, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    # -- calculus and substitution -----------------------------------------

    def partial(self, var: int) -> "Poly":
        """Formal partial derivative with respect to variable ``var``."""
        if not 0 <= var < self.nvars:
            raise DomainError(f"variable index {var} out of range")
        out = {}
        for m, c in self.terms.items():
            e = m[var]
            if e:
                mm = list(m)
                mm[var] = e - 1
                out[tuple(mm)] = c * e
        return Poly(self.nvars, out)

    def substitute(self, images: list["Poly"]) -> "Poly":
        """Ring homomorphism sending x_i to images[i]."""
        if len(images) != self.nvars:
            raise ArityError(f"expected {self.nvars} images, got {len(images)}")
        m_vars = images[0].nvars
        for img in images:
            if img.nvars != m_vars:
                raise ArityError("images live in different rings")
        # incremental power tables per variable
        powers: list[list[Poly]] = [[Poly.const(m_vars, 1)] for _ in images]
        out = Poly.zero(m_vars)
        for mono, coeff in sorted(self.terms.items(), key=lambda t: grlex_key(t[0])):
            term = Poly.const(m_vars, coeff)
            for i, e in enumerate(mono):
                if e:
                    tab = powers[i]
                    while len(tab) <= e:
                        tab.append(tab[-1] * images[i])
                    term = term * tab[e]
            out = out + term
        return out

    def evaluate(self, point) -> Fraction:
        """Exact evaluation at a rational point."""
        if len(point) != self.nvars:
            raise ArityError("point arity mismatch")
        vals = [Fraction(v) for v in point]
        total = Fraction(0)
        for m, c in self.terms.items():
            prod = c
            for v, e in zip(vals, m):
                if e:
                    prod *= v**e
            total += prod
        return total

    # -- univariate views ----------------------------------------------------

    def is_univariate_in(self, var: int) -> bool:
        return self.variables_used() <= {var}

    def univariate_coeffs(self, var: int) -> list[Fraction]:
        """Ascending coefficient list; requires no other variable present."""
        if not self.is_univariate_in(var):
            raise DomainError("polynomial is not univariate in the requested variable")
        if self.is_zero:
            return []
        d = self.degree_in(var)
        out = [Fraction(0)] * (d + 1)
        for m, c in self.terms.items():
            out[m[var]] = c
        return out

    def coeffs_wrt(self, var: int) -> dict[int, "Poly"]:
        """Coefficients of powers of x_var, as polynomials with x_var removed."""
        out: dict[int, dict] = {}
        for m, c in self.terms.items():
            e = m[var]
            mm = list(m)
            mm[var] = 0
            out.setdefault(e, {})[tuple(mm)] = c
        return {e: Poly(self.nvars, t) for e, t in out.items()}

    # -- printing ------------------------------------------------------------

    def __str__(self):
        return poly_to_str(self)

    def __repr__(self):
        return f"Poly({self.nvars}, {poly_to_str(self)!r})"


def poly_to_str(p: Poly) -> str:
    """Canonical string: graded-lex descending terms, explicit ``*``."""
    if p.is_zero:
        return "0"
    names = var_names(p.nvars)
    parts = []
    for mono in sorted(p.terms, key=grlex_key, reverse=True):
        coeff = p.terms[mono]
        factors = []
        for i, e in enumerate(mono):
            if e == 1:
                factors.append(names[i])
            elif e > 1:
                factors.append(f"{names[i]}^{e}")
        mag = abs(coeff)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = str(mag) + "*" + "*".join(factors)
        parts.append(("-" if coeff < 0 else "+", body))
    sign, body = parts[0]
    text = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


# -- division, gcd, membership -------------------------------------------


def exact_divide(p: Poly, d: Poly):
    """Return q with q*d == p, or None when p is not divisible by d."""
    if d.is_zero:
        raise DomainError("division by the zero polynomial")
    p._check_arity(d)
    if p.is_zero:
        return Poly.zero(p.nvars)
    lm_d = d.leading_monomial()
    lc_d = d.terms[lm_d]
    q: dict[Monomial, Fraction] = {}
    r = p
    while not r.is_zero:
        lm_r = r.leading_monomial()
        diff = tuple(a - b for a, b in zip(lm_r, lm_d))
        if any(e < 0 for e in diff):
            return None
        c = r.terms[lm_r] / lc_d
        q[diff] = c
        r = r - Poly(p.nvars, {diff: c}) * d
    return Poly(p.nvars, q)


def monic_grlex(p: Poly) -> Poly:
    """Scale so the graded-lex leading coefficient is 1."""
    if p.is_zero:
        raise DomainError("cannot normalize the zero polynomial")
    return p * (1 / p.leading_coeff())


# univariate gcd on coefficient lists, via primitive pseudo-remainders over Z


def _primitive_int(coeffs: list[Fraction]) -> list[int]:
    while coeffs and not coeffs[-1]:
        coeffs = coeffs[:-1]
    if not coeffs:
        return []
    denom = _int_lcm(*(c.denominator for c in coeffs)) if len(coeffs) > 1 else coeffs[0].denominator
    ints = [int(c * denom) for c in coeffs]
    g = 0
    for v in ints:
        g = _int_gcd(g, abs(v))
    ints = [v // g for v in ints]
    if ints[-1] < 0:
        ints = [-v for v in ints]
    return ints


def _prem_int(a: list[int], b: list[int]) -> list[Fraction]:
    # pseudo-remainder of a by b; b nonzero
    r = [Fraction(v) for v in a]
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        dr = len(r) - 1
        lr = r[-1]
        shifted = [Fraction(0)] * (dr - db) + [Fraction(v) * lr for v in b]
        r = [Fraction(lb) * rv - sv for rv, sv in zip(r, shifted)]
        while r and not r[-1]:
            r.pop()
    return r


def _gcd_coeff_lists(a: list[Fraction], b: list[Fraction]) -> list[int]:
    A, B = _primitive_int(list(a)), _primitive_int(list(b))
    if not A:
        return B
    if not B:
        return A
    if len(A) < len(B):
        A, B = B, A
    while B:
        R = _primitive_int(_prem_int(A, B))
        A, B = B, R
    return A


def _gcd_univariate(p: Poly, q: Poly, var: int) -> Poly:
    """gcd of two polynomials involving only x_var (up to a scalar)."""
    g = _gcd_coeff_lists(
        p.univariate_coeffs(var) if not p.is_zero else [],
        q.univariate_coeffs(var) if not q.is_zero else [],
    )
    return Poly.from_univariate(p.nvars, var, g)


# bivariate gcd: content/primitive split + primitive PRS in x


def _bx(p: Poly) -> dict[int, Poly]:
    """View a 2-variable poly as {x-power: coefficient poly in y}."""
    return p.coeffs_wrt(0)


def _bx_poly(view: dict[int, Poly], nvars: int = 2) -> Poly:
    acc = Poly.zero(nvars)
    x = Poly.var(nvars, 0)
    for e, c in view.items():
        acc = acc + c * x**e
    return acc


def _bx_content(view: dict[int, Poly]) -> Poly:
    cont = Poly.zero(2)
    for c in view.values():
        cont = _gcd_univariate(cont, c, 1)
        if cont.is_constant() and not cont.is_zero:
            break
    return cont if not cont.is_zero else Poly.const(2, 1)


def _bx_primitive(view: dict[int, Poly]) -> tuple[Poly, dict[int, Poly]]:
    cont = _bx_content(view)
    prim = {}
    for e, c in view.items():
        q = exact_divide(c, cont)
        assert q is not None
        prim[e] = q
    return cont, prim


def _bx_deg(view) -> int:
    return max(view) if view else -1


def _bx_lead(view) -> Poly:
    return view[max(view)]


def _bx_sub(a, b):
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, Poly.zero(2)) - c
        if s.is_zero:
            out.pop(e, None)
        else:
            out[e] = s
    return out


def _bx_scale(view, c: Poly):
    out = {}
    for e, v in view.items():
        s = v * c
        if not s.is_zero:
            out[e] = s
    return out


def _bx_shift(view, k: int):
    return {e + k: v for e, v in view.items()}


def _bx_prem(a, b):
    """Pseudo-remainder of a by b in the main variable x."""
    db = _bx_deg(b)
    lb = _bx_lead(b)
    r = dict(a)
    while r and _bx_deg(r) >= db:
        dr = _bx_deg(r)
        lr = _bx_lead(r)
        r = _bx_sub(_bx_scale(r, lb), _bx_shift(_bx_scale(b, lr), dr - db))
    return r


def gcd2(p: Poly, q: Poly) -> Poly:
    """Bivariate gcd, normalized with graded-lex leading coefficient 1.

    Content/primitive split in the main variable x with a primitive
    pseudo-remainder sequence, recursing to integer gcds for the
    univariate contents.
    """
    if p.nvars != 2 or q.nvars != 2:
        raise ArityError("gcd2 expects two bivariate polynomials")
    if p.is_zero and q.is_zero:
        raise DomainError("gcd2(0, 0) is undefined")
    if p.is_zero:
        return monic_grlex(q)
    if q.is_zero:
        return monic_grlex(p)
    cont_p, pp_p = _bx_primitive(_bx(p))
    cont_q, pp_q = _bx_primitive(_bx(q))
    g_cont = _gcd_univariate(cont_p, cont_q, 1)
    a, b = pp_p, pp_q
    if _bx_deg(a) < _bx_deg(b):
        a, b = b, a
    while b:
        r = _bx_prem(a, b)
        if r:
            _, r = _bx_primitive(r)
        a, b = b, r
    _, a = _bx_primitive(a)
    return monic_grlex(_bx_poly(a) * g_cont)


def univariate_membership(c: Poly, f: Poly):
    """Find P with c == P(f); returns ascending coefficients of P or None.

    Degree descent: the leading form of the remainder must be a scalar
    multiple of the matching power of the leading form of f.
    """
    if f.is_constant():
        raise DomainError("membership target must be nonconstant")
    c._check_arity(f)
    coeffs: dict[int, Fraction] = {}
    r = c
    df = f.total_degree()
    while not r.is_zero:
        dr = r.total_degree()
        if dr == 0:
            coeffs[0] = coeffs.get(0, Fraction(0)) + r.constant_term()
            break
        if dr % df != 0:
            return None
        t = dr // df
        lf_pow = f.leading_form() ** t
        mu = r.leading_coeff() / lf_pow.leading_coeff()
        if r.leading_form() != lf_pow * mu:
            return None
        coeffs[t] = mu
        r = r - f**t * mu
    if not coeffs:
        return []
    top = max(coeffs)
    return [coeffs.get(k, Fraction(0)) for k in range(top + 1)]


def eval_univariate(coeffs, value: Fraction) -> Fraction:
    """Evaluate an ascending coefficient list at a rational point."""
    acc = Fraction(0)
    for c in reversed(list(coeffs)):
        acc = acc * value + Fraction(c)
    return acc
