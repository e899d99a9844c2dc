"""Fraction-free exact linear algebra over Q and over polynomial rings.

Dense matrices only; the target dimensions are small (<= ~30), so no
sparsity machinery.  Determinants use Bareiss one-step elimination, which
keeps every intermediate value in the base ring (exact divisions only).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as _int_gcd

from .errors import ArityError, DomainError
from .poly import Poly, exact_divide


@dataclass(frozen=True)
class QMatrix:
    entries: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_rows(cls, rows) -> "QMatrix":
        rows = tuple(tuple(Fraction(v) for v in row) for row in rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise DomainError("ragged matrix")
        return cls(rows)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0


@dataclass(frozen=True)
class PolyMatrix:
    nvars: int
    entries: tuple[tuple[Poly, ...], ...]

    @classmethod
    def from_rows(cls, rows) -> "PolyMatrix":
        rows = tuple(tuple(rows_i) for rows_i in rows)
        if not rows or not rows[0]:
            raise DomainError("empty polynomial matrix")
        nv = rows[0][0].nvars
        for row in rows:
            if len(row) != len(rows[0]):
                raise DomainError("ragged matrix")
            for p in row:
                if p.nvars != nv:
                    raise ArityError("mixed variable counts in matrix")
        return cls(nv, rows)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])


def _ring_ops(sample):
    if isinstance(sample, Poly):
        nv = sample.nvars

        def exq(a, b):
            q = exact_divide(a, b)
            assert q is not None, "Bareiss division was not exact"
            return q

        return Poly.const(nv, 1), lambda v: v.is_zero, exq
    one = Fraction(1)
    return one, lambda v: v == 0, lambda a, b: a / b


def det_bareiss(m):
    """Determinant by fraction-free one-step elimination.

    Accepts a QMatrix or a PolyMatrix (square).
    """
    if m.rows != m.cols:
        raise DomainError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)
    work = [list(row) for row in m.entries]
    one, is_zero, exq = _ring_ops(work[0][0])
    sign = 1
    prev = one
    for k in range(n - 1):
        if is_zero(work[k][k]):
            for r in range(k + 1, n):
                if not is_zero(work[r][k]):
                    work[k], work[r] = work[r], work[k]
                    sign = -sign
                    break
            else:
                return work[0][0] - work[0][0]  # zero of the ring
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                work[i][j] = exq(work[k][k] * work[i][j] - work[i][k] * work[k][j], prev)
            work[i][k] = work[0][0] - work[0][0]
        prev = work[k][k]
    det = work[n - 1][n - 1]
    return det if sign == 1 else -det


def rank(m) -> int:
    """Rank via fraction-free forward elimination (exact zero tests)."""
    if m.rows == 0 or m.cols == 0:
        return 0
    work = [list(row) for row in m.entries]
    one, is_zero, exq = _ring_ops(work[0][0])
    nr, nc = len(work), len(work[0])
    prev = one
    r = 0
    for c in range(nc):
        piv = None
        for i in range(r, nr):
            if not is_zero(work[i][c]):
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        for i in range(r + 1, nr):
            for j in range(c + 1, nc):
                work[i][j] = exq(work[r][c] * work[i][j] - work[i][c] * work[r][j], prev)
            work[i][c] = work[0][0] - work[0][0]
        prev = work[r][c]
        r += 1
        if r == nr:
            break
    return r


def _rref(rows: list[list[Fraction]]):
    """Reduced row echelon form in place; returns pivot column list."""
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    pivots = []
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(nr):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return pivots


def nullspace(m: QMatrix) -> list[tuple[Fraction, ...]]:
    """Deterministic basis of the right kernel (RREF parameterization)."""
    if m.rows == 0:
        raise DomainError("nullspace of an empty matrix")
    rows = [list(r) for r in m.entries]
    pivots = _rref(rows)
    nc = m.cols
    free = [c for c in range(nc) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * nc
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][fc]
        basis.append(tuple(v))
    return basis


def solve_affine(a: QMatrix, b: list[Fraction]):
    """Solve A x = b exactly.

    Returns (particular, kernel_basis) or None when inconsistent.
    """
    if a.rows != len(b):
        raise DomainError("right-hand side length mismatch")
    nc = a.cols
    rows = [list(r) + [Fraction(v)] for r, v in zip(a.entries, b)]
    if not rows:
        unit = [tuple(Fraction(1 if j == i else 0) for j in range(nc)) for i in range(nc)]
        return tuple(Fraction(0) for _ in range(nc)), unit
    pivots = _rref(rows)
    if nc in pivots:
        return None  # pivot in the augmented column: inconsistent
    particular = [Fraction(0)] * nc
    for r, pc in enumerate(pivots):
        particular[pc] = rows[r][nc]
    kernel = nullspace(QMatrix.from_rows([row[:nc] for row in a.entries])) if nc else []
    return tuple(particular), kernel


# -- resultants ------------------------------------------------------------


def sylvester_matrix(pc: list, qc: list, ring_one):
    """Sylvester matrix from ascending coefficient lists (descending rows)."""
    m = len(pc) - 1
    n = len(qc) - 1
    size = m + n
    zero = ring_one - ring_one
    rows = []
    pdesc = list(reversed(pc))
    qdesc = list(reversed(qc))
    for i in range(n):
        rows.append([zero] * i + pdesc + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + qdesc + [zero] * (size - n - 1 - i))
    return rows


def resultant_wrt(p: Poly, q: Poly, var: int) -> Poly:
    """Resultant with respect to x_var; coefficients may involve other vars."""
    if p.is_zero or q.is_zero:
        raise DomainError("resultant of the zero polynomial")
    pc = p.coeffs_wrt(var)
    qc = q.coeffs_wrt(var)
    dp, dq = max(pc), max(qc)
    zero = Poly.zero(p.nvars)
    plist = [pc.get(i, zero) for i in range(dp + 1)]
    qlist = [qc.get(i, zero) for i in range(dq + 1)]
    if dp + dq == 0:
        return Poly.const(p.nvars, 1)
    rows = sylvester_matrix(plist, qlist, Poly.const(p.nvars, 1))
    return det_bareiss(PolyMatrix.from_rows(rows))


def resultant(p: Poly, q: Poly, var: int = 0) -> Fraction:
    """Sylvester resultant of two univariate polynomials in x_var."""
    if p.is_zero and q.is_zero:
        raise DomainError("resultant of two zero polynomials")
    if not (p.is_univariate_in(var) and q.is_univariate_in(var)):
        raise ArityError("resultant expects univariate inputs in the same variable")
    if p.is_zero or q.is_zero:
        return Fraction(0)
    r = resultant_wrt(p, q, var)
    return r.constant_term()


# -- rational roots ---------------------------------------------------------


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        v = pow(a, d, n)
        if v in (1, n - 1):
            continue
        for _ in range(s - 1):
            v = v * v % n
            if v == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    from random import randrange

    while True:
        c = randrange(1, n)
        x = y = randrange(0, n)
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = _int_gcd(abs(x - y), n)
        if d != n:
            return d


def _factorize(n: int) -> dict[int, int]:
    factors: dict[int, int] = {}
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if _is_probable_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.extend((d, m // d))
    return factors


def _divisors(n: int) -> list[int]:
    """All positive divisors, via prime factorization (handles big integers)."""
    n = abs(n)
    if n == 0:
        return []
    divs = [1]
    for p, e in _factorize(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def rational_roots(p: Poly, var: int = 0) -> list[Fraction]:
    """All rational roots with multiplicity, sorted ascending.

    Divisor enumeration on the primitive integer model; every candidate is
    verified by exact evaluation, multiplicities by repeated deflation.
    """
    if p.is_zero:
        raise DomainError("rational_roots of the zero polynomial")
    if not p.is_univariate_in(var):
        raise ArityError("rational_roots expects a univariate polynomial")
    coeffs = p.univariate_coeffs(var)
    from .poly import _primitive_int

    ints = _primitive_int(list(coeffs))
    roots: list[Fraction] = []
    k = 0
    while ints and ints[0] == 0:
        ints = ints[1:]
        k += 1
    roots.extend([Fraction(0)] * k)
    if len(ints) <= 1:
        return sorted(roots)

    def evaluate(cs: list[Fraction], v: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(cs):
            acc = acc * v + c
        return acc

    def deflate(cs: list[Fraction], r: Fraction) -> list[Fraction]:
        # synthetic division by (t - r); exactness guaranteed for roots
        out = []
        acc = Fraction(0)
        for c in reversed(cs):
            acc = acc * r + c
            out.append(acc)
        assert out[-1] == 0
        return [v for v in reversed(out[:-1])]

    work = [Fraction(v) for v in ints]
    candidates = set()
    for num in _divisors(ints[0]):
        for den in _divisors(ints[-1]):
            candidates.add(Fraction(num, den))
            candidates.add(Fraction(-num, den))
    for cand in sorted(candidates):
        while len(work) > 1 and evaluate(work, cand) == 0:
            roots.append(cand)
            work = deflate(work, cand)
    return sorted(roots)
