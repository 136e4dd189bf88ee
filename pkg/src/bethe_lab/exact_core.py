"""Exact scalar, polynomial, rational-function and matrix arithmetic.

Everything here works over ``fractions.Fraction``.  Ring-generic helpers
(determinants, characteristic polynomials, matrix products) accept any
commutative coefficient type supporting ``+``, ``-``, ``*`` and scalar
multiplication by ``Fraction``; in practice that is ``Fraction`` itself or a
:class:`SparseMatrix` drawn from a commuting family.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd, isqrt
from typing import Iterable, Sequence

Rational = Fraction


class SingularSystemError(ArithmeticError):
    def __init__(self, rank: int):
        super().__init__(f"singular system (rank {rank})")
        self.rank = rank


class IncompatiblePolesError(ValueError):
    def __init__(self):
        super().__init__("incompatible pole sets")


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; rejects floats and garbage."""
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"malformed rational {text!r}") from None
    if q == 0:
        raise ValueError(f"malformed rational {text!r}: zero denominator")
    return Fraction(p, q)


def fraction_to_str(value: Fraction) -> str:
    value = as_fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def elementary_symmetric(values: Sequence[Fraction], i: int) -> Fraction:
    """e_i(values) via the generating product prod(1 + v t)."""
    coeffs = [Fraction(1)]
    for v in values:
        shifted = [Fraction(0)] + [v * c for c in coeffs]
        coeffs = [a + b for a, b in zip(coeffs + [Fraction(0)], shifted)]
    return coeffs[i] if 0 <= i < len(coeffs) else Fraction(0)


def complete_homogeneous(values: Sequence[Fraction], m: int) -> Fraction:
    """h_m(values), the coefficient of t^m in prod 1/(1 - v t)."""
    series = [Fraction(1)] + [Fraction(0)] * m
    for v in values:
        for k in range(1, m + 1):
            series[k] += v * series[k - 1]
    return series[m]


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------


class Poly:
    """Univariate polynomial with Fraction coefficients, index = degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> Poly:
        return cls([0] * degree + [coeff])

    @classmethod
    def from_roots(cls, roots: Iterable) -> Poly:
        """prod (t - r)."""
        out = cls([1])
        for r in roots:
            out = out * cls([-as_fraction(r), 1])
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({[fraction_to_str(c) for c in self.coeffs]})"

    def __add__(self, other: Poly) -> Poly:
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self[k] + other[k] for k in range(n))

    def __neg__(self) -> Poly:
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other) -> Poly:
        if not isinstance(other, Poly):
            s = as_fraction(other)
            return Poly(c * s for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Poly:
        out = Poly([1])
        for _ in range(e):
            out = out * self
        return out

    def __call__(self, t) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def derivative(self) -> Poly:
        return Poly(k * c for k, c in enumerate(self.coeffs) if k)

    def divmod(self, other: Poly) -> tuple[Poly, Poly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(len(rem) - other.degree, 0)
        lead = other.coeffs[-1]
        for k in range(len(rem) - 1, other.degree - 1, -1):
            c = rem[k] / lead
            if c:
                q[k - other.degree] = c
                for j, b in enumerate(other.coeffs):
                    rem[k - other.degree + j] -= c * b
        return Poly(q), Poly(rem)

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        lead = self.coeffs[-1]
        return Poly(c / lead for c in self.coeffs)

    def gcd(self, other: Poly) -> Poly:
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def is_squarefree(self) -> bool:
        return self.gcd(self.derivative()).degree == 0

    def rational_roots(self) -> list[Fraction]:
        """Distinct rational roots, ascending (rational root theorem)."""
        if self.is_zero():
            raise ValueError("zero polynomial has every root")
        roots = []
        p = self
        if p[0] == 0:
            roots.append(Fraction(0))
            k = next(i for i, c in enumerate(p.coeffs) if c)
            p = Poly(p.coeffs[k:])
        if p.degree < 1:
            return sorted(roots)
        den = 1
        for c in p.coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in p.coeffs]
        for num in _divisors(abs(ints[0])):
            for d in _divisors(abs(ints[-1])):
                for cand in (Fraction(num, d), Fraction(-num, d)):
                    if cand not in roots and p(cand) == 0:
                        roots.append(cand)
        return sorted(roots)


def _divisors(m: int) -> list[int]:
    small = [d for d in range(1, isqrt(m) + 1) if m % d == 0]
    return sorted(set(small + [m // d for d in small]))


def lagrange_basis(points: Sequence[Fraction]) -> list[Poly]:
    """Polynomials ell_k with ell_k(points[l]) = [k == l]."""
    basis = []
    for k, pk in enumerate(points):
        num = Poly([1])
        den = Fraction(1)
        for l, pl in enumerate(points):
            if l != k:
                num = num * Poly([-pl, 1])
                den *= pk - pl
        basis.append(num * (1 / den))
    return basis


# ---------------------------------------------------------------------------
# Sparse matrices
# ---------------------------------------------------------------------------


class SparseMatrix:
    """Square matrix of Fractions stored as ``{row: {col: value}}``.

    Treated as immutable.  Arithmetic with a plain number scales the matrix,
    so instances can serve as elements of a commutative coefficient ring.
    """

    __slots__ = ("dim", "rows", "_hash")

    def __init__(self, dim: int, rows: dict | None = None):
        self.dim = dim
        self.rows = {}
        if rows:
            for r, row in rows.items():
                clean = {c: v for c, v in row.items() if v}
                if clean:
                    self.rows[r] = clean
        self._hash = None

    @classmethod
    def zero(cls, dim: int) -> SparseMatrix:
        return cls(dim)

    @classmethod
    def identity(cls, dim: int) -> SparseMatrix:
        return cls.scalar(dim, 1)

    @classmethod
    def scalar(cls, dim: int, value) -> SparseMatrix:
        v = as_fraction(value)
        return cls(dim, {k: {k: v} for k in range(dim)} if v else None)

    @classmethod
    def from_entries(cls, dim: int, entries: Iterable[tuple[int, int, object]]) -> SparseMatrix:
        rows: dict = {}
        for r, c, v in entries:
            if not (0 <= r < dim and 0 <= c < dim):
                raise IndexError(f"entry ({r}, {c}) outside dimension {dim}")
            row = rows.setdefault(r, {})
            row[c] = row.get(c, 0) + as_fraction(v)
        return cls(dim, rows)

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence]) -> SparseMatrix:
        dim = len(dense)
        return cls(dim, {r: {c: as_fraction(v) for c, v in enumerate(row) if v}
                         for r, row in enumerate(dense)})

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for r, row in self.rows.items():
            for c, v in row.items():
                out[r][c] = v
        return out

    def entries(self) -> list[tuple[int, int, Fraction]]:
        return [(r, c, self.rows[r][c]) for r in sorted(self.rows) for c in sorted(self.rows[r])]

    def __getitem__(self, rc: tuple[int, int]) -> Fraction:
        r, c = rc
        return self.rows.get(r, {}).get(c, Fraction(0))

    @property
    def nnz(self) -> int:
        return sum(len(row) for row in self.rows.values())

    def __bool__(self):
        return bool(self.rows)

    def __eq__(self, other):
        if isinstance(other, SparseMatrix):
            return self.dim == other.dim and self.rows == other.rows
        if isinstance(other, (int, Fraction)):
            return self == SparseMatrix.scalar(self.dim, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dim, tuple(self.entries())))
        return self._hash

    def __repr__(self):
        return f"SparseMatrix(dim={self.dim}, nnz={self.nnz})"

    def _check(self, other: SparseMatrix):
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch {self.dim} vs {other.dim}")

    def __add__(self, other) -> SparseMatrix:
        if isinstance(other, (int, Fraction)):
            other = SparseMatrix.scalar(self.dim, other)
        elif not isinstance(other, SparseMatrix):
            return NotImplemented
        self._check(other)
        rows = {r: dict(row) for r, row in self.rows.items()}
        for r, row in other.rows.items():
            acc = rows.setdefault(r, {})
            for c, v in row.items():
                acc[c] = acc.get(c, 0) + v
        return SparseMatrix(self.dim, rows)

    __radd__ = __add__

    def __neg__(self) -> SparseMatrix:
        return SparseMatrix(self.dim, {r: {c: -v for c, v in row.items()}
                                       for r, row in self.rows.items()})

    def __sub__(self, other) -> SparseMatrix:
        if isinstance(other, (int, Fraction)):
            other = SparseMatrix.scalar(self.dim, other)
        elif not isinstance(other, SparseMatrix):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> SparseMatrix:
        return (-self) + other

    def __mul__(self, other) -> SparseMatrix:
        if isinstance(other, (int, Fraction)):
            if not other:
                return SparseMatrix(self.dim)
            return SparseMatrix(self.dim, {r: {c: v * other for c, v in row.items()}
                                           for r, row in self.rows.items()})
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        self._check(other)
        orows = other.rows
        rows = {}
        for r, row in self.rows.items():
            acc: dict = {}
            for k, a in row.items():
                brow = orows.get(k)
                if brow:
                    for c, b in brow.items():
                        acc[c] = acc.get(c, 0) + a * b
            rows[r] = acc
        return SparseMatrix(self.dim, rows)

    def __rmul__(self, other) -> SparseMatrix:
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, e: int) -> SparseMatrix:
        out = SparseMatrix.identity(self.dim)
        for _ in range(e):
            out = out * self
        return out

    def commutator(self, other: SparseMatrix) -> SparseMatrix:
        return self * other - other * self

    def transpose(self) -> SparseMatrix:
        rows: dict = {}
        for r, row in self.rows.items():
            for c, v in row.items():
                rows.setdefault(c, {})[r] = v
        return SparseMatrix(self.dim, rows)

    def trace(self) -> Fraction:
        return sum((row.get(r, Fraction(0)) for r, row in self.rows.items()), Fraction(0))

    def apply(self, vector: Sequence) -> list[Fraction]:
        out = [Fraction(0)] * self.dim
        for r, row in self.rows.items():
            out[r] = sum((v * vector[c] for c, v in row.items()), Fraction(0))
        return out

    def restrict(self, indices: Sequence[int]) -> list[list[Fraction]]:
        """Dense submatrix on the given rows and columns (in that order)."""
        return [[self[r, c] for c in indices] for r in indices]

    def is_scalar(self) -> bool:
        diag = self[0, 0] if self.dim else Fraction(0)
        return self == SparseMatrix.scalar(self.dim, diag)

    def to_json(self) -> dict:
        return {"dim": self.dim,
                "entries": [[r, c, fraction_to_str(v)] for r, c, v in self.entries()]}

    @classmethod
    def from_json(cls, data: dict) -> SparseMatrix:
        return cls.from_entries(data["dim"], ((r, c, parse_rational(v)) for r, c, v in data["entries"]))


OperatorMatrix = SparseMatrix


# ---------------------------------------------------------------------------
# Dense exact linear algebra over Fractions
# ---------------------------------------------------------------------------


def rref(matrix: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [[as_fraction(v) for v in row] for row in matrix]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(matrix: Sequence[Sequence]) -> int:
    return len(rref(matrix)[1]) if matrix else 0


def nullspace(matrix: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel, one vector per free column (ascending)."""
    if not matrix:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    reduced, pivots = rref(matrix)
    ncols = len(matrix[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(reduced, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    """Exact solution of a square nonsingular system."""
    n = len(matrix)
    if any(len(row) != n for row in matrix) or len(rhs) != n:
        raise ValueError("solve expects a square system")
    aug = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    reduced, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) > n:
        raise SingularSystemError(rank(matrix))
    return [reduced[i][n] for i in range(n)]


def inverse(matrix: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(matrix)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(matrix)]
    reduced, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularSystemError(rank(matrix))
    return [row[n:] for row in reduced]


def det_elimination(matrix: Sequence[Sequence]) -> Fraction:
    """Determinant by exact Gaussian elimination with row pivoting."""
    m = [[as_fraction(v) for v in row] for row in matrix]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        pr = next((i for i in range(c, n) if m[i][c]), None)
        if pr is None:
            return Fraction(0)
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / m[c][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


def matvec(matrix: Sequence[Sequence], vector: Sequence) -> list[Fraction]:
    return [sum((a * b for a, b in zip(row, vector)), Fraction(0)) for row in matrix]


# ---------------------------------------------------------------------------
# Ring-generic dense matrices (entries commute pairwise: caller contract)
# ---------------------------------------------------------------------------


def _ring_sum(items, zero):
    acc = zero
    for x in items:
        acc = acc + x
    return acc


def ring_matmul(a: Sequence[Sequence], b: Sequence[Sequence], zero) -> list[list]:
    n, k, m = len(a), len(b), len(b[0])
    return [[_ring_sum((a[i][t] * b[t][j] for t in range(k)), zero) for j in range(m)]
            for i in range(n)]


def ring_identity(n: int, one, zero) -> list[list]:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def _require_square(m: Sequence[Sequence]) -> int:
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    return n


def permutation_sign(perm: Sequence[int]) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def det_leibniz(m: Sequence[Sequence], one) -> object:
    n = _require_square(m)
    total = one * 0
    for perm in itertools.permutations(range(n)):
        term = one
        for i, j in enumerate(perm):
            term = term * m[i][j]
        total = total + term if permutation_sign(perm) > 0 else total - term
    return total


def charpoly_berkowitz(m: Sequence[Sequence], one) -> list:
    """Coefficients of det(t - m), highest degree first, division free."""
    n = _require_square(m)
    zero = one * 0
    vect = [one]
    for r in range(n):
        a = m[r][r]
        row = [m[r][k] for k in range(r)]
        col = [m[k][r] for k in range(r)]
        # Toeplitz column: 1, -a, -R C, -R M C, ..., -R M^{r-1} C
        t = [one, -a]
        cur = col
        for _ in range(r):
            t.append(-_ring_sum((row[k] * cur[k] for k in range(r)), zero))
            cur = [_ring_sum((m[i][k] * cur[k] for k in range(r)), zero) for i in range(r)]
        vect = [_ring_sum((t[i - j] * vect[j] for j in range(len(vect)) if 0 <= i - j < len(t)), zero)
                for i in range(r + 2)]
    return vect


def det_berkowitz(m: Sequence[Sequence], one) -> object:
    n = _require_square(m)
    c = charpoly_berkowitz(m, one)[n]
    return c if n % 2 == 0 else -c


def det_division_free(m: Sequence[Sequence], one=Fraction(1)) -> object:
    """Determinant over a commutative ring: Leibniz up to 4x4, Berkowitz beyond."""
    n = _require_square(m)
    if n == 0:
        return one
    if n <= 4:
        return det_leibniz(m, one)
    return det_berkowitz(m, one)


def ring_inverse_scalar(value):
    """Multiplicative inverse of a Fraction or of an invertible SparseMatrix."""
    if isinstance(value, SparseMatrix):
        return SparseMatrix.from_dense(inverse(value.to_dense()))
    if value == 0:
        raise ZeroDivisionError("inverse of zero")
    return 1 / as_fraction(value)


# ---------------------------------------------------------------------------
# Rational functions in partial-fraction normal form
# ---------------------------------------------------------------------------

# A term key is (POLY, d) for u**d or (a, k) for (u - z_a)**(-k), k >= 1.
POLY = -1


@lru_cache(maxsize=None)
def _basis_product(poles: tuple, k1: tuple, k2: tuple) -> tuple:
    """Partial-fraction expansion of the product of two basis functions."""
    out: dict = {}

    def add(key, v):
        out[key] = out.get(key, 0) + v

    (a, k), (b, l) = k1, k2
    if a == POLY and b == POLY:
        add((POLY, k + l), Fraction(1))
    elif a == POLY or b == POLY:
        p, (c, kk) = (k, k2) if a == POLY else (l, k1)
        z = poles[c]
        # u^p = sum_r C(p,r) z^(p-r) (u-z)^r
        for r in range(p + 1):
            w = comb(p, r) * z ** (p - r)
            e = r - kk
            if e < 0:
                add((c, -e), w)
            else:
                for s in range(e + 1):
                    add((POLY, s), w * comb(e, s) * (-z) ** (e - s))
    elif a == b:
        add((a, k + l), Fraction(1))
    else:
        d = poles[a] - poles[b]
        for i in range(1, k + 1):
            add((a, i), (-1) ** (k - i) * comb(l + k - i - 1, k - i) * d ** (-(l + k - i)))
        for i in range(1, l + 1):
            add((b, i), (-1) ** (l - i) * comb(k + l - i - 1, l - i) * (-d) ** (-(k + l - i)))
    return tuple((key, as_fraction(v)) for key, v in sorted(out.items()) if v)


class RatFun:
    """Rational function of u with poles among fixed points z_1..z_n.

    Stored as a linear combination of u**d and (u - z_a)**(-k).  The
    coefficients may be Fractions or SparseMatrix values; products keep the
    left factor's coefficient on the left, so matrix-valued functions
    multiply correctly.  ``zero`` is the additive identity of the
    coefficient type.
    """

    __slots__ = ("poles", "terms", "zero")

    def __init__(self, poles: Sequence, terms: dict | None = None, zero=Fraction(0)):
        self.poles = tuple(as_fraction(z) for z in poles)
        self.zero = zero
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def constant(cls, poles, value, zero=Fraction(0)) -> RatFun:
        return cls(poles, {(POLY, 0): value}, zero)

    @classmethod
    def pole(cls, poles, a: int, order: int = 1, coeff=Fraction(1), zero=Fraction(0)) -> RatFun:
        return cls(poles, {(a, order): coeff}, zero)

    @classmethod
    def from_poly(cls, poles, poly: Poly) -> RatFun:
        return cls(poles, {(POLY, d): c for d, c in enumerate(poly.coeffs)})

    @property
    def polynomial_part(self) -> dict:
        return {d: v for (a, d), v in self.terms.items() if a == POLY}

    @property
    def pole_terms(self) -> dict:
        return {(a, k): v for (a, k), v in self.terms.items() if a != POLY}

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: RatFun):
        if self.poles != other.poles:
            raise IncompatiblePolesError()

    def __eq__(self, other):
        if not isinstance(other, RatFun):
            return NotImplemented
        return self.poles == other.poles and self.terms == other.terms

    def __repr__(self):
        return f"RatFun(poles={[fraction_to_str(z) for z in self.poles]}, terms={len(self.terms)})"

    def __add__(self, other: RatFun) -> RatFun:
        self._check(other)
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms[k] + v if k in terms else v
        return RatFun(self.poles, terms, self.zero)

    def __neg__(self) -> RatFun:
        return RatFun(self.poles, {k: -v for k, v in self.terms.items()}, self.zero)

    def __sub__(self, other: RatFun) -> RatFun:
        return self + (-other)

    def scale(self, s) -> RatFun:
        """Multiply every coefficient by ``s`` on the right."""
        return RatFun(self.poles, {k: v * s for k, v in self.terms.items()}, self.zero)

    def __mul__(self, other) -> RatFun:
        if not isinstance(other, RatFun):
            return self.scale(other)
        self._check(other)
        zero = self.zero if not isinstance(self.zero, Fraction) else other.zero
        terms: dict = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                prod = v1 * v2
                if not prod:
                    continue
                for key, w in _basis_product(self.poles, k1, k2):
                    t = prod * w
                    terms[key] = terms[key] + t if key in terms else t
        return RatFun(self.poles, terms, zero)

    def derivative(self) -> RatFun:
        terms: dict = {}
        for (a, k), v in self.terms.items():
            if a == POLY:
                if k:
                    terms[(POLY, k - 1)] = v * k
            else:
                terms[(a, k + 1)] = v * (-k)
        return RatFun(self.poles, terms, self.zero)

    def __call__(self, u):
        u = as_fraction(u)
        acc = self.zero
        for (a, k), v in self.terms.items():
            if a == POLY:
                acc = acc + v * u ** k
            else:
                if u == self.poles[a]:
                    raise ZeroDivisionError(f"evaluation at pole z_{a + 1}")
                acc = acc + v * (u - self.poles[a]) ** (-k)
        return acc

    def coeff_at_infinity(self, j: int):
        """Coefficient of u**(-j) in the expansion at u = infinity."""
        if j <= 0:
            return self.terms.get((POLY, -j), self.zero)
        acc = self.zero
        for (a, k), v in self.terms.items():
            if a != POLY and k <= j:
                acc = acc + v * (comb(j - 1, k - 1) * self.poles[a] ** (j - k))
        return acc

    def residue(self, a: int):
        return self.terms.get((a, 1), self.zero)

    def max_pole_order(self) -> int:
        return max((k for (a, k) in self.terms if a != POLY), default=0)

    def poly_degree(self) -> int:
        return max((k for (a, k) in self.terms if a == POLY), default=-1)


# ---------------------------------------------------------------------------
# Seeded rationals
# ---------------------------------------------------------------------------


class SeededRationals:
    """Deterministic rationals p/q with p in [-20, 20], q in [1, 10].

    Backed by ``random.Random`` (Mersenne Twister) seeded with a 64-bit
    integer, so a seed reproduces every draw bit for bit.
    """

    def __init__(self, seed: int, num_range: int = 20, den_range: int = 10):
        self.seed = seed & (2 ** 64 - 1)
        self.rng = random.Random(self.seed)
        self.num_range = num_range
        self.den_range = den_range

    def rational(self) -> Fraction:
        p = self.rng.randint(-self.num_range, self.num_range)
        q = self.rng.randint(1, self.den_range)
        return Fraction(p, q)

    def rationals(self, k: int) -> list[Fraction]:
        return [self.rational() for _ in range(k)]

    def distinct(self, k: int, avoid: Iterable = ()) -> list[Fraction]:
        seen = set(avoid)
        out = []
        while len(out) < k:
            v = self.rational()
            if v not in seen:
                seen.add(v)
                out.append(v)
        return out

    def nonzero(self) -> Fraction:
        while True:
            v = self.rational()
            if v:
                return v


# ---------------------------------------------------------------------------
# Truncated double series
# ---------------------------------------------------------------------------


@dataclass
class BiSeries:
    """Truncated 1 + sum_{i<=I, j<=J} c_ij u^{-j} x^{-i}.

    Coefficients are SparseMatrix values (``dim`` set) or Fractions
    (``dim`` None).
    """

    I: int
    J: int
    dim: int | None
    coeffs: dict

    def __getitem__(self, ij: tuple[int, int]):
        return self.coeffs[ij]

    def to_json(self) -> dict:
        def enc(v):
            return v.to_json() if isinstance(v, SparseMatrix) else fraction_to_str(v)
        return {"I": self.I, "J": self.J,
                "coefficients": [{"i": i, "j": j, "value": enc(self.coeffs[i, j])}
                                 for i in range(1, self.I + 1) for j in range(1, self.J + 1)]}
