"""Calogero-Moser side: the pair (Q, Z), the Baker-Akhiezer factor psi and its companions.

Matrices here are lists of lists whose entries live in a commutative ring:
either ``Fraction`` or ``SparseMatrix`` values from a commuting family such
as the Gaudin Hamiltonians.  ``one`` carries the ring's unit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact_core import (
    BiSeries,
    SparseMatrix,
    as_fraction,
    charpoly_berkowitz,
    det_division_free,
    lagrange_basis,
    rank,
    ring_identity,
    ring_inverse_scalar,
    ring_matmul,
)


class SpectralPointError(ArithmeticError):
    def __init__(self):
        super().__init__("evaluation at spectral point")


def unit_of(value):
    if isinstance(value, SparseMatrix):
        return SparseMatrix.identity(value.dim)
    return Fraction(1)


@dataclass(frozen=True)
class CMPair:
    X: tuple
    Y: tuple
    one: object = Fraction(1)

    def __post_init__(self):
        n = len(self.X)
        if len(self.Y) != n or any(len(r) != n for r in self.X) or any(len(r) != n for r in self.Y):
            raise ValueError("X and Y must be square of equal size")
        object.__setattr__(self, "X", tuple(tuple(r) for r in self.X))
        object.__setattr__(self, "Y", tuple(tuple(r) for r in self.Y))

    @property
    def n(self) -> int:
        return len(self.X)

    @property
    def zero(self):
        return self.one * 0


@dataclass(frozen=True)
class QZData:
    z: tuple
    h: tuple
    Q: tuple
    Z: tuple
    one: object

    @property
    def n(self) -> int:
        return len(self.z)

    @property
    def zero(self):
        return self.one * 0

    def pair(self) -> CMPair:
        """(X, Y) = (Q, Z)."""
        return CMPair(self.Q, self.Z, self.one)


def build_qz(z: Sequence, h: Sequence) -> QZData:
    """Q has h_a on the diagonal and 1/(z_b - z_a) at (a, b); Z = diag(z)."""
    z = tuple(as_fraction(v) for v in z)
    n = len(z)
    if len(set(z)) != n:
        raise ValueError("coincident evaluation points")
    if len(h) != n:
        raise ValueError(f"expected {n} values of h, got {len(h)}")
    h = tuple(v if isinstance(v, SparseMatrix) else as_fraction(v) for v in h)
    one = unit_of(h[0])
    zero = one * 0
    Q = tuple(tuple(h[a] if a == b else one * (1 / (z[b] - z[a])) for b in range(n)) for a in range(n))
    Z = tuple(tuple(one * z[a] if a == b else zero for b in range(n)) for a in range(n))
    return QZData(z, h, Q, Z, one)


def h_from_mu(z: Sequence, mu: Sequence) -> list[Fraction]:
    """h_a = -mu_a - sum_{b != a} 1/(z_a - z_b)."""
    return [-as_fraction(m) - sum((1 / (za - zb) for zb in z if zb != za), Fraction(0))
            for za, m in zip(z, mu)]


def commutator_plus_one(X, Y) -> list[list[Fraction]]:
    n = len(X)
    xy = ring_matmul(X, Y, Fraction(0))
    yx = ring_matmul(Y, X, Fraction(0))
    return [[xy[i][j] - yx[i][j] + (1 if i == j else 0) for j in range(n)] for i in range(n)]


def rank_one_check(X, Y) -> bool:
    """rank([X, Y] + 1) == 1 by exact elimination (Fraction entries)."""
    return rank(commutator_plus_one(X, Y)) == 1


def _shifted(m, t, one):
    """t - m for scalar t."""
    n = len(m)
    return [[(one * t if i == j else one * 0) - m[i][j] for j in range(n)] for i in range(n)]


def bivariate_det(u, x, pair: CMPair):
    """det((u - Y)(x - X) - 1) at scalar u, x."""
    one, zero = pair.one, pair.zero
    prod = ring_matmul(_shifted(pair.Y, u, one), _shifted(pair.X, x, one), zero)
    n = pair.n
    m = [[prod[i][j] - (one if i == j else zero) for j in range(n)] for i in range(n)]
    return det_division_free(m, one)


def phi_function(x, data: QZData):
    """det(x - Q)."""
    return det_division_free(_shifted(data.Q, as_fraction(x), data.one), data.one)


def psi_function(u, x, data: QZData):
    """det(1 - (u - Z)^{-1}(x - Q)^{-1}) via det((u-Z)(x-Q) - 1) / (P(u) det(x - Q))."""
    u, x = as_fraction(u), as_fraction(x)
    if u in data.z:
        raise SpectralPointError()
    P = Fraction(1)
    for za in data.z:
        P *= u - za
    phi = phi_function(x, data)
    try:
        inv = ring_inverse_scalar(phi)
    except (ZeroDivisionError, ArithmeticError):
        raise SpectralPointError() from None
    return bivariate_det(u, x, data.pair()) * inv * (1 / P)


def psi_dag_function(x, data: QZData):
    """tr((x - Q)^{-1}) = tr(adj(x - Q)) / det(x - Q)."""
    x = as_fraction(x)
    m = _shifted(data.Q, x, data.one)
    n = data.n
    try:
        inv = ring_inverse_scalar(det_division_free(m, data.one))
    except (ZeroDivisionError, ArithmeticError):
        raise SpectralPointError() from None
    adj_trace = data.zero
    for a in range(n):
        minor = [[m[i][j] for j in range(n) if j != a] for i in range(n) if i != a]
        adj_trace = adj_trace + det_division_free(minor, data.one)
    return adj_trace * inv


def phi_polynomial(data: QZData) -> list:
    """Coefficients of det(x - Q), highest degree first, ring valued."""
    return charpoly_berkowitz(data.Q, data.one)


def psi_dag_series(data: QZData, I: int) -> list:
    """x^{-1..-I} coefficients of phi'(x)/phi(x), i.e. power traces from Newton's identities."""
    c = phi_polynomial(data)
    n = data.n
    p = [data.one * n]
    for m in range(1, I):
        acc = data.one * 0
        for k in range(1, min(m - 1, n) + 1):
            acc = acc + c[k] * p[m - k]
        if m <= n:
            acc = acc + c[m] * m
        p.append(-acc)
    return p


def trace_word(word: Sequence[tuple[str, int]], pair: CMPair):
    """tr(X^{m1} Y^{m2} ...) for word [(letter, exponent), ...]."""
    one, zero = pair.one, pair.zero
    acc = ring_identity(pair.n, one, zero)
    for letter, exponent in word:
        if exponent < 0:
            raise ValueError("negative exponent in trace word")
        if letter not in ("X", "Y"):
            raise ValueError(f"unknown letter {letter!r}")
        m = pair.X if letter == "X" else pair.Y
        for _ in range(exponent):
            acc = ring_matmul(acc, m, zero)
    total = zero
    for i in range(pair.n):
        total = total + acc[i][i]
    return total


def parse_word(text: str) -> list[tuple[str, int]]:
    """'X2Y' -> [('X', 2), ('Y', 1)]; '' is the empty word."""
    word = []
    i = 0
    text = text.replace("^", "").strip()
    while i < len(text):
        letter = text[i]
        if letter not in "XY":
            raise ValueError(f"unknown letter {letter!r} in word {text!r}")
        j = i + 1
        while j < len(text) and text[j].isdigit():
            j += 1
        word.append((letter, int(text[i + 1:j]) if j > i + 1 else 1))
        i = j
    return word


def word_x_degree(word) -> int:
    return sum(e for letter, e in word if letter == "X")


def _inverse_monic_series(coeffs_high_first: list, terms: int, one) -> list:
    """s_0..s_{terms-1} with 1/(t^n + c_1 t^{n-1} + ...) = t^{-n} sum_m s_m t^{-m}."""
    n = len(coeffs_high_first) - 1
    s = [one]
    for m in range(1, terms):
        acc = one * 0
        for k in range(1, min(m, n) + 1):
            acc = acc + coeffs_high_first[k] * s[m - k]
        s.append(-acc)
    return s


def bivariate_coefficients(pair: CMPair) -> dict:
    """F_pq with det((u-Y)(x-X) - 1) = sum F_pq u^p x^q, by grid interpolation."""
    n = pair.n
    upts = [Fraction(k) for k in range(n + 1)]
    xpts = [Fraction(k) for k in range(n + 1)]
    Lu = lagrange_basis(upts)
    Lx = lagrange_basis(xpts)
    values = {(k, l): bivariate_det(uk, xl, pair)
              for k, uk in enumerate(upts) for l, xl in enumerate(xpts)}
    F = {}
    for p in range(n + 1):
        for q in range(n + 1):
            acc = pair.zero
            for (k, l), v in values.items():
                w = Lu[k][p] * Lx[l][q]
                if w:
                    acc = acc + v * w
            F[p, q] = acc
    return F


def phi0_full_table(pair: CMPair, I: int, J: int) -> dict:
    """Coefficients of u^{-j} x^{-i} for 0 <= i <= I, 0 <= j <= J."""
    n = pair.n
    F = bivariate_coefficients(pair)
    sY = _inverse_monic_series(charpoly_berkowitz(pair.Y, pair.one), J + n + 1, pair.one)
    sX = _inverse_monic_series(charpoly_berkowitz(pair.X, pair.one), I + n + 1, pair.one)

    def alpha(t):
        return sY[t - n] if t >= n else None

    def beta(t):
        return sX[t - n] if t >= n else None

    table = {}
    for i in range(I + 1):
        for j in range(J + 1):
            acc = pair.zero
            for (p, q), f in F.items():
                a, b = alpha(j + p), beta(i + q)
                if a is not None and b is not None and f:
                    acc = acc + f * a * b
            table[i, j] = acc
    return table


def phi0_expansion(pair: CMPair, I: int, J: int) -> BiSeries:
    """phi0(u, x, X, Y) = det(1 - (u-Y)^{-1}(x-X)^{-1}) = 1 + sum phi0_ij u^{-j} x^{-i}."""
    table = phi0_full_table(pair, I, J)
    if table[0, 0] != pair.one:
        raise ArithmeticError("constant term of phi0 is not 1")
    for i in range(1, I + 1):
        if table[i, 0]:
            raise ArithmeticError(f"phi0 has a pure x^-{i} term")
    for j in range(1, J + 1):
        if table[0, j]:
            raise ArithmeticError(f"phi0 has a pure u^-{j} term")
    dim = pair.one.dim if isinstance(pair.one, SparseMatrix) else None
    return BiSeries(I, J, dim, {(i, j): table[i, j] for i in range(1, I + 1) for j in range(1, J + 1)})


# ---------------------------------------------------------------------------
# Wronskians
# ---------------------------------------------------------------------------


def vandermonde_delta(z: Sequence) -> Fraction:
    """prod_{a<b} (z_b - z_a)."""
    out = Fraction(1)
    for a in range(len(z)):
        for b in range(a + 1, len(z)):
            out *= as_fraction(z[b]) - as_fraction(z[a])
    return out


def vandermonde_S(z: Sequence) -> list[list[Fraction]]:
    """S_ab = z_b^(a-1)."""
    n = len(z)
    return [[as_fraction(z[b]) ** a for b in range(n)] for a in range(n)]


def _f_derivative(z, mu, x, k) -> Fraction:
    """e^{-z x} d^k/dx^k [(x + mu) e^{z x}] = (x + mu) z^k + k z^{k-1}."""
    tail = k * z ** (k - 1) if k else Fraction(0)
    return (x + mu) * z ** k + tail


def wronskian_zero(z: Sequence, mu: Sequence, x) -> Fraction:
    """e^{-sum z_a x} Wr[f_1, ..., f_n](x) with f_a = (x + mu_a) e^{z_a x}."""
    z = [as_fraction(v) for v in z]
    mu = [as_fraction(v) for v in mu]
    x = as_fraction(x)
    n = len(z)
    m = [[_f_derivative(z[a], mu[a], x, k) for k in range(n)] for a in range(n)]
    return det_division_free(m, Fraction(1))


def wronskian_bivariate(z: Sequence, mu: Sequence, u, x) -> Fraction:
    """e^{-u x - sum z_a x} Wr[f_1, ..., f_n, e^{u x}](x)."""
    z = [as_fraction(v) for v in z]
    mu = [as_fraction(v) for v in mu]
    u, x = as_fraction(u), as_fraction(x)
    n = len(z)
    m = [[_f_derivative(z[a], mu[a], x, k) for k in range(n + 1)] for a in range(n)]
    m.append([u ** k for k in range(n + 1)])
    return det_division_free(m, Fraction(1))
