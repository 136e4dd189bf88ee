"""Universal differential operator on V^{(x)n} and the Bethe algebra generators.

The row determinant of the N x N operator matrix is expanded term by term
in the ring of differential operators in u whose coefficients are
matrix-valued rational functions (:class:`~bethe_lab.exact_core.RatFun`
with ``SparseMatrix`` coefficients).  Every step is exact; the u^{-j}
coefficients B_ij and Psi_ij are read off the closed forms at the end.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import comb

from .exact_core import (
    BiSeries,
    Poly,
    RatFun,
    SparseMatrix,
    complete_homogeneous,
    elementary_symmetric,
    permutation_sign,
)
from .tensor_rep import generator_action, total_generator


class RegularizationError(ArithmeticError):
    def __init__(self, detail: str = ""):
        super().__init__("regularization failed" + (f": {detail}" if detail else ""))


class DiffOp:
    """sum_k coeffs[k](u) d^k with matrix-valued rational coefficients."""

    __slots__ = ("coeffs", "poles", "dim")

    def __init__(self, coeffs, poles, dim: int):
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)
        self.poles = tuple(poles)
        self.dim = dim

    @classmethod
    def scalar(cls, f: RatFun, dim: int) -> DiffOp:
        return cls([f], f.poles, dim)

    @classmethod
    def d(cls, poles, dim: int) -> DiffOp:
        """The derivation d/du."""
        zero = SparseMatrix.zero(dim)
        return cls([RatFun(poles, zero=zero),
                    RatFun.constant(poles, SparseMatrix.identity(dim), zero)], poles, dim)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> RatFun:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return RatFun(self.poles, zero=SparseMatrix.zero(self.dim))

    def __eq__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self.poles == other.poles and self.coeffs == other.coeffs

    def __repr__(self):
        return f"DiffOp(order={self.order}, dim={self.dim})"

    def __add__(self, other: DiffOp) -> DiffOp:
        n = max(len(self.coeffs), len(other.coeffs))
        return DiffOp([self.coeff(k) + other.coeff(k) for k in range(n)], self.poles, self.dim)

    def __neg__(self) -> DiffOp:
        return DiffOp([-c for c in self.coeffs], self.poles, self.dim)

    def __sub__(self, other: DiffOp) -> DiffOp:
        return self + (-other)

    def __mul__(self, other: DiffOp) -> DiffOp:
        # d^k o f = sum_r C(k, r) f^(r) d^(k - r)
        if not self.coeffs or not other.coeffs:
            return DiffOp([], self.poles, self.dim)
        kmax = self.order
        derivs = []
        for b in other.coeffs:
            chain = [b]
            for _ in range(kmax):
                chain.append(chain[-1].derivative())
            derivs.append(chain)
        out = [None] * (self.order + other.order + 1)
        for k, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for m, chain in enumerate(derivs):
                for r in range(k + 1):
                    term = chain[r]
                    if term.is_zero():
                        continue
                    prod = a * term
                    if r and comb(k, r) != 1:
                        prod = prod.scale(Fraction(comb(k, r)))
                    idx = k - r + m
                    out[idx] = prod if out[idx] is None else out[idx] + prod
        zero = SparseMatrix.zero(self.dim)
        return DiffOp([c if c is not None else RatFun(self.poles, zero=zero) for c in out],
                      self.poles, self.dim)


def current(i: int, j: int, cfg) -> RatFun:
    """e_ij(u) = sum_a e_ij^(a) / (u - z_a) on V^{(x)n}."""
    zero = SparseMatrix.zero(cfg.dim)
    terms = {(a, 1): generator_action(i, j, a + 1, cfg.rep) for a in range(cfg.n)}
    return RatFun(cfg.z, terms, zero)


def operator_matrix(cfg) -> list[list[DiffOp]]:
    """Entries d - K_i - e_ii(u) on the diagonal and -e_ji(u) at (i, j)."""
    dim = cfg.dim
    d = DiffOp.d(cfg.z, dim)
    zero = SparseMatrix.zero(dim)
    rows = []
    for i in range(1, cfg.N + 1):
        row = []
        for j in range(1, cfg.N + 1):
            entry = DiffOp.scalar(-current(j, i, cfg), dim)
            if i == j:
                shift = RatFun.constant(cfg.z, SparseMatrix.scalar(dim, -cfg.K[i - 1]), zero)
                entry = d + entry + DiffOp.scalar(shift, dim)
            row.append(entry)
        rows.append(row)
    return rows


def row_determinant(matrix: list[list[DiffOp]]) -> DiffOp:
    """sum over sigma of sign(sigma) a_{1 sigma(1)} ... a_{N sigma(N)}, factors in row order."""
    n = len(matrix)
    total = None
    for perm in itertools.permutations(range(n)):
        term = matrix[0][perm[0]]
        for r in range(1, n):
            term = term * matrix[r][perm[r]]
        if permutation_sign(perm) < 0:
            term = -term
        total = term if total is None else total + term
    return total


@lru_cache(maxsize=None)
def universal_operator(cfg) -> DiffOp:
    """D = rdet(d - K - e(u)^T) = d^N + sum_i B_i(u) d^(N-i)."""
    op = row_determinant(operator_matrix(cfg))
    if op.order != cfg.N or op.coeffs[-1] != RatFun.constant(cfg.z, SparseMatrix.identity(cfg.dim),
                                                              SparseMatrix.zero(cfg.dim)):
        raise ArithmeticError("universal operator is not monic of order N")
    return op


def B_functions(cfg) -> list[RatFun]:
    """[B_0 = 1, B_1(u), ..., B_N(u)]."""
    op = universal_operator(cfg)
    return [op.coeff(cfg.N - i) for i in range(cfg.N + 1)]


def B_coefficient(cfg, i: int, j: int) -> SparseMatrix:
    """B_ij: coefficient of u^{-j} in B_i(u)."""
    return B_functions(cfg)[i].coeff_at_infinity(j)


def psi_functions(cfg, I: int) -> list[RatFun]:
    """[Psi_1(u), ..., Psi_I(u)] from (x^N + sum B_i x^{N-i}) / prod (x - K_i).

    1 / prod(x - K_i) = x^{-N} sum_m h_m(K) x^{-m}, so
    Psi_p(u) = sum_{i <= min(p, N)} h_{p-i}(K) B_i(u).
    """
    B = B_functions(cfg)
    h = [complete_homogeneous(cfg.K, m) for m in range(I + 1)]
    out = []
    for p in range(1, I + 1):
        acc = None
        for i in range(min(p, cfg.N) + 1):
            term = B[i].scale(h[p - i])
            acc = term if acc is None else acc + term
        out.append(acc)
    return out


def psi_biseries(cfg, I: int, J: int) -> BiSeries:
    funcs = psi_functions(cfg, I)
    for p, f in enumerate(funcs, start=1):
        if f.coeff_at_infinity(0) or f.poly_degree() > 0:
            raise ArithmeticError(f"Psi_{p}(u) has a nonzero u^0 or polynomial term")
    coeffs = {(i, j): funcs[i - 1].coeff_at_infinity(j)
              for i in range(1, I + 1) for j in range(1, J + 1)}
    return BiSeries(I, J, cfg.dim, coeffs)


def psi_dagger(cfg, I: int) -> list[SparseMatrix]:
    """Coefficients of x^{-1}, ..., x^{-I} in -sum_i Psi_{i1} x^{-i}."""
    return [-f.coeff_at_infinity(1) for f in psi_functions(cfg, I)]


def diagonal_resolvent_series(cfg, I: int) -> list[SparseMatrix]:
    """Expansion of sum_{i,a} e_ii^(a) / (x - K_i): x^{-m} carries sum_i K_i^{m-1} E_ii."""
    E = [total_generator(i, i, cfg.rep) for i in range(1, cfg.N + 1)]
    out = []
    for m in range(1, I + 1):
        acc = SparseMatrix.zero(cfg.dim)
        for k, e in zip(cfg.K, E):
            acc = acc + e * k ** (m - 1)
        out.append(acc)
    return out


def constant_term_target(cfg, i: int) -> SparseMatrix:
    """(-1)^i e_i(K) times the identity: the u^0 part of B_i."""
    return SparseMatrix.scalar(cfg.dim, (-1) ** i * elementary_symmetric(cfg.K, i))


def regularized_operator(cfg) -> dict:
    """A_ia with P(u) D = sum_{i,a} A_ia u^a d^i, P(u) = prod (u - z_a)."""
    op = universal_operator(cfg)
    P = RatFun.from_poly(cfg.z, Poly.from_roots(cfg.z))
    zero = SparseMatrix.zero(cfg.dim)
    out = {}
    for i in range(cfg.N + 1):
        reg = P * op.coeff(i)
        if reg.pole_terms:
            raise RegularizationError(f"pole terms survive in the d^{i} coefficient")
        poly = reg.polynomial_part
        if poly and max(poly) > cfg.n:
            raise RegularizationError(f"degree {max(poly)} exceeds n in the d^{i} coefficient")
        for a in range(cfg.n + 1):
            out[i, a] = poly.get(a, zero)
    return out


def verify_regularized_boundaries(cfg, A: dict) -> list[str]:
    """Mismatches in the u^n column and the d^N row of the regularized operator."""
    problems = []
    P = Poly.from_roots(cfg.z)
    R = Poly.from_roots(cfg.K)
    for a in range(cfg.n + 1):
        if A[cfg.N, a] != SparseMatrix.scalar(cfg.dim, P[a]):
            problems.append(f"A[{cfg.N},{a}] != coefficient of u^{a} in P(u)")
    for i in range(cfg.N + 1):
        if A[i, cfg.n] != SparseMatrix.scalar(cfg.dim, R[i]):
            problems.append(f"A[{i},{cfg.n}] != coefficient of x^{i} in R(x)")
    return problems

