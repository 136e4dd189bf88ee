"""gl_N acting on the tensor power V^{(x)n} of the vector representation.

Basis vectors v_{i_1} (x) ... (x) v_{i_n} are indexed row-major with the
first tensor factor most significant; generator indices are 1-based as in
the usual e_ij notation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .exact_core import SparseMatrix, nullspace


@dataclass(frozen=True)
class RepConfig:
    N: int
    n: int

    def __post_init__(self):
        if self.N < 1 or self.n < 1:
            raise ValueError("N and n must be positive")

    @property
    def dim(self) -> int:
        return self.N ** self.n


def flat_index(multi_index, N: int, n: int) -> int:
    if len(multi_index) != n:
        raise ValueError(f"expected {n} indices, got {len(multi_index)}")
    out = 0
    for i in multi_index:
        if not 1 <= i <= N:
            raise ValueError(f"index {i} outside 1..{N}")
        out = out * N + (i - 1)
    return out


def multi_index(flat: int, N: int, n: int) -> tuple[int, ...]:
    if not 0 <= flat < N ** n:
        raise ValueError(f"flat index {flat} outside 0..{N ** n - 1}")
    digits = []
    for _ in range(n):
        flat, r = divmod(flat, N)
        digits.append(r + 1)
    return tuple(reversed(digits))


@lru_cache(maxsize=None)
def _generator(i: int, j: int, a: int, N: int, n: int) -> SparseMatrix:
    if not (1 <= i <= N and 1 <= j <= N and 1 <= a <= n):
        raise ValueError(f"generator e_{i}{j}^({a}) out of range for N={N}, n={n}")
    rows: dict = {}
    for idx in itertools.product(range(1, N + 1), repeat=n):
        if idx[a - 1] == j:
            target = idx[:a - 1] + (i,) + idx[a:]
            rows.setdefault(flat_index(target, N, n), {})[flat_index(idx, N, n)] = Fraction(1)
    return SparseMatrix(N ** n, rows)


def generator_action(i: int, j: int, a: int, cfg) -> SparseMatrix:
    """Matrix of e_ij acting in tensor factor a (all indices 1-based)."""
    return _generator(i, j, a, cfg.N, cfg.n)


@lru_cache(maxsize=None)
def _total(i: int, j: int, N: int, n: int) -> SparseMatrix:
    out = SparseMatrix.zero(N ** n)
    for a in range(1, n + 1):
        out = out + _generator(i, j, a, N, n)
    return out


def total_generator(i: int, j: int, cfg) -> SparseMatrix:
    """Diagonal (constant-loop) action sum_a e_ij^(a)."""
    return _total(i, j, cfg.N, cfg.n)


def commutator_check(i: int, j: int, s: int, k: int, a: int, cfg) -> SparseMatrix:
    """[e_ij, e_sk] - delta_js e_ik + delta_ik e_sj in factor a; zero when the relations hold."""
    eij = generator_action(i, j, a, cfg)
    esk = generator_action(s, k, a, cfg)
    out = eij.commutator(esk)
    if j == s:
        out = out - generator_action(i, k, a, cfg)
    if i == k:
        out = out + generator_action(s, j, a, cfg)
    return out


def weight_of(flat: int, N: int, n: int) -> tuple[int, ...]:
    idx = multi_index(flat, N, n)
    return tuple(idx.count(i) for i in range(1, N + 1))


def weight_subspaces(cfg) -> list[tuple[tuple[int, ...], list[int]]]:
    """Basis indices grouped by weight; weights in descending lex order."""
    groups: dict = {}
    for f in range(cfg.N ** cfg.n):
        groups.setdefault(weight_of(f, cfg.N, cfg.n), []).append(f)
    return [(w, groups[w]) for w in sorted(groups, reverse=True)]


def weight_dimension(weight) -> int:
    out = factorial(sum(weight))
    for lam in weight:
        out //= factorial(lam)
    return out


def singular_basis(cfg) -> list[list[Fraction]]:
    """Basis of the joint kernel of the raising operators sum_a e_ij^(a), i < j."""
    dim = cfg.N ** cfg.n
    stacked = []
    for i in range(1, cfg.N + 1):
        for j in range(i + 1, cfg.N + 1):
            stacked.extend(total_generator(i, j, cfg).to_dense())
    if not stacked:
        return [[Fraction(int(r == c)) for r in range(dim)] for c in range(dim)]
    return nullspace(stacked)
