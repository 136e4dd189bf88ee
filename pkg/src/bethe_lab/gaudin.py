"""Classical Gaudin Hamiltonians on V^{(x)n} and exact spectral tooling."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .exact_core import (
    Poly,
    SeededRationals,
    SparseMatrix,
    as_fraction,
    charpoly_berkowitz,
    fraction_to_str,
    matvec,
    nullspace,
    rref,
    inverse,
)
from .tensor_rep import RepConfig, generator_action, total_generator


class ConfigError(ValueError):
    pass


class ConsistencyError(RuntimeError):
    """An identity that must hold by construction failed."""


class NonInvariantSubspaceError(ValueError):
    pass


@dataclass(frozen=True)
class GaudinConfig:
    N: int
    n: int
    K: tuple
    z: tuple

    def __post_init__(self):
        object.__setattr__(self, "K", tuple(as_fraction(k) for k in self.K))
        object.__setattr__(self, "z", tuple(as_fraction(v) for v in self.z))
        if self.N < 1 or self.n < 1:
            raise ConfigError("N and n must be positive")
        if len(self.K) != self.N:
            raise ConfigError(f"expected {self.N} values of K, got {len(self.K)}")
        if len(self.z) != self.n:
            raise ConfigError(f"expected {self.n} values of z, got {len(self.z)}")
        if len(set(self.z)) != self.n:
            raise ConfigError("coincident evaluation points")

    @property
    def dim(self) -> int:
        return self.N ** self.n

    @property
    def rep(self) -> RepConfig:
        return RepConfig(self.N, self.n)

    def with_z(self, z) -> GaudinConfig:
        return GaudinConfig(self.N, self.n, self.K, tuple(z))

    def to_json(self) -> dict:
        return {"N": self.N, "n": self.n,
                "K": [fraction_to_str(k) for k in self.K],
                "z": [fraction_to_str(v) for v in self.z]}

    @classmethod
    def seeded(cls, N: int, n: int, seed: int, distinct_K: bool = True) -> GaudinConfig:
        rng = SeededRationals(seed)
        K = rng.distinct(N) if distinct_K else [rng.rational()] * N
        return cls(N, n, tuple(K), tuple(rng.distinct(n)))


@lru_cache(maxsize=None)
def casimir_pair(a: int, b: int, N: int, n: int) -> SparseMatrix:
    """sum_{i,j} e_ij^(a) e_ji^(b): the permutation of factors a and b when a != b."""
    rep = RepConfig(N, n)
    out = SparseMatrix.zero(N ** n)
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            out = out + generator_action(i, j, a, rep) * generator_action(j, i, b, rep)
    return out


@lru_cache(maxsize=None)
def hamiltonian(a: int, cfg: GaudinConfig) -> SparseMatrix:
    """H_a = sum_i K_i e_ii^(a) + sum_{b != a} Omega_ab / (z_a - z_b)."""
    if not 1 <= a <= cfg.n:
        raise ValueError(f"site {a} outside 1..{cfg.n}")
    rep = cfg.rep
    out = SparseMatrix.zero(cfg.dim)
    for i in range(1, cfg.N + 1):
        out = out + generator_action(i, i, a, rep) * cfg.K[i - 1]
    for b in range(1, cfg.n + 1):
        if b != a:
            out = out + casimir_pair(a, b, cfg.N, cfg.n) * (1 / (cfg.z[a - 1] - cfg.z[b - 1]))
    return out


@dataclass(frozen=True)
class HamiltonianSet:
    config: GaudinConfig
    H: tuple

    def to_json(self) -> dict:
        return {"config": self.config.to_json(), "H": [h.to_json() for h in self.H]}


def hamiltonian_set(cfg: GaudinConfig) -> HamiltonianSet:
    H = tuple(hamiltonian(a, cfg) for a in range(1, cfg.n + 1))
    for a in range(cfg.n):
        for b in range(a + 1, cfg.n):
            if H[a].commutator(H[b]):
                raise ConsistencyError(f"[H_{a + 1}, H_{b + 1}] != 0")
    total = SparseMatrix.zero(cfg.dim)
    for i in range(1, cfg.N + 1):
        total = total + total_generator(i, i, cfg.rep) * cfg.K[i - 1]
    if sum(H, SparseMatrix.zero(cfg.dim)) != total:
        raise ConsistencyError("sum of Hamiltonians differs from sum_i K_i E_ii")
    return HamiltonianSet(cfg, H)


# ---------------------------------------------------------------------------
# Spectra
# ---------------------------------------------------------------------------


def charpoly(matrix: Sequence[Sequence]) -> Poly:
    """det(t - matrix) as a Poly (ascending coefficients)."""
    return Poly(reversed(charpoly_berkowitz(matrix, Fraction(1))))


def restrict_to_subspace(op: SparseMatrix, basis: Sequence[Sequence] | None) -> list[list[Fraction]]:
    """Matrix of ``op`` on span(basis), basis vectors as columns; raises if not invariant."""
    if basis is None:
        return op.to_dense()
    k = len(basis)
    if k == 0:
        return []
    # rows where the basis (as a dim x k matrix) has full rank
    _, pivot_rows = rref(basis)
    images = [op.apply(v) for v in basis]
    sub = [[basis[c][r] for c in range(k)] for r in pivot_rows]
    sub_inv = inverse(sub)
    rhs = [[images[c][r] for c in range(k)] for r in pivot_rows]
    coords = [[sum((sub_inv[i][t] * rhs[t][c] for t in range(k)), Fraction(0))
               for c in range(k)] for i in range(k)]
    for c in range(k):
        recon = [sum((basis[t][r] * coords[t][c] for t in range(k)), Fraction(0))
                 for r in range(len(basis[0]))]
        if recon != images[c]:
            raise NonInvariantSubspaceError("subspace is not invariant under the operator")
    return coords


@dataclass
class SpectrumCertificate:
    simple: bool
    witness: list = field(default_factory=list)
    gcd_degree: int = 0
    attempts: int = 0
    dimension: int = 0

    def to_json(self) -> dict:
        return {"simple": self.simple,
                "witness": [fraction_to_str(c) for c in self.witness],
                "gcd_degree": self.gcd_degree,
                "attempts": self.attempts,
                "dimension": self.dimension}


def simple_spectrum_certificate(ops: Sequence[SparseMatrix], subspace=None,
                                attempts: int = 8, seed: int = 0) -> SpectrumCertificate:
    """Look for c with sum c_a ops[a] having a squarefree characteristic polynomial.

    A squarefree hit proves the joint spectrum simple.  A miss after
    ``attempts`` tries is only evidence; see :func:`joint_eigenspaces`.
    """
    restricted = [restrict_to_subspace(op, subspace) for op in ops]
    dim = len(restricted[0])
    rng = SeededRationals(seed)
    gcd_degree = 0
    witness: list = []
    for attempt in range(1, attempts + 1):
        witness = [rng.nonzero() for _ in ops]
        combo = [[sum((c * m[r][s] for c, m in zip(witness, restricted)), Fraction(0))
                  for s in range(dim)] for r in range(dim)]
        p = charpoly(combo)
        g = p.gcd(p.derivative())
        gcd_degree = g.degree
        if gcd_degree == 0:
            return SpectrumCertificate(True, witness, 0, attempt, dim)
    return SpectrumCertificate(False, witness, gcd_degree, attempts, dim)


def joint_eigenspaces(ops: Sequence[SparseMatrix], subspace=None):
    """Joint eigenvalue tuples and eigenspace dimensions, by brute force.

    Returns None unless every operator splits over Q and the family is
    jointly diagonalizable, in which case the dimensions sum to the space
    dimension.
    """
    restricted = [restrict_to_subspace(op, subspace) for op in ops]
    dim = len(restricted[0])
    spaces = [((), [[Fraction(int(r == c)) for r in range(dim)] for c in range(dim)])]
    for m in restricted:
        roots = charpoly(m).rational_roots()
        refined = []
        for values, cols in spaces:
            for lam in roots:
                shifted = [[m[r][s] - (lam if r == s else 0) for s in range(dim)] for r in range(dim)]
                # (m - lam) W c = 0
                mw = [matvec(shifted, col) for col in cols]
                system = [[mw[c][r] for c in range(len(cols))] for r in range(dim)]
                kernel = nullspace(system, len(cols))
                if kernel:
                    new_cols = [[sum((cols[c][r] * v[c] for c in range(len(cols))), Fraction(0))
                                 for r in range(dim)] for v in kernel]
                    refined.append((values + (lam,), new_cols))
        spaces = refined
    if sum(len(cols) for _, cols in spaces) != dim:
        return None
    return [(values, len(cols)) for values, cols in spaces]
