from fractions import Fraction as F

import pytest

from bethe_lab import bethe_rdet as br
from bethe_lab.exact_core import POLY, RatFun, SeededRationals, SparseMatrix, elementary_symmetric
from bethe_lab.gaudin import GaudinConfig, hamiltonian
from bethe_lab.tensor_rep import generator_action, total_generator


def _scalar_op(poles, dim, terms):
    zero = SparseMatrix.zero(dim)
    return RatFun(poles, {k: SparseMatrix.scalar(dim, v) for k, v in terms.items()}, zero)


def test_leibniz_derivation_times_pole():
    poles, dim = (F(0), F(2)), 1
    d = br.DiffOp.d(poles, dim)
    f = br.DiffOp.scalar(_scalar_op(poles, dim, {(0, 1): F(1)}), dim)
    # d o (1/u) = (1/u) d - 1/u^2
    expected = br.DiffOp([_scalar_op(poles, dim, {(0, 2): F(-1)}),
                          _scalar_op(poles, dim, {(0, 1): F(1)})], poles, dim)
    assert d * f == expected


def test_square_of_shifted_derivation():
    poles, dim = (F(0),), 1
    c = F(3, 2)
    op = br.DiffOp.d(poles, dim) - br.DiffOp.scalar(_scalar_op(poles, dim, {(POLY, 0): c}), dim)
    sq = op * op
    assert [sq.coeff(k) for k in range(3)] == [_scalar_op(poles, dim, {(POLY, 0): c * c}),
                                               _scalar_op(poles, dim, {(POLY, 0): -2 * c}),
                                               _scalar_op(poles, dim, {(POLY, 0): F(1)})]


def test_diffop_associativity_seeded():
    poles, dim = (F(0), F(1)), 2
    rng = SeededRationals(9)
    zero = SparseMatrix.zero(dim)

    def rand_op():
        coeffs = []
        for _ in range(2):
            terms = {(a, k): SparseMatrix.from_dense([[rng.rational() for _ in range(dim)] for _ in range(dim)])
                     for a, k in ((0, 1), (1, 2), (POLY, 1))}
            coeffs.append(RatFun(poles, terms, zero))
        return br.DiffOp(coeffs, poles, dim)

    for _ in range(3):
        a, b, c = rand_op(), rand_op(), rand_op()
        assert (a * b) * c == a * (b * c)


def test_current_residues_are_generators():
    cfg = GaudinConfig(2, 2, (0, 1), (F(1, 2), 3))
    e = br.current(1, 2, cfg)
    for a in range(2):
        assert e.residue(a) == generator_action(1, 2, a + 1, cfg.rep)


def test_N1_operator():
    # gl_1: D = d - K - sum_a 1/(u - z_a)
    cfg = GaudinConfig(1, 3, (F(2),), (0, 1, F(5, 2)))
    B1 = br.B_functions(cfg)[1]
    expected = _scalar_op(cfg.z, 1, {(POLY, 0): F(-2), (0, 1): F(-1), (1, 1): F(-1), (2, 1): F(-1)})
    assert B1 == expected


def test_hand_expansion_N2_n1():
    # oracle: expand (d - K1 - e11/u)(d - K2 - e22/u) - e21 e12 / u^2 by hand
    K1, K2 = F(3), F(-1, 2)
    cfg = GaudinConfig(2, 1, (K1, K2), (0,))
    rep = cfg.rep
    e = {(i, j): generator_action(i, j, 1, rep) for i in (1, 2) for j in (1, 2)}
    I = SparseMatrix.identity(2)
    zero = SparseMatrix.zero(2)
    B1 = RatFun((F(0),), {(POLY, 0): I * (-K1 - K2), (0, 1): -(e[1, 1] + e[2, 2])}, zero)
    B2 = RatFun((F(0),), {(POLY, 0): I * (K1 * K2),
                          (0, 1): e[2, 2] * K1 + e[1, 1] * K2,
                          (0, 2): e[1, 1] * e[2, 2] + e[2, 2] - e[2, 1] * e[1, 2]}, zero)
    B = br.B_functions(cfg)
    assert B[1] == B1 and B[2] == B2


@pytest.mark.parametrize("shape", [(1, 3), (2, 2), (3, 2), (2, 3)])
def test_constant_terms(shape):
    cfg = GaudinConfig.seeded(*shape, seed=3)
    for i in range(cfg.N + 1):
        assert br.B_coefficient(cfg, i, 0) == SparseMatrix.scalar(cfg.dim, (-1) ** i * elementary_symmetric(cfg.K, i))


def test_psi1_closed_form():
    cfg = GaudinConfig.seeded(2, 3, seed=5)
    psi1 = br.psi_functions(cfg, 1)[0]
    expected = _scalar_op(cfg.z, cfg.dim, {(a, 1): F(-1) for a in range(cfg.n)})
    assert psi1 == expected
    assert psi1.coeff_at_infinity(2) == SparseMatrix.scalar(cfg.dim, -sum(cfg.z))


def test_psi2_residues_are_hamiltonians():
    cfg = GaudinConfig.seeded(2, 3, seed=8)
    psi2 = br.psi_functions(cfg, 2)[1]
    assert not psi2.polynomial_part and psi2.max_pole_order() == 1
    for a in range(cfg.n):
        shift = sum((1 / (cfg.z[a] - zb) for zb in cfg.z if zb != cfg.z[a]), F(0))
        assert psi2.residue(a) == -hamiltonian(a + 1, cfg) + SparseMatrix.scalar(cfg.dim, shift)


def test_psi_commutativity_small():
    cfg = GaudinConfig.seeded(2, 2, seed=2)
    S = br.psi_biseries(cfg, 4, 4)
    keys = list(S.coeffs)
    for k1 in keys:
        for k2 in keys:
            assert not S[k1].commutator(S[k2])


def test_psi_dagger_matches_resolvent():
    cfg = GaudinConfig.seeded(3, 2, seed=6)
    assert br.psi_dagger(cfg, 6) == br.diagonal_resolvent_series(cfg, 6)


def test_B_reconstructed_from_psi():
    # prod(x - K_i) * sum_p Psi_p x^-p recovers B_i for i <= N
    cfg = GaudinConfig.seeded(3, 2, seed=1)
    psi = br.psi_functions(cfg, cfg.N)
    B = br.B_functions(cfg)
    e = [elementary_symmetric(cfg.K, k) for k in range(cfg.N + 1)]
    for i in range(1, cfg.N + 1):
        acc = psi[i - 1]
        for k in range(1, i):
            acc = acc + psi[i - 1 - k].scale((-1) ** k * e[k])
        acc = acc + B[0].scale((-1) ** i * e[i])
        assert acc == B[i]


def test_regularized_N1():
    cfg = GaudinConfig(1, 2, (F(2),), (0, 1))
    A = br.regularized_operator(cfg)
    # P(u)(d - 2 - 1/u - 1/(u-1)) with P = u^2 - u
    assert A[1, 2] == SparseMatrix.scalar(1, 1) and A[1, 1] == SparseMatrix.scalar(1, -1)
    assert A[0, 2] == SparseMatrix.scalar(1, -2)
    assert A[0, 1] == SparseMatrix.scalar(1, 2 - 2)
    assert A[0, 0] == SparseMatrix.scalar(1, 1)
    assert br.verify_regularized_boundaries(cfg, A) == []


def test_regularized_commutes_with_total_generators():
    cfg = GaudinConfig.seeded(2, 3, seed=4)
    A = br.regularized_operator(cfg)
    for i in (1, 2):
        E = total_generator(i, i, cfg.rep)
        assert all(not coeff.commutator(E) for coeff in A.values())
