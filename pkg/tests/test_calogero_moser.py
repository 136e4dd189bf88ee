from fractions import Fraction as F

import pytest
from hypothesis import assume, given, strategies as st

from bethe_lab import calogero_moser as cm
from bethe_lab.exact_core import Poly, SeededRationals, SparseMatrix, det_elimination
from bethe_lab.gaudin import GaudinConfig, hamiltonian_set

from conftest import distinct_rationals, rationals


def test_qz_layout():
    qz = cm.build_qz((F(0), F(2)), (F(5), F(-1)))
    assert qz.Q == ((F(5), F(1, 2)), (F(-1, 2), F(-1)))
    assert qz.Z == ((F(0), F(0)), (F(0), F(2)))
    with pytest.raises(ValueError, match="coincident"):
        cm.build_qz((1, 1), (0, 0))


def test_single_particle_psi():
    z, h = F(2), F(-3)
    qz = cm.build_qz((z,), (h,))
    for u, x in ((F(5), F(1)), (F(-1, 2), F(7, 3))):
        assert cm.psi_function(u, x, qz) == 1 - 1 / ((u - z) * (x - h))


def test_spectral_point_rejected():
    qz = cm.build_qz((F(0), F(1)), (F(0), F(0)))
    with pytest.raises(cm.SpectralPointError, match="evaluation at spectral point"):
        cm.psi_function(F(1), F(3), qz)


def _inv2(m):
    (a, b), (c, d) = m
    det = a * d - b * c
    return [[d / det, -b / det], [-c / det, a / det]]


def test_psi_against_explicit_inverse():
    # oracle: det(1 - (u-Z)^-1 (x-Q)^-1) with hand-written 2x2 inverses
    rng = SeededRationals(2)
    for _ in range(5):
        z, h = rng.distinct(2), rng.rationals(2)
        qz = cm.build_qz(z, h)
        u, x = rng.distinct(1, avoid=z)[0], rng.rational()
        xq = [[(x if i == j else 0) - qz.Q[i][j] for j in range(2)] for i in range(2)]
        if det_elimination(xq) == 0:
            continue
        A = _inv2([[u - z[0], F(0)], [F(0), u - z[1]]])
        B = _inv2(xq)
        M = [[sum(A[i][k] * B[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
        expected = (1 - M[0][0]) * (1 - M[1][1]) - M[0][1] * M[1][0]
        assert cm.psi_function(u, x, qz) == expected


def test_phi_two_particles():
    z, h = (F(1, 2), F(-2)), (F(3), F(1, 3))
    qz = cm.build_qz(z, h)
    for x in (F(0), F(4), F(-5, 3)):
        assert cm.phi_function(x, qz) == (x - h[0]) * (x - h[1]) + 1 / (z[0] - z[1]) ** 2


def test_psi_dagger_is_log_derivative():
    rng = SeededRationals(12)
    z, h = rng.distinct(3), rng.rationals(3)
    qz = cm.build_qz(z, h)
    phi = Poly(list(reversed(cm.phi_polynomial(qz))))
    for x in (F(11), F(-7, 2)):
        assert cm.psi_dag_function(x, qz) == phi.derivative()(x) / phi(x)
    # power traces from the series against direct matrix powers
    series = cm.psi_dag_series(qz, 5)
    for m, value in enumerate(series):
        assert value == cm.trace_word([("X", m)], qz.pair())


def test_trace_words():
    pair = cm.build_qz((F(0), F(1)), (F(2), F(3))).pair()
    assert cm.parse_word("X2Y") == [("X", 2), ("Y", 1)]
    assert cm.parse_word("") == []
    assert cm.trace_word([], pair) == 2
    assert cm.trace_word(cm.parse_word("X"), pair) == 5
    assert cm.trace_word(cm.parse_word("Y"), pair) == 1
    assert cm.trace_word(cm.parse_word("X2"), pair) == 4 + 9 - 2
    assert cm.word_x_degree(cm.parse_word("XYX3")) == 4
    with pytest.raises(ValueError):
        cm.parse_word("XZ")


def test_phi0_first_row_is_power_sums():
    z, h = (F(1), F(-2), F(1, 3)), (F(5), F(0), F(-1))
    S = cm.phi0_expansion(cm.build_qz(z, h).pair(), 3, 6)
    for j in range(1, 7):
        assert S[1, j] == -sum(v ** (j - 1) for v in z)


def test_phi0_single_particle():
    z, h = F(3, 2), F(-2)
    S = cm.phi0_expansion(cm.build_qz((z,), (h,)).pair(), 5, 5)
    for i in range(1, 6):
        for j in range(1, 6):
            assert S[i, j] == -(h ** (i - 1)) * z ** (j - 1)


def test_phi0_with_operator_entries():
    cfg = GaudinConfig(2, 2, (0, 1), (0, 1))
    H = hamiltonian_set(cfg).H
    S = cm.phi0_expansion(cm.build_qz(cfg.z, H).pair(), 3, 3)
    assert S[1, 1] == SparseMatrix.scalar(4, -2)
    assert S.to_json()["I"] == 3


def _exp_poly_wronskian(funcs, x):
    # oracle: each f = p(x) e^{c x}; derivative is (p' + c p) e^{c x}
    rows = []
    n = len(funcs)
    for p, c in funcs:
        row = []
        for _ in range(n):
            row.append(p(x))
            p = p.derivative() + p * Poly([c])
        rows.append(row)
    return det_elimination(rows)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_wronskian_against_generic_differentiation(n):
    rng = SeededRationals(n)
    z, mu = rng.distinct(n), rng.rationals(n)
    u, x = rng.distinct(1, avoid=z)[0], rng.rational()
    funcs = [(Poly([m, 1]), za) for za, m in zip(z, mu)]
    assert cm.wronskian_zero(z, mu, x) == _exp_poly_wronskian(funcs, x)
    assert cm.wronskian_bivariate(z, mu, u, x) == _exp_poly_wronskian(funcs + [(Poly([1]), u)], x)


def test_wronskian_single_particle_by_hand():
    z, mu, u, x = F(2), F(1, 3), F(-1), F(4)
    assert cm.wronskian_bivariate([z], [mu], u, x) == (x + mu) * (u - z) - 1


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(distinct_rationals(n), st.lists(rationals(), min_size=n, max_size=n))),
       rationals(), rationals())
def test_wronskian_identity_property(zm, u, x):
    z, mu = zm
    assume(u not in z)
    qz = cm.build_qz(z, cm.h_from_mu(z, mu))
    delta = cm.vandermonde_delta(z)
    assert cm.wronskian_bivariate(z, mu, u, x) == delta * cm.bivariate_det(u, x, qz.pair())
    assert cm.wronskian_zero(z, mu, x) == delta * cm.phi_function(x, qz)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_det_S_is_vandermonde(n):
    z = SeededRationals(n).distinct(n)
    assert det_elimination(cm.vandermonde_S(z)) == cm.vandermonde_delta(z)


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(distinct_rationals(n),
                                                     st.lists(rationals(), min_size=n, max_size=n))))
def test_rank_one_property(zh):
    z, h = zh
    qz = cm.build_qz(z, h)
    assert cm.rank_one_check(qz.Q, qz.Z)


def test_bivariate_coefficients_reconstruct():
    rng = SeededRationals(4)
    pair = cm.build_qz(rng.distinct(3), rng.rationals(3)).pair()
    Fc = cm.bivariate_coefficients(pair)
    for u, x in ((F(7), F(-3)), (F(1, 2), F(9, 4))):
        assert sum(c * u ** p * x ** q for (p, q), c in Fc.items()) == cm.bivariate_det(u, x, pair)
