from fractions import Fraction as F

import pytest

from bethe_lab import bethe_rdet as br
from bethe_lab import verifier as v
from bethe_lab.exact_core import SparseMatrix
from bethe_lab.gaudin import GaudinConfig


def test_gl1_main_theorem():
    cfg = GaudinConfig(1, 3, (F(1, 2),), (0, 1, F(-3)))
    assert v.verify_main_theorem(cfg, 4, 4).passed


def test_gl1_hamiltonians_are_scalars():
    from bethe_lab.gaudin import hamiltonian
    cfg = GaudinConfig(1, 3, (F(2),), (0, 1, 3))
    for a in range(3):
        za = cfg.z[a]
        expected = cfg.K[0] + sum((1 / (za - zb) for zb in cfg.z if zb != za), F(0))
        assert hamiltonian(a + 1, cfg) == SparseMatrix.scalar(1, expected)


def test_main_theorem_detects_corruption(monkeypatch):
    cfg = GaudinConfig(2, 2, (0, 1), (0, 1))
    good = br.psi_biseries

    def corrupted(cfg_, I, J):
        s = good(cfg_, I, J)
        s.coeffs[3, 2] = s.coeffs[3, 2] + SparseMatrix.scalar(cfg_.dim, F(1, 7))
        return s

    monkeypatch.setattr(br, "psi_biseries", corrupted)
    report = v.verify_main_theorem(cfg, 4, 4)
    assert not report.passed
    assert report.details[0]["i"] == 3 and report.details[0]["j"] == 2


@pytest.mark.parametrize("shape", [(2, 2), (3, 2)])
def test_per_config_checks_pass(shape):
    cfg = GaudinConfig.seeded(*shape, seed=2)
    assert all(r.passed for r in v.per_config_checks(cfg, 6, 6))


def test_eii_single_site():
    cfg = GaudinConfig(2, 1, (F(1), F(-2)), (F(3),))
    assert v.verify_eii(cfg, 6).passed


def test_polynomiality_words():
    cfg = v.EXAMPLE_CONFIG
    xy = v.verify_polynomiality("XY", cfg, degree=2)
    assert xy.passed and xy.details[0]["fitted_degrees"] == [1, 1]
    low = v.verify_polynomiality("XY", cfg, degree=0)
    assert not low.passed and "degree bound" in low.details[-1]["hint"]


def test_example_report():
    report = v.verify_example()
    assert report.passed
    poly = report.details[-1]["polynomiality"]
    assert poly["status"] == "pass" and poly["config"]["degree"] == 2


def test_spectrum_modes():
    mixed = GaudinConfig(3, 2, (0, 0, 1), (0, 1))
    with pytest.raises(ValueError):
        v.run_checks(mixed, ["simple_spectra"])
    equal = GaudinConfig(2, 2, (0, 0), (0, 1))
    assert v.run_checks(equal, ["simple_spectra"])[0].passed
    assert v.run_checks(equal, ["simple_spectra"], spectrum="degenerate")[0].passed
    assert not v.run_checks(equal, ["simple_spectra"], spectrum="full")[0].passed


def test_run_checks_order_and_unknown():
    cfg = GaudinConfig(2, 2, (0, 1), (0, 1))
    names = [r.check for r in v.run_checks(cfg, ["rank_one", "main_theorem"], 3, 3)]
    assert names == ["main_theorem", "rank_one"]
    with pytest.raises(ValueError):
        v.run_checks(cfg, ["nope"])


def test_report_timing_is_opt_in():
    r = v.verify_rank_one(instances=2)
    assert "elapsed" not in r.to_json()
    assert "elapsed" in r.to_json(include_timing=True)
