"""Command-line entry point: ``bethe-lab {hamiltonian,bethe,cm,verify,example}``.

Exit codes: 0 success, 1 a verification failed, 2 invalid input.
Negative rationals need the ``--K=-1,2`` form so argparse does not read
them as flags.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import bethe_rdet as br
from . import calogero_moser as cm
from . import verifier
from .exact_core import SeededRationals, fraction_to_str, parse_rational
from .gaudin import ConfigError, GaudinConfig, hamiltonian_set

SEED_ENV = "BETHE_LAB_SEED"

DEFAULTS = {
    "N": 2, "n": 2, "K": None, "z": None, "orders": None, "seed": None,
    "format": "json", "checks": ",".join(c for c in verifier.CHECK_NAMES if c != "example"),
    "word": "X2", "degree": None, "spectrum": "auto", "h": None, "timing": False,
}


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    subcommand: str
    N: int
    n: int
    K: tuple
    z: tuple
    I: int
    J: int
    seed: int
    format: str = "json"
    checks: list = field(default_factory=list)
    word: str = "X2"
    degree: int | None = None
    spectrum: str = "auto"
    h: tuple | None = None
    timing: bool = False

    def gaudin(self) -> GaudinConfig:
        try:
            return GaudinConfig(self.N, self.n, self.K, self.z)
        except ConfigError as exc:
            raise InputError(str(exc)) from None


def _rationals(flag: str, text) -> tuple:
    if isinstance(text, (list, tuple)):
        items = [str(t) for t in text]
    else:
        items = [t for t in str(text).split(",") if t.strip()]
    try:
        return tuple(parse_rational(t) for t in items)
    except ValueError as exc:
        raise InputError(f"--{flag}: {exc}") from None


def _int(flag: str, value) -> int:
    try:
        return int(value)
    except (TypeError, ValueError):
        raise InputError(f"--{flag}: expected an integer, got {value!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bethe-lab",
                                     description="Exact Gaudin / Bethe algebra / Calogero-Moser toolkit")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name, help_text in (("hamiltonian", "emit the Gaudin Hamiltonians H_a"),
                            ("bethe", "emit B_ij and Psi_ij"),
                            ("cm", "emit Q, Z, phi0_ij, rank-one and Wronskian checks"),
                            ("verify", "run verification checks"),
                            ("example", "run the N = n = 2 example end to end")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="JSON file with the same fields as the flags")
        p.add_argument("--N", dest="N")
        p.add_argument("--n", dest="n")
        p.add_argument("--K", help="comma-separated rationals p/q")
        p.add_argument("--z", help="comma-separated distinct rationals")
        p.add_argument("--orders", help="I,J truncation orders (default max(6, N+2) each)")
        p.add_argument("--seed")
        p.add_argument("--format", choices=("json", "text"))
        if name == "verify":
            p.add_argument("--checks", help="comma-separated subset of: " + ",".join(verifier.CHECK_NAMES))
            p.add_argument("--word", help="trace word for polynomiality, e.g. X2 or XY")
            p.add_argument("--degree", help="per-variable degree bound for polynomiality")
            p.add_argument("--spectrum", choices=("auto", "full", "singular", "degenerate"))
        if name == "cm":
            p.add_argument("--h", help="scalar h_a; omitted means h = (H_1, ..., H_n)")
        if name in ("verify", "example"):
            p.add_argument("--timing", action="store_true", default=None,
                           help="include elapsed seconds (output no longer byte-reproducible)")
    return parser


def resolve(args: argparse.Namespace) -> RunConfig:
    """Merge flags over the optional config file over defaults."""
    file_values: dict = {}
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                file_values = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"--config: {exc}") from None
        if not isinstance(file_values, dict):
            raise InputError("--config: expected a JSON object")
        unknown = set(file_values) - set(DEFAULTS)
        if unknown:
            raise InputError(f"--config: unknown fields {sorted(unknown)}")

    def pick(key):
        v = getattr(args, key, None)
        if v is not None:
            return v
        if key in file_values:
            return file_values[key]
        return DEFAULTS[key]

    N = _int("N", pick("N"))
    n = _int("n", pick("n"))
    if N < 1 or n < 1:
        raise InputError("--N and --n must be positive")
    K = _rationals("K", pick("K")) if pick("K") is not None else tuple(Fraction(i) for i in range(N))
    z = _rationals("z", pick("z")) if pick("z") is not None else tuple(Fraction(a) for a in range(n))
    orders = pick("orders")
    if orders is None:
        orders = (max(6, N + 2),) * 2
    parts = orders if isinstance(orders, (list, tuple)) else str(orders).split(",")
    if len(parts) != 2:
        raise InputError("--orders: expected I,J")
    I, J = (_int("orders", p) for p in parts)
    if I < 1 or J < 1:
        raise InputError("--orders: orders must be positive")
    seed = pick("seed")
    if seed is None:
        seed = os.environ.get(SEED_ENV, 0)
    seed = _int("seed", seed)
    checks_raw = pick("checks")
    checks = [c.strip() for c in (checks_raw if isinstance(checks_raw, list) else checks_raw.split(","))
              if c.strip()]
    bad = set(checks) - set(verifier.CHECK_NAMES)
    if bad:
        raise InputError(f"--checks: unknown checks {sorted(bad)}")
    degree = pick("degree")
    h = pick("h")
    return RunConfig(
        subcommand=args.subcommand, N=N, n=n, K=K, z=z, I=I, J=J, seed=seed,
        format=pick("format"), checks=checks, word=str(pick("word")),
        degree=_int("degree", degree) if degree is not None else None,
        spectrum=pick("spectrum"), h=_rationals("h", h) if h is not None else None,
        timing=bool(pick("timing")),
    )


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def run_hamiltonian(rc: RunConfig) -> tuple[dict, int]:
    cfg = rc.gaudin()
    return hamiltonian_set(cfg).to_json(), 0


def run_bethe(rc: RunConfig) -> tuple[dict, int]:
    cfg = rc.gaudin()
    B = br.B_functions(cfg)
    out = {
        "config": cfg.to_json(),
        "B": [{"i": i, "j": j, "matrix": B[i].coeff_at_infinity(j).to_json()}
              for i in range(1, cfg.N + 1) for j in range(0, rc.J + 1)],
        "Psi": br.psi_biseries(cfg, rc.I, rc.J).to_json(),
    }
    return out, 0


def run_cm(rc: RunConfig) -> tuple[dict, int]:
    cfg = rc.gaudin()
    scalar = rc.h is not None
    if scalar:
        if len(rc.h) != cfg.n:
            raise InputError(f"--h: expected {cfg.n} values, got {len(rc.h)}")
        h = rc.h
    else:
        h = hamiltonian_set(cfg).H
    qz = cm.build_qz(cfg.z, h)

    def enc(v):
        return fraction_to_str(v) if isinstance(v, Fraction) else v.to_json()

    out = {
        "config": cfg.to_json(),
        "h": "scalar" if scalar else "hamiltonians",
        "Q": [[enc(v) for v in row] for row in qz.Q],
        "Z": [[enc(v) for v in row] for row in qz.Z],
        "phi0": cm.phi0_expansion(qz.pair(), rc.I, rc.J).to_json(),
    }
    status = 0
    if scalar:
        out["rank_one"] = cm.rank_one_check(qz.Q, qz.Z)
        mu = [-ha - sum((1 / (za - zb) for zb in cfg.z if zb != za), Fraction(0))
              for za, ha in zip(cfg.z, h)]
        rng = SeededRationals(rc.seed)
        delta = cm.vandermonde_delta(cfg.z)
        points = []
        for _ in range(3):
            u = rng.distinct(1, avoid=cfg.z)[0]
            x = rng.rational()
            lhs = cm.wronskian_bivariate(cfg.z, mu, u, x)
            rhs = delta * cm.bivariate_det(u, x, qz.pair())
            points.append({"u": fraction_to_str(u), "x": fraction_to_str(x),
                           "wronskian": fraction_to_str(lhs), "delta_det": fraction_to_str(rhs),
                           "equal": lhs == rhs})
        out["wronskian"] = points
        if not out["rank_one"] or not all(p["equal"] for p in points):
            status = 1
    return out, status


def _reports_payload(rc: RunConfig, reports) -> tuple[dict, int]:
    ok = all(r.passed for r in reports)
    return {"seed": rc.seed, "status": "pass" if ok else "fail",
            "reports": [r.to_json(rc.timing) for r in reports]}, 0 if ok else 1


def run_verify(rc: RunConfig) -> tuple[dict, int]:
    cfg = rc.gaudin()
    try:
        reports = verifier.run_checks(cfg, rc.checks, rc.I, rc.J, seed=rc.seed, word=rc.word,
                                      degree=rc.degree, spectrum=rc.spectrum)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return _reports_payload(rc, reports)


def run_example(rc: RunConfig) -> tuple[dict, int]:
    cfg = verifier.EXAMPLE_CONFIG
    reports = [verifier.verify_example(cfg, seed=rc.seed),
               verifier.verify_main_theorem(cfg, rc.I, rc.J),
               verifier.verify_eii(cfg, rc.I),
               verifier.verify_phi_product(cfg)]
    return _reports_payload(rc, reports)


RUNNERS = {"hamiltonian": run_hamiltonian, "bethe": run_bethe, "cm": run_cm,
           "verify": run_verify, "example": run_example}


def render_text(payload: dict) -> str:
    if "reports" in payload:
        lines = [f"{r['check']}: {r['status'].upper()}" for r in payload["reports"]]
        lines.append(f"overall: {payload['status'].upper()} (seed {payload['seed']})")
        return "\n".join(lines)
    return json.dumps(payload, indent=1)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        rc = resolve(args)
        payload, code = RUNNERS[rc.subcommand](rc)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if rc.format == "text":
        print(render_text(payload))
    else:
        print(json.dumps(payload, indent=2))
    return code


if __name__ == "__main__":
    sys.exit(main())
