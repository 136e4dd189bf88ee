import json
from pathlib import Path

import jsonschema

from bethe_lab.cli import main

SCHEMAS = Path(__file__).resolve().parents[1] / "docs" / "schema"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


def test_hamiltonian_single_site(capsys):
    code, out, _ = run(capsys, "hamiltonian", "--N", "2", "--n", "1", "--K", "3,5", "--z", "0")
    assert code == 0
    payload = json.loads(out)
    jsonschema.validate(payload, schema("hamiltonian"))
    assert payload["H"][0] == {"dim": 2, "entries": [[0, 0, "3"], [1, 1, "5"]]}


def test_coincident_points_exit_2(capsys):
    code, _, err = run(capsys, "verify", "--z", "0,0")
    assert code == 2 and "coincident evaluation points" in err


def test_malformed_rational_names_flag(capsys):
    code, _, err = run(capsys, "hamiltonian", "--K", "1/0,2")
    assert code == 2 and "--K" in err


def test_unknown_check_exit_2(capsys):
    code, _, err = run(capsys, "verify", "--checks", "bogus")
    assert code == 2 and "--checks" in err


def test_verify_passes_and_validates(capsys):
    code, out, _ = run(capsys, "verify", "--N", "2", "--n", "2", "--K", "0,1", "--z", "0,1",
                       "--orders", "6,6")
    assert code == 0
    payload = json.loads(out)
    jsonschema.validate(payload, schema("report"))
    assert payload["status"] == "pass"


def test_verify_failure_exit_1(capsys):
    code, out, _ = run(capsys, "verify", "--K", "0,0", "--checks", "simple_spectra", "--spectrum", "full")
    assert code == 1 and json.loads(out)["status"] == "fail"


def test_negative_values_with_equals(capsys):
    code, out, _ = run(capsys, "hamiltonian", "--N", "2", "--n", "1", "--K=-1,1/2", "--z=-3")
    assert code == 0
    assert json.loads(out)["config"]["K"] == ["-1", "1/2"]


def test_bethe_and_cm_validate(capsys):
    code, out, _ = run(capsys, "bethe", "--orders", "3,3")
    assert code == 0
    jsonschema.validate(json.loads(out), schema("bethe"))
    code, out, _ = run(capsys, "cm", "--orders", "3,3")
    assert code == 0
    jsonschema.validate(json.loads(out), schema("cm"))
    code, out, _ = run(capsys, "cm", "--orders", "2,2", "--h", "1,2")
    payload = json.loads(out)
    assert code == 0 and payload["rank_one"] and all(p["equal"] for p in payload["wronskian"])


def test_example_subcommand(capsys):
    code, out, _ = run(capsys, "example")
    assert code == 0
    jsonschema.validate(json.loads(out), schema("report"))


def test_determinism_byte_identical(capsys):
    args = ("verify", "--N", "2", "--n", "3", "--K", "1,2", "--z", "0,1,3", "--seed", "5",
            "--checks", "main_theorem,wronskian,rank_one,polynomiality,simple_spectra")
    first = run(capsys, *args)[1]
    second = run(capsys, *args)[1]
    assert first == second


def test_config_file_precedence(tmp_path, capsys):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"N": 2, "n": 1, "K": "3,5", "z": "0"}))
    _, out, _ = run(capsys, "hamiltonian", "--config", str(path))
    assert json.loads(out)["config"]["K"] == ["3", "5"]
    _, out, _ = run(capsys, "hamiltonian", "--config", str(path), "--K", "7,8")
    assert json.loads(out)["config"]["K"] == ["7", "8"]
    path.write_text(json.dumps({"bogus": 1}))
    code, _, err = run(capsys, "hamiltonian", "--config", str(path))
    assert code == 2 and "unknown fields" in err


def test_seed_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("BETHE_LAB_SEED", "17")
    _, out, _ = run(capsys, "verify", "--checks", "rank_one")
    assert json.loads(out)["seed"] == 17
    _, out, _ = run(capsys, "verify", "--checks", "rank_one", "--seed", "3")
    assert json.loads(out)["seed"] == 3


def test_text_format(capsys):
    code, out, _ = run(capsys, "verify", "--checks", "rank_one", "--format", "text")
    assert code == 0 and out.splitlines()[-1].startswith("overall: PASS")


def test_default_orders_follow_N(capsys):
    _, out, _ = run(capsys, "verify", "--N", "1", "--n", "2", "--checks", "main_theorem")
    assert json.loads(out)["reports"][0]["config"]["I"] == 6
