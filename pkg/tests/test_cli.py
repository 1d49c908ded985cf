import json
import math

import numpy as np
import pytest

from symcap.cli import EXIT_INPUT, EXIT_OK, EXIT_VERIFICATION, dispatch


def run(capsys, *argv):
    code = dispatch(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_capacity_unit_ball(capsys):
    code, out = run(capsys, "capacity", "--region", '{"variant": "Ball", "R": 1}')
    assert code == EXIT_OK
    obj = json.loads(out)
    assert obj["exact"] is True
    assert obj["value"] == pytest.approx(math.pi)


def test_capacity_solid_torus(capsys):
    code, out = run(capsys, "capacity", "--region",
                    '{"variant": "SolidTorus", "radii": [1.0, 2.0]}')
    assert code == EXIT_OK
    assert json.loads(out)["value"] == pytest.approx(math.pi)


def test_capacity_bad_region_is_input_error(capsys):
    code, _ = run(capsys, "capacity", "--region", '{"variant": "Banana"}')
    assert code == EXIT_INPUT
    code, _ = run(capsys, "capacity", "--region", "not json")
    assert code == EXIT_INPUT


def test_spectrum_json_and_csv(capsys):
    code, out = run(capsys, "spectrum", "--hessian", "[[4.0, 0.0], [0.0, 1.0]]")
    assert code == EXIT_OK
    obj = json.loads(out)
    assert obj["mu"] == pytest.approx([2.0])
    assert obj["radii"][0] == pytest.approx(1.0)

    code, out = run(capsys, "--format", "csv",
                    "spectrum", "--hessian", "[[4.0, 0.0], [0.0, 1.0]]")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "j,mu,radius,omega"


def test_spectrum_from_file(tmp_path, capsys):
    path = tmp_path / "hessian.json"
    path.write_text('{"rows": [[1.0, 0.0], [0.0, 1.0]]}')
    code, out = run(capsys, "spectrum", "--hessian", str(path))
    assert code == EXIT_OK
    assert json.loads(out)["mu"] == pytest.approx([1.0])


def test_squeeze_passes(capsys):
    code, out = run(capsys, "--seed", "7", "squeeze", "--n", "3", "--trials", "50")
    assert code == EXIT_OK
    obj = json.loads(out)
    assert obj["n"] == 3 and obj["trials"] == 50
    assert obj["violations"] == []


def test_maslov_torus_cycle(capsys):
    code, out = run(capsys, "maslov", "--torus", "1.0,2.0", "--cycle", "1")
    assert code == EXIT_OK
    assert json.loads(out)["index"] == 2


def test_maslov_requires_loop_or_torus(capsys):
    code, _ = run(capsys, "maslov")
    assert code == EXIT_INPUT


def test_maslov_loop_file(tmp_path, capsys):
    from symcap import torus_cycle_loop
    path = tmp_path / "loop.json"
    path.write_text(torus_cycle_loop([1.0], 1, samples=64).to_json())
    code, out = run(capsys, "maslov", "--loop", str(path))
    assert code == EXIT_OK
    assert json.loads(out)["index"] == 2


def test_ebk_oscillator_levels(capsys):
    code, out = run(capsys, "ebk", "--K", "oscillator:1,2",
                    "--maslov", "2,2", "--Nmax", "1")
    assert code == EXIT_OK
    energies = [lvl["energy"] for lvl in json.loads(out)["levels"]]
    assert energies == pytest.approx([1.5, 2.5, 3.5, 4.5])


def test_ebk_power_hamiltonian(capsys):
    code, out = run(capsys, "ebk", "--K", "power:2", "--maslov", "2", "--Nmax", "2")
    assert code == EXIT_OK
    energies = [lvl["energy"] for lvl in json.loads(out)["levels"]]
    assert energies == pytest.approx([0.25, 2.25, 6.25])


def test_ebk_table_hamiltonian(tmp_path, capsys):
    path = tmp_path / "table.json"
    path.write_text(json.dumps({"I": [0.0, 5.0], "K": [0.0, 5.0]}))
    code, out = run(capsys, "ebk", "--K", f"table:{path}",
                    "--maslov", "2", "--Nmax", "1")
    assert code == EXIT_OK
    energies = [lvl["energy"] for lvl in json.loads(out)["levels"]]
    assert energies == pytest.approx([0.5, 1.5])


def test_ebk_hbar_flag(capsys):
    code, out = run(capsys, "--hbar", "2.0", "ebk", "--K", "oscillator:1",
                    "--maslov", "2", "--Nmax", "0")
    assert code == EXIT_OK
    assert json.loads(out)["levels"][0]["energy"] == pytest.approx(1.0)


def test_env_overrides_and_flag_precedence(monkeypatch, capsys):
    monkeypatch.setenv("SYMCAP_HBAR", "2.0")
    code, out = run(capsys, "ebk", "--K", "oscillator:1", "--maslov", "2", "--Nmax", "0")
    assert code == EXIT_OK
    assert json.loads(out)["levels"][0]["energy"] == pytest.approx(1.0)
    # explicit flag wins over the environment
    code, out = run(capsys, "--hbar", "1.0", "ebk", "--K", "oscillator:1",
                    "--maslov", "2", "--Nmax", "0")
    assert json.loads(out)["levels"][0]["energy"] == pytest.approx(0.5)


def test_env_format(monkeypatch, capsys):
    monkeypatch.setenv("SYMCAP_FORMAT", "csv")
    code, out = run(capsys, "spectrum", "--hessian", "[[1.0, 0.0], [0.0, 1.0]]")
    assert code == EXIT_OK
    assert out.startswith("j,mu,radius,omega")


def test_bad_env_value_is_input_error(monkeypatch, capsys):
    monkeypatch.setenv("SYMCAP_HBAR", "not-a-number")
    code, _ = run(capsys, "spectrum", "--hessian", "[[1.0, 0.0], [0.0, 1.0]]")
    assert code == EXIT_INPUT


def test_flow_conserves_energy(capsys):
    code, out = run(capsys, "flow", "--hessian", "[[1.0, 0.0], [0.0, 1.0]]",
                    "--t", "0.7", "--z0", "1.0,0.0")
    assert code == EXIT_OK
    obj = json.loads(out)
    assert obj["energy_drift"] <= 1e-12
    assert obj["z_t"] == pytest.approx([math.cos(0.7), -math.sin(0.7)])


def test_out_file(tmp_path, capsys):
    dest = tmp_path / "report.json"
    code = dispatch(["--out", str(dest), "capacity", "--region",
                     '{"variant": "Ball", "R": 2}'])
    assert code == EXIT_OK
    assert capsys.readouterr().out == ""
    assert json.loads(dest.read_text())["value"] == pytest.approx(4.0 * math.pi)


def test_determinism_byte_identical(capsys):
    argv = ["--seed", "11", "squeeze", "--n", "2", "--trials", "25"]
    _, first = run(capsys, *argv)
    _, second = run(capsys, *argv)
    assert first == second


def test_nonpositive_hbar_rejected(capsys):
    code, _ = run(capsys, "--hbar", "-1", "spectrum",
                  "--hessian", "[[1.0, 0.0], [0.0, 1.0]]")
    assert code == EXIT_INPUT
