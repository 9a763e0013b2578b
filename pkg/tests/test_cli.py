import json

import numpy as np
import pytest

from blochpoincare import cli

HALF = 1.0 / np.sqrt(2.0)

EVOLVE_CONFIG = {
    "parameters": {
        "initial": [[1.0, 0.0], [0.0, 0.0]],
        "target": [[HALF, 0.0], [HALF, 0.0]],
        "energy": 1.0,
        "samples": 101,
    }
}

OPTIMIZE_CONFIG = {
    "parameters": {"coherency": [[3.0, 1.0], [1.0, 1.0]]}
}

CORRESPONDENCE_CONFIG = {
    "parameters": {
        "initial": [[1.0, 0.0], [0.0, 0.0]],
        "target": [[HALF, 0.0], [HALF, 0.0]],
        "energy": 1.0,
        "coherency": [[3.0, 1.0], [1.0, 1.0]],
    }
}


def write_config(tmp_path, payload, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return path


def test_evolve_csv_trajectory(tmp_path):
    config = write_config(tmp_path, EVOLVE_CONFIG)
    out = tmp_path / "trajectory.csv"
    code = cli.main(
        ["evolve", "--config", str(config), "--output", str(out), "--format", "csv"]
    )
    assert code == cli.EXIT_OK
    lines = out.read_text().splitlines()
    assert lines[0].startswith("# version=")
    assert lines[1] == cli.TRAJECTORY_HEADER
    assert len(lines) == 2 + 101
    last = [float(x) for x in lines[-1].split(",")]
    assert last[0] == pytest.approx(np.pi / 2.0, abs=1e-12)
    assert last[-1] >= 1.0 - 1e-9
    first = [float(x) for x in lines[2].split(",")]
    assert first[0] == 0.0 and first[-1] == pytest.approx(0.5, abs=1e-12)


def test_evolve_json_and_uncertainty_route(tmp_path):
    payload = dict(EVOLVE_CONFIG)
    payload["parameters"] = dict(
        EVOLVE_CONFIG["parameters"], route="uncertainty_maximization", energy=0.5
    )
    config = write_config(tmp_path, payload)
    out = tmp_path / "trajectory.json"
    code = cli.main(["evolve", "--config", str(config), "--output", str(out)])
    assert code == cli.EXIT_OK
    data = json.loads(out.read_text())
    assert data["version"] == cli.__version__
    assert data["t_min"] == pytest.approx(np.pi / 2.0)
    assert data["trajectory"][-1]["fidelity_to_target"] >= 1.0 - 1e-9


def test_evolve_output_is_byte_deterministic(tmp_path):
    config = write_config(tmp_path, EVOLVE_CONFIG)
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (out1, out2):
        assert (
            cli.main(
                ["evolve", "--config", str(config), "--output", str(out), "--format", "csv"]
            )
            == cli.EXIT_OK
        )
    assert out1.read_bytes() == out2.read_bytes()


def test_optimize_coherence_reference_values(tmp_path):
    config = write_config(tmp_path, OPTIMIZE_CONFIG)
    out = tmp_path / "rotation.json"
    code = cli.main(["optimize-coherence", "--config", str(config), "--output", str(out)])
    assert code == cli.EXIT_OK
    data = json.loads(out.read_text())
    assert data["rotation"]["phi_opt"] == pytest.approx(-0.3926991, abs=1e-6)
    assert data["rotation"]["j_after"] == pytest.approx(0.7071068, abs=1e-6)
    assert data["ledger"]["s1_sq_after"] == pytest.approx(0.0, abs=1e-10)
    # floats serialized with 17 significant digits round-trip exactly
    raw = out.read_text()
    assert "-0.39269908169872414" in raw


def test_optimize_coherence_json_only(tmp_path):
    config = write_config(tmp_path, OPTIMIZE_CONFIG)
    code = cli.main(
        ["optimize-coherence", "--config", str(config), "--output", "-", "--format", "csv"]
    )
    assert code == cli.EXIT_SCHEMA


def test_malformed_json_gives_schema_exit_and_no_file(tmp_path):
    config = tmp_path / "broken.json"
    config.write_text("{not json", encoding="utf-8")
    out = tmp_path / "out.json"
    code = cli.main(["evolve", "--config", str(config), "--output", str(out)])
    assert code == cli.EXIT_SCHEMA
    assert not out.exists()


def test_schema_violation_reports_field(tmp_path, capsys):
    config = write_config(tmp_path, {"parameters": {"initial": [[1, 0], [0, 0]]}})
    out = tmp_path / "out.json"
    code = cli.main(["evolve", "--config", str(config), "--output", str(out)])
    captured = capsys.readouterr()
    assert code == cli.EXIT_SCHEMA
    assert "parameters" in captured.err
    assert not out.exists()


def test_kind_mismatch_rejected(tmp_path):
    payload = dict(OPTIMIZE_CONFIG, kind="evolve")
    config = write_config(tmp_path, payload)
    code = cli.main(["optimize-coherence", "--config", str(config), "--output", "-"])
    assert code == cli.EXIT_SCHEMA


def test_unwritable_output_gives_io_exit(tmp_path):
    config = write_config(tmp_path, OPTIMIZE_CONFIG)
    code = cli.main(
        [
            "optimize-coherence",
            "--config",
            str(config),
            "--output",
            str(tmp_path / "missing" / "out.json"),
        ]
    )
    assert code == cli.EXIT_IO


def test_numerical_gate_failure_exit(tmp_path, monkeypatch):
    config = write_config(tmp_path, EVOLVE_CONFIG)
    out = tmp_path / "out.csv"
    monkeypatch.setattr(cli, "fidelity", lambda a, b: 0.5)
    code = cli.main(
        ["evolve", "--config", str(config), "--output", str(out), "--format", "csv"]
    )
    assert code == cli.EXIT_NUMERIC
    assert not out.exists()


def test_mueller_scenario_output(tmp_path):
    payload = {
        "parameters": {
            "jones": [[0.0, [0.0, -1.0]], [[0.0, 1.0], 0.0]],  # sigma_y, unitary
            "rotator_angle": 45.0,
        }
    }
    config = write_config(tmp_path, payload)
    out = tmp_path / "mueller.json"
    code = cli.main(
        ["mueller", "--config", str(config), "--output", str(out), "--degrees"]
    )
    assert code == cli.EXIT_OK
    data = json.loads(out.read_text())
    assert data["classification"] == "nondepolarizing"
    assert "wigner_rotation" in data
    assert np.allclose(data["wigner_rotation"], data["mueller_from_jones"])
    rotator = np.array(data["mueller_rotator"])
    assert rotator[1, 1] == pytest.approx(np.cos(np.pi / 2.0), abs=1e-12)


def test_mueller_depolarizer_classification(tmp_path):
    # A Jones lift is never depolarizing; feed the ideal depolarizer through
    # the library API instead and check the probe-based verdict via the CLI
    # path for a polarizer, which stays nondepolarizing.
    payload = {"parameters": {"jones": [[1.0, 0.0], [0.0, 0.0]]}}
    config = write_config(tmp_path, payload)
    out = tmp_path / "mueller.json"
    assert cli.main(["mueller", "--config", str(config), "--output", str(out)]) == cli.EXIT_OK
    data = json.loads(out.read_text())
    assert data["classification"] == "nondepolarizing"
    assert np.array(data["mueller_from_jones"])[0][0] == pytest.approx(0.5)


def test_interference_classical_sweep_csv(tmp_path):
    payload = {
        "parameters": {
            "law": "classical",
            "coherency": [[3.0, 1.0], [1.0, 1.0]],
            "analyzer_angles": {"start": np.pi / 4.0, "stop": np.pi / 4.0, "count": 1},
            "phase_delays": {"start": 0.0, "stop": np.pi, "count": 5},
        }
    }
    config = write_config(tmp_path, payload)
    out = tmp_path / "sweep.csv"
    code = cli.main(
        ["interference", "--config", str(config), "--output", str(out), "--format", "csv"]
    )
    assert code == cli.EXIT_OK
    lines = out.read_text().splitlines()
    assert lines[1] == "theta,epsilon,intensity,visibility"
    first = [float(x) for x in lines[2].split(",")]
    assert first[2] == pytest.approx(3.0, abs=1e-12)


def test_interference_quantum_sweep_self_checks(tmp_path):
    payload = {
        "parameters": {
            "law": "quantum",
            "state_a": [[1.0, 0.0], [0.0, 0.0]],
            "state_b": [[HALF, 0.0], [HALF, 0.0]],
            "amp_a": [HALF, 0.0],
            "amp_b_modulus": HALF,
            "relative_phases": {"start": 0.0, "stop": 2.0 * np.pi, "count": 17},
        }
    }
    config = write_config(tmp_path, payload)
    out = tmp_path / "quantum.json"
    code = cli.main(["interference", "--config", str(config), "--output", str(out)])
    assert code == cli.EXIT_OK
    data = json.loads(out.read_text())
    for row in data["rows"]:
        assert row["probability"] == pytest.approx(row["direct_norm"], abs=1e-12)


def test_correspondence_scenario(tmp_path, capsys):
    config = write_config(tmp_path, CORRESPONDENCE_CONFIG)
    out = tmp_path / "report.json"
    code = cli.main(["correspondence", "--config", str(config), "--output", str(out)])
    captured = capsys.readouterr()
    assert code == cli.EXIT_OK
    assert "all rows pass" in captured.out
    data = json.loads(out.read_text())
    assert data["report"]["all_passed"] is True
    assert len(data["report"]["rows"]) == 5
    assert data["phi_opt"] == pytest.approx(-np.pi / 8.0)
    assert data["t_min"] == pytest.approx(np.pi / 2.0)


def test_config_from_stdin(tmp_path, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(OPTIMIZE_CONFIG)))
    out = tmp_path / "rotation.json"
    code = cli.main(["optimize-coherence", "--config", "-", "--output", str(out)])
    assert code == cli.EXIT_OK
    assert out.exists()


def test_batch_config_runs_each_scenario(tmp_path):
    entries = []
    for name in ("one.json", "two.json"):
        entry = dict(OPTIMIZE_CONFIG)
        entry["output"] = {"path": str(tmp_path / name), "format": "json"}
        entries.append(entry)
    config = write_config(tmp_path, entries)
    code = cli.main(["optimize-coherence", "--config", str(config)])
    assert code == cli.EXIT_OK
    for name in ("one.json", "two.json"):
        assert (tmp_path / name).exists()


def test_emit_csv_header_only_and_single_record(tmp_path):
    empty = tmp_path / "empty.csv"
    cli.emit_csv([], cli.TRAJECTORY_HEADER, str(empty))
    lines = empty.read_text().splitlines()
    assert lines[0].startswith("# version=")
    assert lines[1:] == [cli.TRAJECTORY_HEADER]

    single = tmp_path / "single.csv"
    record = (0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.5)
    cli.emit_csv([record], cli.TRAJECTORY_HEADER, str(single))
    lines = single.read_text().splitlines()
    assert len(lines) == 3
    assert lines[2].split(",")[0] == "0"


def test_emit_json_is_sorted_and_deterministic(tmp_path):
    payload = {"b": 0.1, "a": [1, 2.5], "nested": {"y": True, "x": None}}
    one = cli.emit_json(dict(payload), str(tmp_path / "one.json"))
    two = cli.emit_json(dict(reversed(list(payload.items()))), str(tmp_path / "two.json"))
    assert one == two
    assert one.index('"a"') < one.index('"b"') < one.index('"nested"')
    assert json.loads(one)["b"] == 0.1


def test_published_schema_matches_live_validators():
    from pathlib import Path

    published = json.loads(
        (Path(__file__).resolve().parents[1] / "schemas" / "scenario-config.schema.json")
        .read_text(encoding="utf-8")
    )
    assert published["version"] == cli.__version__
    live = {kind: cli._scenario_schema(kind) for kind in cli.KINDS}
    assert json.loads(json.dumps(published["kinds"])) == json.loads(json.dumps(live))


def test_hbar_flag_scales_time(tmp_path):
    config = write_config(tmp_path, EVOLVE_CONFIG)
    out = tmp_path / "out.json"
    assert (
        cli.main(["evolve", "--config", str(config), "--output", str(out), "--hbar", "2.0"])
        == cli.EXIT_OK
    )
    data = json.loads(out.read_text())
    assert data["t_min"] == pytest.approx(np.pi)
