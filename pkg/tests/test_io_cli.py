"""JSON round-trips, schema errors, and end-to-end CLI fixtures."""

import json

import numpy as np
import pytest

from passivenode import io
from passivenode.cli import main
from passivenode.errors import ParseError, SchemaError

from conftest import random_passive_node


def test_node_roundtrip_bit_identical(tmp_path):
    node = random_passive_node(0, weight=True)
    p1 = tmp_path / "a.json"
    p2 = tmp_path / "b.json"
    io.save_node(node, p1)
    loaded = io.load_node(p1)
    io.save_node(loaded, p2)
    assert p1.read_text() == p2.read_text()
    assert np.allclose(loaded.A, node.A) and np.allclose(loaded.W, node.W)


def test_weight_preserved(tmp_path):
    node = random_passive_node(1, weight=True)
    p = tmp_path / "n.json"
    io.save_node(node, p)
    doc = json.loads(p.read_text())
    assert "W" in doc
    assert not io.load_node(p).is_identity_weight


def test_canonical_keys_sorted(tmp_path):
    node = random_passive_node(2)
    p = tmp_path / "n.json"
    io.save_node(node, p)
    doc = json.loads(p.read_text())
    keys = list(doc.keys())
    assert keys == sorted(keys)


def test_ragged_rows_rejected():
    with pytest.raises(SchemaError):
        io.matrix_from_json([[[1.0, 0.0], [2.0, 0.0]], [[3.0, 0.0]]], "A")


def test_schema_errors():
    with pytest.raises(SchemaError):
        io.node_from_dict({"n": 1, "m": 1, "p": 1, "A": [[[0, 0]]], "B": [[[1, 0]]], "C": [[[1, 0]]]})
    with pytest.raises(SchemaError):
        io.node_from_dict(
            {"n": 2, "m": 1, "p": 1, "A": [[[0, 0]]], "B": [[[1, 0]]], "C": [[[1, 0]]], "D": [[[0, 0]]]}
        )


def test_parse_error(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(ParseError):
        io.load_node(p)


def _write_node(tmp_path, node, name="node.json"):
    p = tmp_path / name
    io.save_node(node, p)
    return str(p)


def test_cli_check_exit_codes(tmp_path, capsys):
    from conftest import random_nonpassive_node

    good = _write_node(tmp_path, random_passive_node(0), "good.json")
    bad = _write_node(tmp_path, random_nonpassive_node(0), "bad.json")
    assert main(["check", good]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["verdict"] == "Passive"
    assert main(["check", bad]) == 2
    doc = json.loads(capsys.readouterr().out)
    assert doc["verdict"] == "NotPassive"
    assert main(["check", str(tmp_path / "missing.json")]) == 1


def test_cli_cayley_roundtrip(tmp_path, capsys):
    path = _write_node(tmp_path, random_passive_node(3))
    out = tmp_path / "disc.json"
    assert main(["cayley", path, "--alpha", "1.0", "--kind", "impedance",
                 "--out", str(out)]) == 0
    capsys.readouterr()
    disc = io.load_discrete(out)
    assert disc.alpha == 1.0
    back = tmp_path / "back.json"
    assert main(["cayley", str(out), "--inverse", "--out", str(back)]) == 0
    capsys.readouterr()
    assert io.load_node(back).n == 4


def test_cli_minimal_e(tmp_path, capsys):
    from conftest import esad_colocated_node

    path = _write_node(tmp_path, esad_colocated_node(0))
    assert main(["minimal-e", path, "--method", "esad"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["method"] == "esad"
    E = io.matrix_from_json(doc["E"], "E")
    assert E.shape == (2, 2)


def test_cli_feedback_and_stability(tmp_path, capsys):
    from conftest import random_almost_passive

    node, E = random_almost_passive(0)
    path = _write_node(tmp_path, node)
    epath = tmp_path / "E.json"
    epath.write_text(io.dumps_canonical(io.matrix_to_json(E)))
    kappa = str(0.9 / np.max(np.clip(np.linalg.eigvalsh(E), 0.0, None)))
    assert main(["feedback", path, "--kappa", kappa, "--e-matrix", str(epath)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert "closed_loop" in doc
    assert main(["stability", path, "--kappa", kappa, "--e-matrix", str(epath)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["verdict"] == "StronglyStable"


def test_cli_simulate_and_csv(tmp_path, capsys):
    path = _write_node(tmp_path, random_passive_node(1))
    out = tmp_path / "traj.csv"
    assert main(["simulate", path, "--t-final", "2.0", "--steps", "400",
                 "--out", str(out)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["passed"] is True
    assert out.exists() and out.read_text().startswith("t,")


def test_cli_simulate_adversarial(tmp_path, capsys):
    from conftest import random_nonpassive_node

    path = _write_node(tmp_path, random_nonpassive_node(1))
    assert main(["simulate", path, "--adversarial", "--t-final", "0.2",
                 "--steps", "200", "--amplitude", "2.0"]) == 2
    doc = json.loads(capsys.readouterr().out)
    assert doc["min_defect"] < -1e-3


def test_cli_beam_pipeline(tmp_path, capsys):
    out = tmp_path / "beam.json"
    assert main(["beam", "--n-modes", "12", "--kappa", "1.0", "--out", str(out)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["stability"]["verdict"] == "StronglyStable"
    assert doc["stability"]["closed_loop_max_real"] < 0
    node = io.load_node(out)
    assert node.n == 22


def test_cli_error_exit_code(tmp_path, capsys):
    path = _write_node(tmp_path, random_passive_node(0))
    # kappa far outside the admissible range for a zero shift is still fine;
    # a negative kappa is an error
    assert main(["feedback", path, "--kappa", "-1.0"]) == 1
    capsys.readouterr()
