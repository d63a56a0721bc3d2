import json

import pytest

from genshift.cli import main


def write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


@pytest.fixture
def files(tmp_path):
    return {
        "phi": write(tmp_path, "phi.json", {"n": 3, "map": [0, 0, 1]}),
        "ident": write(tmp_path, "ident.json", {"n": 3, "map": [0, 1, 2]}),
        "sigma": write(tmp_path, "sigma.json", {"n": 3, "r": [1, 1, 1], "phi": [1, 2, 0]}),
        "half": write(tmp_path, "half.json", {"n": 3, "r": [0.5, 0.5, 0.5], "phi": [1, 2, 0]}),
        "zero": write(tmp_path, "zero.json", {"n": 3, "dense": [[0, 0, 0], [0, 0, 0], [0, 0, 0]]}),
        "r": write(tmp_path, "r.json", [[2, 0], [-1, 0], [0.5, 0.5]]),
    }


def test_analyze_text_output(files, capsys):
    code = main(["analyze", "--phi", files["phi"], "--p", "1,2,inf"])
    out = capsys.readouterr().out
    assert code == 0
    assert "bound N: 2" in out
    assert "norm p=1: 2.0" in out
    assert "norm p=2: 1.4142135623730951" in out
    assert "norm p=inf: 1.0" in out


def test_analyze_json_output(files, capsys):
    code = main(["analyze", "--phi", files["ident"], "--output", "json"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["fibers"]["bound"] == 1
    assert payload["injective"] is True
    assert [entry["norm"] for entry in payload["norms"]] == [1.0, 1.0, 1.0]


def test_analyze_single_point_map(tmp_path, capsys):
    path = write(tmp_path, "one.json", {"n": 1, "map": [0]})
    assert main(["analyze", "--phi", path, "--output", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["fibers"]["bound"] == 1
    assert all(entry["norm"] == 1.0 for entry in payload["norms"])


def test_check_exit_codes(files, capsys):
    assert main(["check", "--flavor", "derivation", "--d", files["zero"]]) == 0
    assert main(["check", "--flavor", "jordan", "--d", files["sigma"]]) == 1
    out = capsys.readouterr().out
    assert "fails" in out
    assert main([
        "check", "--flavor", "psi-lambda",
        "--d", files["sigma"], "--psi", files["half"], "--lambda", files["half"],
    ]) == 0


def test_check_json_witness(files, capsys):
    code = main(["check", "--flavor", "jordan", "--d", files["sigma"], "--output", "json"])
    assert code == 1
    payload = json.loads(capsys.readouterr().out)
    assert payload["holds"] is False
    assert "witness" in payload and payload["witness"]["deviation"] > 0


def test_check_arity_errors(files):
    assert main(["check", "--flavor", "psi-lambda", "--d", files["sigma"]]) == 3
    assert main(["check", "--flavor", "generalized", "--d", files["zero"]]) == 3
    assert main(["check", "--flavor", "higher"]) == 3


def test_check_generalized_and_higher(files):
    assert main(["check", "--flavor", "generalized", "--D", files["zero"], "--d", files["zero"]]) == 0
    # auxiliary operator failing its side condition is a semantic error
    assert main(["check", "--flavor", "generalized", "--D", files["zero"], "--d", files["sigma"]]) == 3
    assert main(["check", "--flavor", "higher", "--d", files["sigma"], "--d", files["zero"]]) == 0
    assert main(["check", "--flavor", "higher-jordan", "--d", files["sigma"], "--d", files["sigma"]]) == 1


def test_parse_and_semantic_exit_codes(tmp_path, files):
    broken = tmp_path / "broken.json"
    broken.write_text("{oops")
    assert main(["analyze", "--phi", str(broken)]) == 2
    missing = str(tmp_path / "missing.json")
    assert main(["analyze", "--phi", missing]) == 2
    bad_map = write(tmp_path, "bad.json", {"n": 3, "map": [0, 0, 9]})
    assert main(["analyze", "--phi", bad_map]) == 3
    assert main(["analyze", "--phi", files["phi"], "--p", "0.5"]) == 3
    assert main(["analyze", "--phi", files["phi"], "--p", "soon"]) == 2


def test_synth_then_classify_round_trip(files, tmp_path, capsys):
    assert main(["synth", "--phi", files["phi"], "--r", files["r"], "--output", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    psi_path = tmp_path / "psi.json"
    lam_path = tmp_path / "lam.json"
    psi_path.write_text(json.dumps(payload["psi"]))
    lam_path.write_text(json.dumps(payload["lambda"]))

    code = main(["classify", "--phi", files["phi"], "--psi", str(psi_path), "--lambda", str(lam_path), "--output", "json"])
    assert code == 0
    outcome = json.loads(capsys.readouterr().out)
    assert outcome["accepted"] is True
    assert outcome["r"] == [[2.0, 0.0], [-1.0, 0.0], [0.5, 0.5]]


def test_classify_reject_exit_code(files, tmp_path, capsys):
    ident_op = write(tmp_path, "identop.json", {"n": 3, "dense": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]})
    code = main(["classify", "--phi", files["phi"], "--psi", ident_op, "--lambda", ident_op])
    assert code == 1
    assert "rejected" in capsys.readouterr().out


def test_solve_modes(files, capsys):
    assert main(["solve", "--mode", "twisted", "--phi", files["phi"], "--output", "json"]) == 0
    twisted = json.loads(capsys.readouterr().out)
    assert twisted["dimension"] == 0

    assert main(["solve", "--mode", "generalized", "--phi", files["ident"], "--flavor", "jordan-triple", "--output", "json"]) == 0
    gen = json.loads(capsys.readouterr().out)
    assert gen["feasible"] is True
    assert all(entry == [0.0, 0.0] for row in gen["solution"]["dense"] for entry in row)

    assert main(["solve", "--mode", "higher", "--phi", files["phi"], "--depth", "3", "--output", "json"]) == 0
    levels = json.loads(capsys.readouterr().out)["levels"]
    assert [level["dimension"] for level in levels] == [0, 0, 0]

    assert main(["solve", "--mode", "twisted"]) == 3


def test_verify_small_and_deterministic(capsys):
    assert main(["verify", "--n-max", "2", "--seed", "0"]) == 0
    first = capsys.readouterr().out
    assert main(["verify", "--n-max", "2", "--seed", "0"]) == 0
    second = capsys.readouterr().out
    assert first == second
    assert "overall: PASS" in first


def test_verify_seed_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("GENSHIFT_SEED", "7")
    assert main(["verify", "--n-max", "1"]) == 0
    assert "seed=7" in capsys.readouterr().out
    # explicit flag wins over the environment
    assert main(["verify", "--n-max", "1", "--seed", "3"]) == 0
    assert "seed=3" in capsys.readouterr().out
    monkeypatch.setenv("GENSHIFT_SEED", "ten")
    assert main(["verify", "--n-max", "1"]) == 2
