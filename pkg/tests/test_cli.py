import json
import os

import pandas as pd
import pytest

from kato.cli import run, sweep_cases
from kato.germs import apply_l_action
from kato.utils.info import EXIT_INVALID, EXIT_OK, EXIT_VERIFY_FAILED
from kato.utils.serialize import germ_to_json

from conftest import make_birat, make_sig


def _run(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    lines = [json.loads(line) for line in out.splitlines() if line.strip()]
    return code, lines


def test_analyze_ks(capsys):
    code, (record,) = _run(capsys, ["analyze", "--ks", "2,3", "--l", "2"])
    assert code == EXIT_OK
    assert (record["p"], record["q"], record["r"], record["s"]) == (1, 3, 2, 7)
    assert record["kS"] == 9
    assert record["kS_chain"] == 9
    assert record["kS_match"]
    assert record["gcd_ok"]
    assert record["selfintersections"] == [2, 5]


def test_analyze_sig(capsys):
    code, (record,) = _run(capsys, ["analyze", "--sig", "0,1,1,2", "--l", "2"])
    assert code == EXIT_OK
    assert record["ks"] == [2]
    assert record["word"] == ["Aprime", "A"]
    assert record["twisted"]
    assert record["uv"] == ["2", "2"]
    assert record["e_infty"] == [[0, 0], [1, 0]]
    assert record["mu_bound"] == 2
    assert record["index"] == 1


def test_invariants_vector_field_case(capsys):
    code, (record,) = _run(capsys, ["invariants", "--sig", "1,1,1,2", "--l", "1", "--minpoly=-1,0,3"])
    assert code == EXIT_OK
    assert record["a0"] == ["1/3", "0"]
    assert record["lambda"] == ["1", "0"]
    assert record["kappa"] == ["1/3", "0"]
    assert record["vf_condition"] == ["0", "0"]
    assert record["vf"]
    assert record["index"] == 1


def test_invariants_rational(capsys):
    code, (record,) = _run(capsys, ["invariants", "--sig", "0,1,1,2", "--l", "2", "--tau", "1/2"])
    assert code == EXIT_OK
    assert record["a0"] == "1/4"
    assert record["lambda"] == "-16/3"
    assert not record["vf"]


def test_oracle(capsys):
    code, (record,) = _run(capsys, ["oracle", "--ks", "2,3", "--l", "2", "--seed", "4"])
    assert code == EXIT_OK
    assert record["order"] == 22
    assert record["composition_match"]
    assert record["jacobian_match"]


def _normalize(capsys, tmp_path, extra=()):
    argv = ["normalize", "--ks", "2", "--l", "2", "--tau", "1/2", "--a", "3", *extra]
    code, (cert,) = _run(capsys, argv)
    path = tmp_path / "cert.json"
    path.write_text(json.dumps(cert))
    return code, cert, path


def test_normalize_then_verify(capsys, tmp_path):
    code, cert, path = _normalize(capsys, tmp_path)
    assert code == EXIT_OK
    assert cert["valid"]
    assert cert["residual_max"] == "0"
    assert cert["extended_support"] == []
    assert cert["target"]["lam"] == "-16/3"
    assert cert["target"]["b"] == [[1, "1"], [2, "-8"]]
    assert cert["phi"]["C"] == "1/2"

    code, (result,) = _run(capsys, ["verify", "--cert", str(path)])
    assert code == EXIT_OK
    assert result["valid"]
    assert result["order"] == cert["order"]

    code, (result,) = _run(capsys, ["verify", "--cert", str(path), "--order", "4"])
    assert code == EXIT_OK
    assert result["order"] == 4


def test_verify_rejects_perturbed_certificate(capsys, tmp_path):
    _, cert, path = _normalize(capsys, tmp_path)
    cert["target"]["b"] = [[1, "1"], [2, "-7"]]
    path.write_text(json.dumps(cert))
    code, (result,) = _run(capsys, ["verify", "--cert", str(path)])
    assert code == EXIT_VERIFY_FAILED
    assert not result["valid"]


def test_verify_bad_json(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code, (result,) = _run(capsys, ["verify", "--cert", str(path)])
    assert code == EXIT_INVALID
    assert result["error"] == "JSONDecodeError"


def test_verify_missing_file(capsys, tmp_path):
    code, (result,) = _run(capsys, ["verify", "--cert", str(tmp_path / "nowhere.json")])
    assert code == EXIT_INVALID
    assert result["error"] == "FileNotFoundError"


def test_invalid_signature(capsys):
    code, (result,) = _run(capsys, ["analyze", "--sig", "1,1,1,1"])
    assert code == EXIT_INVALID
    assert result["error"] == "InvalidSignature"


def test_usage_errors(capsys):
    assert run([]) == EXIT_INVALID
    assert run(["analyze", "--bogus"]) == EXIT_INVALID
    assert run(["--help"]) == EXIT_OK
    capsys.readouterr()
    code, (result,) = _run(capsys, ["analyze"])
    assert code == EXIT_INVALID
    assert result["error"] == "ValueError"


def test_normalize_is_deterministic(capsys):
    argv = ["normalize", "--ks", "1,1", "--l", "2", "--tau", "1/2", "--seed", "3"]
    _, first = _run(capsys, argv)
    _, second = _run(capsys, argv)
    assert first == second


def test_equiv(capsys, tmp_path, half):
    g = make_birat(make_sig(0, 1, 1, 2, 2), half, a=(3,), aK=1)
    h = apply_l_action(g, -1, -1)
    p1, p2 = tmp_path / "g1.json", tmp_path / "g2.json"
    p1.write_text(json.dumps(germ_to_json(g)))
    p2.write_text(json.dumps(germ_to_json(h)))
    code, (result,) = _run(capsys, ["equiv", "--germ1", str(p1), "--germ2", str(p2)])
    assert code == EXIT_OK
    assert result == {"equivalent": True, "A": "-1", "B": "-1"}


def test_orbit(capsys):
    code, (report,) = _run(capsys, ["orbit", "--ks", "1", "--l", "1", "--points", "4", "--steps", "20"])
    assert code == EXIT_OK
    assert len(report["norms"]) == 4
    assert all(step is not None for step in report["first_below"])
    assert all(d <= 1.0 for d in report["dev_distances"])


def test_dev(capsys):
    argv = ["dev", "--ks", "1", "--l", "1", "--mode", "complex", "--a0", "1", "--aK", "0.5",
            "--samples", "4", "--depth", "2"]
    code, (report,) = _run(capsys, argv)
    assert code == EXIT_OK
    assert report["chart"] == -2
    assert len(report["images"]) == 4
    assert len(report["commutativity"]) == 4


def test_sweep_cases():
    assert sweep_cases({}) == []
    cases = sweep_cases({"max_blocks": 2, "max_k": 2, "max_l": 3})
    assert len(cases) == (2 + 4) * 3


def test_sweep_empty_spec(capsys, tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text("{}")
    code, records = _run(capsys, ["sweep", "--spec", str(spec)])
    assert code == EXIT_OK
    assert records == []


def test_sweep_grid_with_csv(capsys, tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"max_blocks": 3, "max_k": 3, "max_l": 2}))
    csv = tmp_path / "sweep.csv"
    code, records = _run(capsys, ["sweep", "--spec", str(spec), "--csv", str(csv)])
    assert code == EXIT_OK
    assert len(records) == (3 + 9 + 27) * 2
    assert all(r["kS_match"] and r["gcd_ok"] for r in records)
    frame = pd.read_csv(csv)
    assert len(frame) == len(records)
    assert frame["kS_match"].all()


def test_sweep_with_normalization(capsys, tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"max_blocks": 1, "max_k": 2, "max_l": 2, "normalize": True, "tau": "1/2"}))
    code, records = _run(capsys, ["sweep", "--spec", str(spec)])
    assert code == EXIT_OK
    assert len(records) == 4
    for record in records:
        assert record["valid"]
        assert record["extended_support"] == []


def test_sweep_rejects_non_object(capsys, tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text("[1, 2]")
    code, (result,) = _run(capsys, ["sweep", "--spec", str(spec)])
    assert code == EXIT_INVALID
    assert result["error"] == "ValueError"


@pytest.mark.parametrize("argv", [
    ["normalize", "--ks", "1", "--l", "2", "--mode", "complex", "--a0", "0.5", "--eps", "1"],
    ["normalize", "--ks", "2", "--l", "1", "--tau", "1/2", "--order", "6"],
])
def test_normalize_modes(capsys, argv):
    code, (cert,) = _run(capsys, argv)
    assert code == EXIT_OK
    assert cert["valid"]


def test_invariants_rational_a0(capsys):
    code, (record,) = _run(capsys, ["invariants", "--sig", "1,1,1,2", "--l", "1", "--a0", "1/3"])
    assert code == EXIT_OK
    assert record["lambda"] == "1"
    assert record["vf"]


def test_normalize_sig_then_verify(capsys, tmp_path):
    argv = ["normalize", "--sig", "0,1,1,2", "--l", "2", "--tau", "1/2", "--order", "12"]
    code, (cert,) = _run(capsys, argv)
    assert code == EXIT_OK
    assert cert["order"] == 12
    path = tmp_path / "cert.json"
    path.write_text(json.dumps(cert))
    code, (result,) = _run(capsys, ["verify", "--cert", str(path)])
    assert code == EXIT_OK
    assert result["valid"]


def test_dev_rejects_positive_chart(capsys):
    code, (result,) = _run(capsys, ["dev", "--ks", "1", "--chart", "1"])
    assert code == EXIT_INVALID
    assert result["error"] == "InvalidInput"


def test_equiv_germ_without_signature(capsys, tmp_path, half):
    g = germ_to_json(make_birat(make_sig(0, 1, 1, 2, 2), half, a=(3,)))
    del g["sig"]
    path = tmp_path / "g.json"
    path.write_text(json.dumps(g))
    code, (result,) = _run(capsys, ["equiv", "--germ1", str(path), "--germ2", str(path)])
    assert code == EXIT_INVALID
    assert result["error"] == "InvalidInput"
    assert "sig" in result["message"]


@pytest.mark.parametrize("payload", [{"source": 3}, [], {"source": {"family": "favre"}}])
def test_verify_malformed_certificate(capsys, tmp_path, payload):
    path = tmp_path / "cert.json"
    path.write_text(json.dumps(payload))
    code, (result,) = _run(capsys, ["verify", "--cert", str(path)])
    assert code == EXIT_INVALID
    assert set(result) == {"error", "message"}


def test_seed_leaves_environment_alone(capsys, monkeypatch):
    monkeypatch.delenv("PYTHONHASHSEED", raising=False)
    code, _ = _run(capsys, ["analyze", "--ks", "1", "--seed", "7"])
    assert code == EXIT_OK
    assert "PYTHONHASHSEED" not in os.environ
