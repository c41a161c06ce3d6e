import json

import pytest

from semitoric.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


BLOWUP_PULLBACK = {
    "fan": {"rays": [[1, 0], [0, 1], [-1, -1], [1, 1]],
            "max_cones": [[0, 3], [3, 1], [1, 2], [2, 0]]},
    "coeffs": [0, 0, 1, 0],
}


def test_fan_check(tmp_path, capsys):
    path = write(tmp_path, "fan.json", {"fan": BLOWUP_PULLBACK["fan"]})
    code, out, _ = run(capsys, "fan", "check", "--input", path)
    assert code == 0
    doc = json.loads(out)
    assert doc["complete"] and doc["simplicial"] and doc["issues"] == []


def test_divisor_sigma_d(tmp_path, capsys):
    path = write(tmp_path, "div.json", BLOWUP_PULLBACK)
    code, out, _ = run(capsys, "divisor", "sigma-d", "--input", path)
    assert code == 0
    doc = json.loads(out)
    assert sorted(map(tuple, doc["fan"]["rays"])) == [(-1, -1), (0, 1), (1, 0)]


def test_divisor_nakai(tmp_path, capsys):
    path = write(tmp_path, "div.json", BLOWUP_PULLBACK)
    code, out, _ = run(capsys, "divisor", "nakai", "--input", path)
    doc = json.loads(out)
    assert doc["globally_generated"] and not doc["ample"]
    assert "0" in {c["value"] for c in doc["curve_numbers"]}


def test_divisor_stratify(tmp_path, capsys):
    path = write(tmp_path, "div.json", BLOWUP_PULLBACK)
    code, out, _ = run(capsys, "divisor", "stratify", "--input", path)
    doc = json.loads(out)
    strata = {tuple(s["cone"]): s for s in doc["strata"]}
    assert strata[(3,)]["torus_factor_dim"] == 1


def test_malformed_rays_exit_1(tmp_path, capsys):
    path = write(tmp_path, "bad.json",
                 {"fan": {"rays": [[1, 0], ["x", 1]], "max_cones": [[0, 1]]}})
    code, out, err = run(capsys, "fan", "check", "--input", path)
    assert code == 1
    assert "rays[1]" in err


def test_missing_field_exit_1(tmp_path, capsys):
    path = write(tmp_path, "bad.json", {"fan": {"rays": [[1, 0]]}})
    code, _, err = run(capsys, "fan", "check", "--input", path)
    assert code == 1
    assert "max_cones" in err


def test_unreadable_input_exit_1(capsys):
    code, _, err = run(capsys, "fan", "check", "--input", "/nonexistent.json")
    assert code == 1


def test_precondition_failure_exit_2(tmp_path, capsys):
    doc = {"fan": {"rays": [[1, 0], [0, 1], [-1, -1]],
                   "max_cones": [[0, 1], [0, 2], [1, 2]]},
           "coeffs": [0, 0, 0]}  # trivial divisor: not semiample
    path = write(tmp_path, "div.json", doc)
    code, _, err = run(capsys, "divisor", "sigma-d", "--input", path)
    assert code == 2
    assert "semiample" in err


def test_ring_dims(tmp_path, capsys):
    doc = {
        "fan": {"rays": [[1, 0], [0, 1], [-1, -1]],
                "max_cones": [[0, 1], [0, 2], [1, 2]]},
        "polynomial": {"terms": [{"exps": [3, 0, 0], "num": 1},
                                 {"exps": [0, 3, 0], "num": 1},
                                 {"exps": [0, 0, 3], "num": 1}]},
        "degrees": [[0, 0, 0], [0, 0, 3]],
    }
    path = write(tmp_path, "ring.json", doc)
    code, out, _ = run(capsys, "ring", "dims", "--input", path)
    doc = json.loads(out)
    assert [e["r1_dim"] for e in doc["entries"]] == [1, 1]
    assert [e["s_dim"] for e in doc["entries"]] == [1, 10]


def test_residue_eval(tmp_path, capsys):
    doc = {
        "fan": {"rays": [[1], [-1]], "max_cones": [[0], [1]]},
        "sections": [{"terms": [{"exps": [2, 0], "num": 1}]},
                     {"terms": [{"exps": [0, 2], "num": 1}]}],
        "argument": {"terms": [{"exps": [1, 1], "num": 1}]},
    }
    path = write(tmp_path, "res.json", doc)
    code, out, _ = run(capsys, "residue", "eval", "--input", path)
    doc = json.loads(out)
    assert doc["residue"] == "-1"
    assert doc["jacobian_residue"] == "2"


def test_cup_pair(tmp_path, capsys):
    doc = json.loads(open("src/semitoric/fixtures/fermat_cubic.json").read())
    path = write(tmp_path, "cup.json", doc)
    code, out, _ = run(capsys, "cup", "pair", "--input", path)
    assert json.loads(out)["pairing"] == {"rational": "1/9", "two_pi_i_exponent": 2}


def test_hodge_h21(tmp_path, capsys):
    doc = json.loads(open("src/semitoric/fixtures/quintic_simplex.json").read())
    path = write(tmp_path, "h21.json", doc)
    code, out, _ = run(capsys, "hodge", "h21", "--input", path)
    assert json.loads(out)["value"] == 101


def test_hodge_h_p2(tmp_path, capsys):
    doc = json.loads(open("src/semitoric/fixtures/sec6_polytope.json").read())
    doc["p"] = 3
    doc["refinement"] = "mpcp"
    path = write(tmp_path, "hp2.json", doc)
    code, out, _ = run(capsys, "hodge", "h-p2", "--input", path)
    assert json.loads(out)["value"] == 0


def test_output_to_file_and_determinism(tmp_path, capsys):
    path = write(tmp_path, "div.json", BLOWUP_PULLBACK)
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    assert main(["divisor", "analyze", "--input", path, "--output", str(out1)]) == 0
    assert main(["divisor", "analyze", "--input", path, "--output", str(out2)]) == 0
    capsys.readouterr()
    assert out1.read_bytes() == out2.read_bytes()


def test_threefold_h3_quintic_no_gram(tmp_path, capsys):
    doc = json.loads(open("src/semitoric/fixtures/fermat_quintic.json").read())
    doc["gram"] = False
    path = write(tmp_path, "t.json", doc)
    code, out, _ = run(capsys, "threefold", "h3", "--input", path)
    doc = json.loads(out)
    assert doc["hodge_numbers"] == {"h30": 1, "h21": 101, "h12": 101, "h03": 1}


def test_console_entry_point():
    import subprocess
    out = subprocess.run(["semitoric", "fan", "check", "--input",
                          "src/semitoric/fixtures/projective_plane.json"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert json.loads(out.stdout)["complete"]
