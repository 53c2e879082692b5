import json

from flagvec.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_generate_csv(capsys):
    code, out, _ = run(capsys, "generate", "cyclic", "-d", "5", "-n", "8",
                       "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["f0,f1,f2,f3,f4", "8,28,52,50,20"]


def test_generate_p7n_and_simplex(capsys):
    code, out, _ = run(capsys, "generate", "p7n", "-n", "8", "--format", "csv")
    assert code == 0
    assert out.splitlines()[1] == "15,56,112,140,112,56,15"
    code, out, _ = run(capsys, "generate", "simplex", "-d", "6", "--format", "csv")
    assert out.splitlines()[1] == "7,21,35,35,21,7"


def test_generate_json_meta_toggle(capsys):
    code, out, _ = run(capsys, "generate", "simplex", "-d", "3")
    doc = json.loads(out)
    assert doc["f"] == ["4", "6", "4"] and "meta" in doc
    code, out, _ = run(capsys, "generate", "simplex", "-d", "3", "--no-meta")
    assert "meta" not in json.loads(out)


def test_generate_invalid_params(capsys):
    code, _, err = run(capsys, "generate", "cyclic", "-d", "5", "-n", "4")
    assert code == 2 and "error" in err


def test_check_reports_verdicts(capsys):
    code, out, _ = run(capsys, "check", "8,28,52,50,20", "--no-meta")
    assert code == 0
    doc = json.loads(out)
    assert doc["properties"]["C"] == {"holds": False, "witness": 1}
    assert doc["properties"]["L"]["holds"] is True
    assert doc["properties"]["U"]["holds"] is True
    assert doc["properties"]["B"]["holds"] is True


def test_check_non_unimodal_candidate_member(capsys):
    code, out, _ = run(capsys, "check", "30,135,126,67,69,23", "--no-meta")
    assert code == 0
    doc = json.loads(out)
    assert doc["properties"]["U"] == {"holds": False, "witness": 3}


def test_check_rejects_degenerate_vectors(capsys):
    code, _, err = run(capsys, "check", "1,1")
    assert code == 2 and "error" in err
    code, _, err = run(capsys, "check", "4,x,4")
    assert code == 2


def test_check_reads_files(tmp_path, capsys):
    path = tmp_path / "vec.json"
    path.write_text(json.dumps({"d": 3, "f": ["4", "6", "4"]}))
    code, out, _ = run(capsys, "check", f"@{path}", "--no-meta")
    assert code == 0
    assert json.loads(out)["euler"] is True


def test_flags_output_round_trips(capsys):
    from flagvec import FlagVector, build_simplex

    code, out, _ = run(capsys, "flags", "simplex", "-d", "3", "--no-meta")
    doc = json.loads(out)
    assert doc["entries"][""] == "1"
    assert doc["entries"]["012"] == "24"
    assert FlagVector.from_json(out) == build_simplex(3).flag_vector()
    code, out, _ = run(capsys, "flags", "polygon", "-n", "4", "--format", "csv")
    assert "01,8" in out.splitlines()


def test_cdindex_command(capsys):
    code, out, _ = run(capsys, "cdindex", "polygon", "-n", "5", "--no-meta")
    assert code == 0
    doc = json.loads(out)
    assert doc["cd"] == "c^2 + 3d"
    assert doc["coeffs"] == {"cc": "1", "d": "3"}
    code, out, _ = run(capsys, "cdindex", "simplex", "-d", "3", "--no-meta")
    assert json.loads(out)["cd"] == "c^3 + 2dc + 2cd"


def test_cdindex_single_coefficient(capsys):
    code, out, _ = run(capsys, "cdindex", "cyclic", "-d", "6", "-n", "10",
                       "--coeff", "c2dc2", "--no-meta")
    assert code == 0
    assert json.loads(out)["value"] == "83"


def test_convolve_command(capsys):
    code, out, _ = run(capsys, "convolve", "g0@1", "g1@2", "--no-meta")
    assert code == 0
    doc = json.loads(out)
    assert doc == {"d": 4, "coeffs": {"1": "-3", "12": "1"}}
    # feeding the result back in is accepted
    code, out2, _ = run(capsys, "convolve", json.dumps(doc), "g0@0", "--no-meta")
    assert json.loads(out2) == {"d": 5, "coeffs": {"14": "-3", "124": "1"}}


def test_candidates_command(capsys):
    code, out, _ = run(capsys, "candidates", "6", "--ell", "0", "--no-meta")
    assert code == 0
    doc = json.loads(out)
    assert doc["f"] == ["22", "111", "110", "35", "21", "7"]
    assert doc["battery_ok"] and doc["euler_ok"] and doc["gds_ok"]
    assert doc["properties"]["U"]["holds"] is True
    code, out, _ = run(capsys, "candidates", "7", "--no-meta")
    doc = json.loads(out)
    assert doc["f"][6] == "134"
    assert doc["properties"]["B"] == {"holds": False, "witness": 3}


def test_scan_logconv(capsys):
    code, out, _ = run(capsys, "scan", "logconv7", "--n", "8..20")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("n,r1,r2,r3")
    assert len(lines) == 14  # header plus 13 rows
    assert lines[1].split(",")[3] == "25/16"


def test_scan_convexity(capsys):
    code, out, _ = run(capsys, "scan", "convexity5", "--n", "6..12")
    lines = out.splitlines()
    gaps = [line.split(",")[6] for line in lines[1:]]
    # the convexity gap turns negative exactly at n = 8
    assert gaps[0] == "2" and gaps[1] == "1/2" and gaps[2] == "-2"


def test_scan_range_errors(capsys):
    code, _, err = run(capsys, "scan", "logconv7", "--n", "5..7")
    assert code == 2 and "error" in err
    code, _, _ = run(capsys, "scan", "logconv7", "--n", "oops")
    assert code == 2


def test_verify_paper_json_passes(capsys):
    code, out, _ = run(capsys, "verify-paper", "--format", "json", "--no-meta")
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"] is True
    names = {c["name"] for c in doc["checks"]}
    assert {"kalai-form-reduction", "candidate-7d-f6",
            "oracle-gds-residuals"} <= names
    assert all(c["passed"] for c in doc["checks"])
    assert len(doc["table"]) == 14


def test_lattice_cache_round_trip(tmp_path, capsys):
    args = ("flags", "cyclic", "-d", "5", "-n", "7", "--no-meta",
            "--cache-dir", str(tmp_path))
    _, first, _ = run(capsys, *args)
    assert (tmp_path / "cyclic-d5-n7.json").exists()
    _, second, _ = run(capsys, *args)  # served from the cache file
    assert first == second


def test_outputs_are_deterministic(capsys):
    _, first, _ = run(capsys, "scan", "logconv7", "--n", "8..12")
    _, second, _ = run(capsys, "scan", "logconv7", "--n", "8..12")
    assert first == second
    _, a, _ = run(capsys, "candidates", "6", "--ell", "3")
    _, b, _ = run(capsys, "candidates", "6", "--ell", "3")
    assert a == b
