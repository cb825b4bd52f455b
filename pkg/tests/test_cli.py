import json
import subprocess
import sys

import pytest

from grouprank.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    lines = [ln for ln in out.splitlines() if ln.strip()]
    doc = json.loads(lines[0]) if lines else None
    if code == 0:
        assert len(lines) == 1
    return code, doc, err


def test_envelope(capsys):
    code, doc, _ = run(capsys, "info", "S:3")
    assert code == 0
    assert set(doc) == {"command", "inputs", "results", "versions", "timing"}
    assert doc["command"] == "info" and doc["inputs"]["spec"] == "S:3"
    assert doc["results"]["order"] == 6 and doc["results"]["classes"] == 3
    assert doc["results"]["sylow"]["2"]["normal"] is False
    assert doc["versions"]["backend"] in ("cython", "python")


def test_info_gl2(capsys):
    _, doc, _ = run(capsys, "info", "GL2:3")
    assert doc["results"]["order"] == 48 and doc["results"]["classes"] == 8


@pytest.mark.parametrize("method", ["dixon", "catalog", "hook"])
def test_degrees(capsys, method):
    code, doc, _ = run(capsys, "degrees", "S:4", "--method", method)
    assert code == 0 and doc["results"]["degrees"] == [1, 1, 2, 3, 3]


def test_hook_needs_symmetric(capsys):
    code, _, err = run(capsys, "degrees", "D:4", "--method", "hook")
    assert code == 2 and "S:n" in err


@pytest.mark.parametrize("spec,lo,hi", [("S:4", 45, 107), ("Q8", 11, 11)])
def test_bounds(capsys, spec, lo, hi):
    code, doc, _ = run(capsys, "bounds", spec)
    assert code == 0
    assert (doc["results"]["best_lower"], doc["results"]["best_upper"]) == (lo, hi)


def test_bounds_omega(capsys):
    _, doc, _ = run(capsys, "bounds", "S:5", "--omega", "2", "--method", "catalog")
    entries = {e["name"]: e for e in doc["results"]["entries"]}
    assert entries["omega-closed-form"]["value"] == "120"
    assert doc["results"]["omega"]["source"] == "2 conjectured"
    code, _, _ = run(capsys, "bounds", "S:3", "--omega", "1.5")
    assert code == 2


def test_radical(capsys):
    _, doc, _ = run(capsys, "radical", "C:2", "-p", "2")
    assert doc["results"]["blrad"] == 3
    _, doc, _ = run(capsys, "radical", "S:3", "-p", "3")
    r = doc["results"]
    assert r["closed_form_dims"] == r["generic_dims"] == [4, 2] and r["blrad"] == 10
    code, _, err = run(capsys, "radical", "S:3", "-p", "2")
    assert code == 3 and "not normal" in err
    code, _, _ = run(capsys, "radical", "C:4", "-p", "4")
    assert code == 2


def test_rank_search_and_verify(capsys, tmp_path):
    alg = tmp_path / "c2.json"
    wit = tmp_path / "w.txt"
    assert run(capsys, "emit-algebra", "group", "C:2", "--field", "2", "-o", str(alg))[0] == 0
    code, doc, err = run(capsys, "rank-search", str(alg), "--max", "4", "--witness", str(wit))
    assert code == 0 and doc["results"]["rank"] == 3 and "rank = 3" in err
    code, doc, err = run(capsys, "verify", str(wit), str(alg))
    assert code == 0 and doc["results"]["valid"] and "VALID, length 3" in err
    code, doc, _ = run(capsys, "rank-search", str(alg), "--max", "2")
    assert code == 0 and doc["results"]["rank"] is None


def test_rank_search_refused(capsys, tmp_path):
    alg = tmp_path / "c4.json"
    run(capsys, "emit-algebra", "group", "C:4", "--field", "2", "-o", str(alg))
    code, _, err = run(capsys, "rank-search", str(alg))
    assert code == 3 and "refused" in err


def test_verify_strassen_and_invalid(capsys, tmp_path):
    alg, algo = tmp_path / "m2.json", tmp_path / "s.txt"
    run(capsys, "emit-algebra", "matrix", "2", "-o", str(alg))
    run(capsys, "emit-algorithm", "strassen", "-o", str(algo))
    code, doc, err = run(capsys, "verify", str(algo), str(alg))
    assert code == 0 and "VALID, length 7" in err
    lines = algo.read_text().splitlines()
    k = next(i for i, ln in enumerate(lines) if ln.startswith("w "))
    parts = lines[k].split()
    parts[1] = "5" if parts[1] != "5" else "4"
    lines[k] = " ".join(parts)
    algo.write_text("\n".join(lines) + "\n")
    code, doc, err = run(capsys, "verify", str(algo), str(alg))
    assert code == 2 and doc["results"]["valid"] is False and "INVALID" in err


@pytest.mark.parametrize("kind,arg,field,length", [
    ("matrix", "3", "Q", 49), ("interp", "1,0,1", "5", 3), ("dft", "A:2,2", "3", 4),
    ("decomposition", "S:3", "Q", 9), ("trivial", "C:3", "2", 9),
])
def test_emit_algorithm(capsys, tmp_path, kind, arg, field, length):
    out = tmp_path / "a.txt"
    code, doc, _ = run(capsys, "emit-algorithm", kind, arg, "--field", field, "-o", str(out))
    assert code == 0 and doc["results"]["length"] == length and out.exists()


def test_interp_refused(capsys, tmp_path):
    code, _, _ = run(capsys, "emit-algorithm", "interp", "1,1,0,1", "--field", "2", "-o", str(tmp_path / "x"))
    assert code == 3


def test_mul(capsys):
    _, doc, _ = run(capsys, "mul", "C:4", "--field", "5", "--x", "1,1,0,0", "--y", "1,1,0,0", "--method", "all")
    r = doc["results"]
    assert r["product"] == ["1", "2", "1", "0"] and r["agree"]
    _, doc, _ = run(capsys, "mul", "C:16", "--field", "17", "--method", "ntt", "--bench", "--pairs", "5")
    c = doc["results"]["counts"]
    assert c["naive"]["bilinear_per_product"] == 256 and c["ntt"]["bilinear_per_product"] == 16
    assert "ntt_seconds" in doc["timing"]
    code, _, _ = run(capsys, "mul", "C:4", "--x", "1,0,0,0")
    assert code == 1
    code, _, _ = run(capsys, "mul", "S:3", "--method", "ntt", "--field", "7")
    assert code == 2


def test_mul_with_map_file(capsys, tmp_path):
    m = tmp_path / "s3.map"
    assert run(capsys, "emit-map", "S:3", "--field", "7", "-o", str(m))[0] == 0
    code, doc, _ = run(capsys, "mul", "S:3", "--field", "7", "--method", "decomposed", "--map", str(m), "--bench")
    assert code == 0 and doc["results"]["counts"]["decomposed"]["bilinear_per_product"] == 9
    code, _, _ = run(capsys, "mul", "S:3", "--field", "5", "--method", "decomposed", "--map", str(m))
    assert code == 2


def test_schonhage(capsys):
    _, doc, _ = run(capsys, "schonhage", "2", "8")
    assert abs(float(doc["results"]["root"]) - 3) < 1e-9
    code, _, _ = run(capsys, "schonhage", "1,1", "5")
    assert code == 2


def test_usage_and_validation_codes(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["radical", "C:2"])
    assert exc.value.code == 1
    code, doc, _ = run(capsys, "info", "Z:9")
    assert code == 2 and doc is None
    code, _, _ = run(capsys, "verify", "/nonexistent/a", "/nonexistent/b")
    assert code == 2


def test_deterministic_results(capsys):
    docs = [run(capsys, "mul", "A:6,2", "--field", "13", "--method", "all", "--seed", "3")[1] for _ in range(2)]
    assert docs[0]["results"] == docs[1]["results"]
    docs = [run(capsys, "bounds", "S:4")[1] for _ in range(2)]
    assert docs[0]["results"] == docs[1]["results"]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "grouprank.cli", "info", "C:5"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["order"] == 5
