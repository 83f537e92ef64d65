import csv
import io
import json
import subprocess
import sys

import pytest

from terqf.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_repr():
    code, out, _ = call("repr", "--form", "1,1,1,0,0,0", "--n", "19")
    assert code == 0
    payload = json.loads(out)
    assert payload["count"] == 24 and len(payload["triples"]) == 24


def test_aut_csv():
    code, out, _ = call("aut", "--form", "1,3,4,3,1,0", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 8
    assert json.loads(rows[0]["matrix"])[0][0] in (-1, 1)


def test_orbits_and_theta():
    code, out, _ = call("orbits", "--form", "1,3,4,3,1,0", "--n", "19")
    payload = json.loads(out)
    assert code == 0 and payload["essential_count"] == 2 and sorted(payload["sizes"]) == [4, 8]
    code, out, _ = call("theta", "--form", "1,1,1,0,0,0", "--N", "3")
    assert json.loads(out)["coefficients"] == [1, 6, 12, 8]


def test_density_table_cell():
    code, out, _ = call("density", "--form", "7,15,23,10,2,6", "--p", "2", "--n", "6")
    assert code == 0 and json.loads(out)["value"] == "0"
    code, out, _ = call("density", "--form", "1,1,1,0,0,0", "--p", "2", "--n", "5", "--k", "6")
    assert json.loads(out)["value"] == "3/2"


def test_class_numbers():
    code, out, _ = call("classnum", "--D", "-64")
    assert json.loads(out)["h"] == 2
    code, out, _ = call("classgroup", "--D", "420")
    payload = json.loads(out)
    assert payload["structure"] == "Z2xZ2xZ2" and payload["D"] == -420


def test_siegel_explain():
    code, out, _ = call("siegel", "--form", "1,1,1,0,0,0", "--n", "5", "--explain")
    payload = json.loads(out)
    assert code == 0 and payload["count"] == "24" and payload["integral"]
    assert payload["bad_prime_densities"][0]["p"] == 2


def test_prelist_and_unique():
    code, out, _ = call("prelist", "--form", "5,13,20,-12,4,2")
    payload = json.loads(out)
    assert payload["prelist"] == [5, 13, 16, 21, 32, 37, 85, 93, 133, 253]
    assert payload["spurious"] == [45]
    code, out, _ = call("unique", "--form", "1,3,3,2,0,0", "--N", "2000")
    assert json.loads(out)["values"] == [1, 3, 5, 7, 11, 15, 21, 23, 29, 35, 39, 71, 95]


def test_reproduce_alias_and_list():
    code, out, _ = call("reproduce", "theorem-4.2")
    assert code == 0 and json.loads(out)["verdict"] == "pass"
    code, out, _ = call("reproduce", "--list")
    assert "table1" in json.loads(out)["targets"]


@pytest.mark.parametrize("argv,code", [
    (["repr", "--form", "1,1,1", "--n", "3"], 2),
    (["repr", "--n", "3"], 2),
    (["frobnicate"], 2),
    (["reproduce", "no-such-target"], 2),
    (["repr", "--form", "1,1,1,0,0,3", "--n", "3"], 3),
    (["classnum", "--D", "-5"], 3),
    (["prelist", "--form", "1,1,1,1,1,1"], 3),
    (["density", "--form", "1,1,1,0,0,0", "--p", "4", "--n", "3"], 3),
])
def test_exit_codes(argv, code):
    got, _, err = call(*argv)
    assert got == code
    assert err.startswith("terqf:")


def test_internal_inconsistency_exit_code(monkeypatch):
    from fractions import Fraction

    import terqf.cli as cli
    from terqf.localdensity import siegel_assembly

    def broken(form, n):
        asm = siegel_assembly(form, n)
        asm.count = Fraction(7, 2)
        return asm

    monkeypatch.setattr(cli, "siegel_assembly", broken)
    code, out, _ = call("siegel", "--form", "1,1,1,0,0,0", "--n", "5", "--explain")
    assert code == 4 and json.loads(out)["integral"] is False


def test_mismatch_exit_code(monkeypatch):
    import terqf.reproduce as rep
    data = rep.expected_data()
    saved = data["unique"]["1,3,3,2,0,0"]["values"]
    data["unique"]["1,3,3,2,0,0"]["values"] = saved[:-1]
    try:
        code, out, _ = call("reproduce", "theorem-3.9")
    finally:
        data["unique"]["1,3,3,2,0,0"]["values"] = saved
    payload = json.loads(out)
    assert code == 1 and payload["verdict"] == "fail"
    assert payload["diff"]["values"]["computed"][-1] == 95


def test_output_is_deterministic():
    a = call("reproduce", "table1")[1]
    b = call("reproduce", "table1")[1]
    assert a == b
    c = call("orbits", "--form", "1,1,1,0,0,0", "--n", "54", "--format", "csv")[1]
    assert c == call("orbits", "--form", "1,1,1,0,0,0", "--n", "54", "--format", "csv")[1]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "terqf.cli", "aut", "--form", "7,15,23,10,2,6"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["order"] == 2


def test_catalog_cache_file(tmp_path):
    path = tmp_path / "catalog.json"
    code, out, _ = call("prelist", "--form", "7,15,23,10,2,6", "--catalog", str(path))
    assert code == 0 and path.exists()
    assert json.loads(path.read_text())["format"] == "terqf-class-number-catalog"
    code2, out2, _ = call("prelist", "--form", "7,15,23,10,2,6", "--catalog", str(path))
    assert out2 == out
