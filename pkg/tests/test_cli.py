import csv
import io
import json
import math
import subprocess
import sys

import pytest

from riemann_octagon.cli import main, read_config
from riemann_octagon.errors import DomainError
from riemann_octagon.octagon import P_REG


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def parse_csv(text):
    lines = text.splitlines()
    assert lines[0].startswith("# riemann-octagon ")
    return list(csv.DictReader(io.StringIO("\n".join(lines[1:]))))


def test_describe_regular_octagon(capsys):
    code, out, _ = run(capsys, "describe")
    doc = json.loads(out)
    assert code == 0
    assert float(doc["perimeter"]) == pytest.approx(P_REG, rel=1e-14)
    assert doc["angle_Phi"] is None
    assert len(doc["vertices"]) == 8 and len(doc["generators"]) == 4


def test_describe_degrees_matches_radians(capsys):
    _, rad, _ = run(capsys, "describe", "--a", "0.8", "--alpha", repr(math.pi / 3))
    _, deg, _ = run(capsys, "describe", "--a", "0.8", "--alpha", "60", "--degrees")
    r, d = json.loads(rad), json.loads(deg)
    assert float(r["perimeter"]) == pytest.approx(float(d["perimeter"]), rel=1e-14)
    assert float(d["relation_defect"]) < 1e-10


def test_region_violation_exits_2(capsys):
    code, out, err = run(capsys, "describe", "--a", "0.5")
    assert code == 2 and out == "" and "violated" in err
    code, _, err = run(capsys, "orbit", "--perimeter", "20")
    assert code == 2 and "below the minimum" in err


def test_orbit_table_has_constant_perimeter(capsys):
    code, out, _ = run(capsys, "orbit", "--perimeter", "33", "--n", "16")
    rows = parse_csv(out)
    assert code == 0 and len(rows) == 16
    assert all(float(r["perimeter_check"]) == pytest.approx(33.0, rel=1e-11) for r in rows)


def test_output_is_deterministic(capsys, tmp_path):
    outputs = []
    for name in ("one.csv", "two.csv"):
        path = tmp_path / name
        assert run(capsys, "area", "--p-max", "30", "--n", "4", "-o", str(path))[0] == 0
        outputs.append(path.read_bytes())
    assert outputs[0] == outputs[1]


def test_area_rows(capsys):
    code, out, err = run(capsys, "area", "--p-max", "40", "--n", "3")
    rows = parse_csv(out)
    assert code == 0 and err == ""
    assert [r["status"] for r in rows] == ["ok"] * 3
    assert float(rows[0]["A_numeric"]) == 0.0 and rows[0]["A_dilog"] == "nan"
    last = rows[-1]
    assert float(last["A_numeric"]) == pytest.approx(54.324017271100451773, rel=1e-10)
    assert float(last["dAdP_fd"]) == pytest.approx(float(last["dAdP_analytic"]), rel=1e-5)


def test_json_format(capsys):
    code, out, _ = run(capsys, "spectrum", "--n-max", "2", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["columns"] == ["n", "A_n"]
    assert float(doc["rows"][0][1]) == 2 * math.pi


def test_evolve_both_methods(capsys):
    code, out, _ = run(capsys, "evolve", "--tau-min", "-2", "--tau-max", "2", "--n", "9",
                       "--method", "both")
    rows = parse_csv(out)
    assert code == 0 and len(rows) == 9
    assert max(abs(float(r["dJ_rk4"])) for r in rows) < 1e-9


def test_evolve_truncation_exits_3(capsys):
    code, out, err = run(capsys, "evolve", "--tau-min", "-5", "--tau-max", "1", "--n", "7",
                         "--p-max", "30")
    assert code == 3 and "truncated" in err
    assert len(parse_csv(out)) < 7


def test_config_file_supplies_required_option(capsys, tmp_path):
    cfg = tmp_path / "orbit.cfg"
    cfg.write_text("# orbit settings\nperimeter = 30\nn=4  # few samples\n")
    code, out, _ = run(capsys, "orbit", "--config", str(cfg))
    assert code == 0 and len(parse_csv(out)) == 4
    # flags override the file
    code, out, _ = run(capsys, "orbit", "--config", str(cfg), "--n", "6")
    assert len(parse_csv(out)) == 6
    cfg.write_text("colour = blue\n")
    assert run(capsys, "orbit", "--config", str(cfg), "--perimeter", "30")[0] == 2


def test_read_config_rejects_garbage(tmp_path):
    path = tmp_path / "bad.cfg"
    path.write_text("just words\n")
    with pytest.raises(DomainError):
        read_config(path)


def test_validate_negative_control(capsys):
    code, out, err = run(capsys, "validate", "--level", "fast", "--tol", "ac1.perimeter=1e-30")
    doc = json.loads(out)
    assert code == 1 and not doc["passed"]
    assert "FAIL AC-1 " in err and "PASS AC-2 " in err
    ac1 = next(c for c in doc["checks"] if c["key"] == "AC-1")
    assert not ac1["passed"]
    assert run(capsys, "validate", "--tol", "nonsense=1")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "riemann_octagon", "--version"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "0.1.0" in proc.stdout
