import csv
import io
import json

import pytest

from seqbell.cli import run


def capture(capsys, argv):
    code = run(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_thresholds_example(capsys):
    code, out, _ = capture(capsys, ["thresholds", "--n", "3", "--bound", "pnc", "--family", "one-param", "--format", "csv"])
    assert code == 0
    vals = [float(r["threshold"]) for r in rows(out)]
    assert vals == pytest.approx([0.5774, 0.6579, 0.7875, 1.058], abs=5e-4)


def test_bounds_example(capsys):
    code, out, _ = capture(capsys, ["bounds", "--n", "4", "--format", "json"])
    doc = json.loads(out)
    assert code == 0 and set(doc) == {"spec", "data"}
    row = doc["data"][0]
    assert (row["local"], row["pnc"], row["tsirelson"]) == (12, 8, 16.0)
    assert (row["local_bruteforce"], row["pnc_bruteforce"]) == (12, 8)


def test_figure4_csv(capsys):
    code, out, _ = capture(capsys, ["figure", "4", "--format", "csv"])
    data = rows(out)
    assert code == 0 and len(data) == 100
    assert all(float(r["threshold"]) < 1 for r in data)
    assert out.endswith("\n") and "\r" not in out


@pytest.mark.parametrize("which", [1, 2, 3, 4])
def test_figure_headers(capsys, which):
    _, out, _ = capture(capsys, ["figure", str(which), "--format", "csv"])
    header = out.splitlines()[0].split(",")
    for col in ("n", "k", "family", "bound", "alpha_rule"):
        assert col in header


def test_figure3_has_18_rows(capsys):
    _, out, _ = capture(capsys, ["figure", "3", "--format", "csv"])
    assert len(rows(out)) == 18


def test_byte_identical(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run(["figure", "1", "--format", "csv", "--out", str(a)])
    run(["figure", "1", "--format", "csv", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()
    run(["pom", "--n", "2", "--trials", "5000", "--seed", "9", "--format", "json", "--out", str(a)])
    run(["pom", "--n", "2", "--trials", "5000", "--seed", "9", "--format", "json", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_six_significant_digits(capsys):
    _, out, _ = capture(capsys, ["thresholds", "--n", "2", "--bound", "local", "--format", "csv"])
    assert rows(out)[0]["threshold"] == "0.707107"


def test_svg(capsys):
    code, out, _ = capture(capsys, ["figure", "2", "--format", "svg"])
    assert code == 0 and out.startswith("<svg") and "<polyline" in out


def test_usage_errors(capsys):
    assert run(["thresholds"]) == 1
    assert run(["bounds", "--format", "svg"]) == 1
    with pytest.raises(SystemExit) as exc:
        run(["nonsense"])
    assert exc.value.code == 1
    capsys.readouterr()


def test_infeasible_exit_code(capsys):
    code, _, err = capture(capsys, ["thresholds", "--n", "3", "--family", "fixed-alpha", "--alpha", "0.5"])
    assert code == 2 and "infeasible" in err


def test_cascade_and_biased(capsys):
    code, out, _ = capture(capsys, ["cascade", "--n", "3", "--eta", "0.87", "--eta", "0.9", "--format", "csv"])
    data = rows(out)
    assert code == 0 and len(data) == 2
    for r in data:
        assert float(r["numeric"]) == pytest.approx(float(r["closed_form"]), rel=1e-5)
    code, out, _ = capture(capsys, ["biased", "--n", "2", "--eta", "0.8", "--eta", "0.8", "--bias-p", "1", "--format", "csv"])
    assert code == 0 and float(rows(out)[1]["numeric"]) == pytest.approx(2.26274, abs=1e-5)


def test_oracle_command(capsys):
    code, out, _ = capture(capsys, ["oracle", "--n", "3", "--format", "json"])
    row = json.loads(out)["data"][0]
    assert code == 0
    assert row["local_bruteforce"] == 6 and row["pnc_bruteforce"] == 4


def test_verify_json(capsys):
    code, out, _ = capture(capsys, ["verify", "--format", "json"])
    doc = json.loads(out)
    assert code == 0
    assert doc["checks"] and all(c["passed"] for c in doc["checks"])
