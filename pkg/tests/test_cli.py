"""Command-line surface: schemas, round trips, exit codes."""

import json
import math

import pytest

from heightzeta.cli import main
from heightzeta.counting import CountSeries


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_count_exact_csv(capsys):
    code, out, err = run(capsys, "count", "--pn", "1", "--B", "1,2")
    assert code == 0
    assert out == "B,N\n1,4\n2,8\n"


def test_count_json_format(capsys):
    code, out, _ = run(capsys, "count", "--pn", "2", "--B", "1,3", "--format", "json")
    assert code == 0
    assert json.loads(out) == {"series": [[1, 13], [3, 109]]}


def test_count_csv_reparses(capsys):
    code, out, _ = run(capsys, "count", "--pn", "1", "--B", "2,4,8")
    series = CountSeries.from_csv(out)
    assert [b for b, _ in series] == [2, 4, 8]


def test_height_json(capsys):
    code, out, _ = run(capsys, "height", "--point", "3,5,15")
    assert code == 0
    data = json.loads(out)
    assert data["H"] == "15"
    assert data["h"] == pytest.approx(math.log(15))
    assert data["point"] == [3, 5, 15]
    assert data["local_factors"]["infinity"] == "1/5"
    assert data["local_factors"]["3"] == "1/3"


def test_height_fubini_study_metric(capsys):
    code, out, _ = run(capsys, "height", "--point", "1,1", "--metric", "fs")
    data = json.loads(out)
    assert float(data["H"]) == pytest.approx(math.sqrt(2))


def test_height_rational_input(capsys):
    code, out, _ = run(capsys, "height", "--point", "1/2,1/3")
    data = json.loads(out)
    assert data["point"] == [3, 2]
    assert data["H"] == "3"


def test_enumerate_json_lines(capsys):
    code, out, _ = run(capsys, "enumerate", "--pn", "1", "--B", "1")
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    assert rows == [[0, 1], [1, -1], [1, 0], [1, 1]]


def test_circle(capsys):
    code, out, _ = run(capsys, "circle", "--n", "2", "--B", "10")
    assert (code, out) == (0, "317\n")
    code, out, _ = run(capsys, "circle", "--n", "3", "--B", "1", "--norm", "sup")
    assert out == "27\n"
    code, out, _ = run(capsys, "circle", "--n", "2", "--B", "5/2")
    assert out == "21\n"


def test_zeta_csv(capsys):
    code, out, _ = run(capsys, "zeta", "--pn", "1", "--s", "4", "--B", "1,2")
    lines = out.splitlines()
    assert lines[0] == "B,re,im"
    assert lines[1].startswith("1,4.0,")
    assert lines[2].startswith("2,4.25,")


def test_zeta_s_grid(capsys):
    code, out, _ = run(capsys, "zeta", "--pn", "1", "--s-grid", "2.0,3.0", "--B", "20")
    lines = out.splitlines()
    assert lines[0] == "s,re,im"
    assert len(lines) == 3


def test_fit_round_trip(tmp_path, capsys):
    bounds = [round(10 ** (k / 4)) for k in range(4, 17)]
    code, out, _ = run(capsys, "count", "--pn", "1", "--B", ",".join(map(str, bounds)))
    csv_path = tmp_path / "series.csv"
    csv_path.write_text(out)
    code, out, _ = run(capsys, "fit", "--series", str(csv_path))
    assert code == 0
    fit = json.loads(out)
    assert fit["t"] == 1
    assert abs(fit["a"] - 2) < 0.05
    assert abs(fit["c"] - 12 / math.pi**2) / (12 / math.pi**2) < 0.05


def test_igusa_local_builtin(capsys):
    code, out, _ = run(
        capsys, "igusa-local", "--datum", "builtin:p1-anticanonical",
        "--q", "5", "--s", "2",
    )
    assert code == 0
    data = json.loads(out)
    assert data["exact"] == "156/155"


def test_igusa_global(capsys):
    code, out, _ = run(
        capsys, "igusa-global", "--datum", "builtin:p1-anticanonical",
        "--cutoff", "2000", "--B", "1000000",
    )
    assert code == 0
    data = json.loads(out)
    target = 12 / math.pi**2
    assert abs(data["leading_constant"] - target) / target < 0.01
    assert data["pole_order"] == 1
    assert data["volume_prediction"]["value"] == pytest.approx(
        data["leading_constant"] * 1e6, rel=1e-9
    )


def test_strata_json(capsys):
    code, out, _ = run(
        capsys, "strata", "--datum", "builtin:p1-anticanonical", "--p", "5"
    )
    assert code == 0
    assert json.loads(out) == {"q": 5, "strata": {"": 5, "alpha": 1}}


def test_strata_plain_spec(capsys):
    code, out, _ = run(capsys, "strata", "--pn", "2", "--p", "2")
    assert json.loads(out) == {"q": 2, "strata": {"": 7}}


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.csv"
    code, out, _ = run(
        capsys, "count", "--pn", "1", "--B", "1,2", "--output", str(target)
    )
    assert code == 0 and out == ""
    assert target.read_text() == "B,N\n1,4\n2,8\n"


def test_exit_2_on_malformed_json(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 1, "polys": [')
    code, out, err = run(capsys, "count", "--spec", str(bad), "--B", "5")
    assert code == 2
    assert "line" in err and "column" in err


def test_exit_2_on_bad_flags(capsys):
    code, _, err = run(capsys, "count", "--B", "5")
    assert code == 2
    code, _, err = run(capsys, "zeta", "--pn", "1", "--B", "5")
    assert code == 2


def test_exit_3_on_pole(capsys):
    code, _, err = run(
        capsys, "igusa-local", "--datum", "builtin:p1-anticanonical",
        "--q", "5", "--s", "1/2",
    )
    assert code == 3
    assert "pole" in err


def test_exit_3_on_resource_limit(capsys):
    code, _, err = run(capsys, "strata", "--pn", "3", "--p", "991")
    assert code == 3
    assert "limit" in err


def test_unknown_builtin_datum(capsys):
    code, _, err = run(
        capsys, "igusa-local", "--datum", "builtin:nope", "--q", "5", "--s", "2"
    )
    assert code == 2


def test_determinism_byte_identical(capsys):
    a = run(capsys, "enumerate", "--pn", "2", "--B", "6")
    b = run(capsys, "enumerate", "--pn", "2", "--B", "6")
    assert a == b
    c = run(capsys, "enumerate", "--pn", "2", "--B", "6", "--threads", "3")
    assert c[1] == a[1]
