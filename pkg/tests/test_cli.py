import io
import json
import math

import numpy as np
import pytest

from dyadic_means import cli
from dyadic_means.matrix_means import matrix_to_json, random_spd


def run(argv, monkeypatch=None):
    config = cli.config_from_args(argv)
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(config, out, err)
    return code, out.getvalue(), err.getvalue()


def rows(text):
    lines = [l for l in text.splitlines() if not l.startswith("#")]
    header = lines[0].split(",")
    return [dict(zip(header, l.split(","))) for l in lines[1:]]


def test_refine_example():
    code, out, _ = run(["refine", "--fn", "exp", "--a", "0", "--b", "1", "--nu", "0.3",
                        "--N", "5", "--no-timestamp"])
    assert code == 0
    assert out.splitlines()[0] == ",".join(cli.COLUMNS)
    r = [x for x in rows(out) if x["statement_id"] == "refined-secant"]
    assert [x["j"] for x in r[:-1]] == ["1", "2", "3", "4", "5"]
    final = r[-1]
    assert final["j"] == "" and float(final["margin"]) >= 0 and final["verdict"] == "Holds"
    assert r[0]["lhs"] == ""


def test_converge_example():
    code, out, _ = run(["converge", "--fn", "exp", "--N-max", "8", "--grid", "1025",
                        "--no-timestamp"])
    assert code == 0
    gaps = [float(x["lhs"]) for x in rows(out)]
    assert len(gaps) == 8
    assert all(0.2 <= b / a <= 0.3 for a, b in zip(gaps[2:], gaps[3:]))


def test_matrix_kantorovich_example():
    code, out, _ = run(["matrix", "--check", "kantorovich", "--dim", "3", "--trials", "100",
                        "--seed", "7", "--no-timestamp"])
    r = rows(out)
    assert code == 0 and len(r) == 100 and all(x["verdict"] == "Holds" for x in r)
    assert [int(x["instance_id"]) for x in r] == list(range(100))


def test_timestamp_header():
    _, out, _ = run(["means", "--trials", "1"])
    assert out.startswith("# generated ")


def test_json_output():
    code, out, _ = run(["means", "--trials", "2", "--format", "json", "--no-timestamp"])
    doc = json.loads(out)
    assert code == 0 and len(doc["rows"]) == 18 and set(doc["rows"][0]) == set(cli.COLUMNS)


def test_jobs_do_not_change_output():
    args = ["matrix", "--check", "young", "--trials", "6", "--seed", "3", "--no-timestamp"]
    assert run(args)[1] == run(args + ["--jobs", "3"])[1]


def test_injected_false_statement_exits_one():
    code, _, err = run(["means", "--trials", "1", "--inject-false", "--no-timestamp"])
    assert code == 1 and "injected-false" in err


@pytest.mark.parametrize("argv", [
    ["refine", "--fn", "nope"],
    ["refine", "--fn", "poly:1,0,-1"],
    ["refine", "--fn", "pow:-1", "--a", "-1"],
    ["refine", "--nu", "1.5"],
    ["refine", "--a", "2", "--b", "1"],
    ["converge", "--grid", "1"],
    ["lp", "--p", "2", "--q", "1", "--r", "3"],
    ["means", "--x", "1"],
    ["matrix", "--input", "/nonexistent/file.json"],
])
def test_usage_errors_exit_two(argv):
    code, out, err = run(argv)
    assert code == 2 and out == "" and err.startswith("error:")


def test_argparse_errors_exit_two(capsys):
    assert cli.main(["bogus"]) == 2
    assert cli.main(["refine", "--N", "x"]) == 2


def test_env_tolerance(monkeypatch):
    monkeypatch.setenv(cli.TOL_ENV, "1e-3")
    assert cli.config_from_args(["means"]).tol == 1e-3
    assert cli.config_from_args(["means", "--tol", "1e-6"]).tol == 1e-6
    monkeypatch.setenv(cli.TOL_ENV, "abc")
    assert cli.main(["means"]) == 2


def test_function_spec_families():
    assert cli.parse_function_spec("exp:2").at(1.0) == pytest.approx(math.exp(2))
    assert cli.parse_function_spec("pow:2", -1, 1).shape.is_convex
    assert not cli.parse_function_spec("pow:3", -1, 1).shape.is_convex
    assert cli.parse_function_spec("poly:1,0,-1", assume_convex=True).shape.is_convex
    assert cli.parse_function_spec("young:1,4").at(0.5) == pytest.approx(2.0)
    assert cli.parse_function_spec("harm:1,4").at(0.5) == pytest.approx(1.6)
    assert cli.parse_function_spec("abs:0.5").at(0.0) == 0.5
    with pytest.raises(cli.UsageError):
        cli.parse_function_spec("harm:1,4", 0.0, 3.0)
    with pytest.raises(cli.UsageError):
        cli.parse_function_spec("young:1")


def test_heinz_file_and_matrix_input(tmp_path):
    rng = np.random.default_rng(0)
    A, B = random_spd(3, rng), random_spd(3, rng)
    X = rng.standard_normal((3, 3))
    path = tmp_path / "heinz.json"
    path.write_text(json.dumps({"A": matrix_to_json(A), "B": matrix_to_json(B),
                                "X": matrix_to_json(X)}))
    code, out, _ = run(["refine", "--fn", f"heinz-file:{path}", "--nu", "0.3", "--N", "4",
                        "--no-timestamp"])
    assert code == 0
    code, out, _ = run(["matrix", "--input", str(path), "--no-timestamp"])
    assert code == 0 and {x["instance_id"] for x in rows(out)} == {"0"}
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["matrix", "--input", str(bad)])[0] == 2


def test_lp_input(tmp_path):
    path = tmp_path / "v.json"
    path.write_text(json.dumps({"values": [1, 2, 3]}))
    code, out, _ = run(["lp", "--input", str(path), "--p", "1", "--q", "2", "--r", "inf",
                        "--N", "4", "--no-timestamp"])
    assert code == 0 and all(x["verdict"] == "Holds" for x in rows(out))


def test_plot_data(tmp_path):
    path = tmp_path / "gap.dat"
    run(["converge", "--N-max", "4", "--plot-data", str(path), "--no-timestamp"])
    lines = path.read_text().splitlines()
    assert lines[0].startswith("#") and len(lines) == 5 and lines[1].split()[0] == "1"


def test_non_convex_converge_is_rejected():
    assert run(["converge", "--fn", "poly:0,0,0,1", "--a", "-1"])[0] == 2
