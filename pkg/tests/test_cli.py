import json

import pytest

from cli.command_line import run
from config import AppSettings, EXIT_FAIL_VERDICT, EXIT_INPUT_ERROR, EXIT_SUCCESS

SAMPLES = AppSettings.SAMPLES_DIR


def invoke(capsys, *argv):
    code = run(list(argv) + ["--no-log-file"])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_symbol_table(capsys):
    """Test the table report of a catalog germ"""
    code, out, _ = invoke(capsys, "jet", "symbol", "cusp_x3")
    assert code == EXIT_SUCCESS
    assert out.startswith("Boardman symbol\n")
    assert "(1,1,0)" in out


def test_symbol_json_from_a_sample_file(capsys):
    """Test the JSON report read from a germ file"""
    code, out, _ = invoke(capsys, "jet", "symbol", str(SAMPLES / "cusp_x3.json"), "--format", "json")
    assert code == EXIT_SUCCESS
    report = json.loads(out)
    assert report['symbol'] == [1, 1, 0]
    assert report['kind'] == "map"


def test_foliated_symbol(capsys):
    """Test that a document with leaf_dim is read as a foliated jet"""
    code, out, _ = invoke(capsys, "jet", "symbol", str(SAMPLES / "fold_foliated.json"), "--format", "json")
    assert code == EXIT_SUCCESS
    report = json.loads(out)
    assert report['kind'] == "foliated"
    assert report['ranks_consistent'] is True
    assert len(report['steps']) == 3
    assert all(step['splitting'] for step in report['steps'])


def test_strata_json(capsys):
    """Test the strata table of J^3(2, 1)"""
    code, out, _ = invoke(capsys, "jet", "strata", "--n", "2", "--p", "1", "--k", "3",
                          "--max-codim", "3", "--format", "json")
    assert code == EXIT_SUCCESS
    assert json.loads(out)['strata'] == [
        {'symbol': [2], 'codim': 2},
        {'symbol': [2, 0], 'codim': 2},
        {'symbol': [2, 1], 'codim': 3},
        {'symbol': [2, 1, 0], 'codim': 3},
    ]


def test_strata_csv(capsys):
    """Test the CSV rendering"""
    code, out, _ = invoke(capsys, "jet", "strata", "--n", "2", "--p", "1", "--k", "3",
                          "--max-codim", "3", "--format", "csv")
    assert code == EXIT_SUCCESS
    lines = out.splitlines()
    assert lines[0] == "symbol,codim"
    assert len(lines) == 5
    assert lines[1] == "(2),2"


def test_strata_rejects_non_positive_dimensions(capsys):
    """Test argument validation"""
    code, _, err = invoke(capsys, "jet", "strata", "--n", "0", "--p", "1", "--k", "3", "--max-codim", "3")
    assert code == EXIT_INPUT_ERROR
    assert "must be positive" in err


def test_codim_report(capsys):
    """Test the Jacobian codimension command"""
    code, out, _ = invoke(capsys, "jet", "codim", "cusp_x3", "--format", "json")
    assert code == EXIT_SUCCESS
    report = json.loads(out)
    assert report['codim']['codim'] == 1
    assert report['determinacy_bound'] == 3


def test_zk_command(capsys):
    """Test the Z^k command on x^3"""
    code, out, _ = invoke(capsys, "jet", "zk", "cusp_x3", "--k", "3", "--format", "json")
    assert code == EXIT_SUCCESS
    assert json.loads(out)['member'] is False


def test_openness_fail_exits_one(capsys):
    """Test that leafwise maxima give a FAIL verdict and exit code 1"""
    code, out, _ = invoke(capsys, "fol", "openness", "cap", "--format", "json")
    assert code == EXIT_FAIL_VERDICT
    report = json.loads(out)
    assert report['verdict'] == "FAIL"
    assert report['witnesses']


def test_openness_of_the_extension_passes(capsys):
    """Test --extend on the cap"""
    code, out, _ = invoke(capsys, "fol", "openness", str(SAMPLES / "cap_chart.json"), "--extend",
                          "--format", "json")
    assert code == EXIT_SUCCESS
    assert json.loads(out)['verdict'] == "PASS"


def test_flow_command(capsys):
    """Test both runs from one point of the bowl"""
    code, out, _ = invoke(capsys, "fol", "flow", "bowl", "--start", "0.5,0.3", "--direction", "both",
                          "--format", "json")
    assert code == EXIT_SUCCESS
    runs = json.loads(out)['runs']
    assert [run['status'] for run in runs] == ["Converged", "ExitedBox"]
    assert all(run['monotone'] and run['leafwise'] for run in runs)


def test_flow_start_outside_the_box(capsys):
    """Test start point validation"""
    code, _, err = invoke(capsys, "fol", "flow", "bowl", "--start", "2,0")
    assert code == EXIT_INPUT_ERROR
    assert "outside the box" in err


def test_malformed_json_reports_the_line(capsys, tmp_path):
    """Test that JSON syntax errors carry their position"""
    path = tmp_path / "broken.json"
    path.write_text('{\n  "n": 1,\n  "p": 1\n  "order": 3\n}\n')
    code, out, err = invoke(capsys, "jet", "symbol", str(path))
    assert code == EXIT_INPUT_ERROR
    assert out == ""
    assert "line 4" in err


def test_bad_expression_reports_the_column(capsys, tmp_path):
    """Test that expression errors carry their column"""
    path = tmp_path / "chart.json"
    path.write_text(json.dumps({"n": 1, "q": 0, "box": [[-1, 1]], "expression": "x1 + y"}))
    code, _, err = invoke(capsys, "fol", "classify", str(path))
    assert code == EXIT_INPUT_ERROR
    assert "Unknown identifier 'y'" in err
    assert "column 6" in err


def test_schema_errors_are_input_errors(capsys, tmp_path):
    """Test a coefficient that is not an exact number"""
    path = tmp_path / "germ.json"
    path.write_text(json.dumps({"n": 1, "p": 1, "order": 2,
                                "components": [[{"exponents": [2], "coefficient": "abc"}]]}))
    code, _, err = invoke(capsys, "jet", "symbol", str(path))
    assert code == EXIT_INPUT_ERROR
    assert "coefficient" in err


def test_unknown_source(capsys):
    """Test a name that is neither a file nor a catalog entry"""
    code, _, err = invoke(capsys, "jet", "symbol", "no_such_germ")
    assert code == EXIT_INPUT_ERROR
    assert "no_such_germ" in err


def test_usage_errors_exit_two(capsys):
    """Test that argparse failures map to the input error code"""
    assert run(["jet", "strata", "--n", "2"]) == EXIT_INPUT_ERROR


@pytest.mark.parametrize("argv", [
    ["jet", "symbol", "x3_plus_y2", "--format", "json"],
    ["fol", "classify", "fold", "--format", "json"],
])
def test_reports_are_deterministic(capsys, argv):
    """Test that two identical runs print identical bytes"""
    _, first, _ = invoke(capsys, *argv)
    _, second, _ = invoke(capsys, *argv)
    assert first == second


def test_out_writes_the_report(capsys, tmp_path):
    """Test --out with a JSON target"""
    target = tmp_path / "report.json"
    code, out, _ = invoke(capsys, "jet", "symbol", "cusp_x3", "--format", "json", "--out", str(target))
    assert code == EXIT_SUCCESS
    assert json.loads(target.read_text()) == json.loads(out)


def test_catalog(capsys):
    """Test the catalog listing"""
    code, out, _ = invoke(capsys, "catalog", "--format", "json")
    assert code == EXIT_SUCCESS
    report = json.loads(out)
    assert "cusp_x3" in report['germs']
    assert "fold_model" in report['charts']


def test_bad_tolerance_flag(capsys):
    """Test that tolerances must be positive"""
    code, _, err = invoke(capsys, "fol", "openness", "bowl", "--dedup-radius", "-1")
    assert code == EXIT_INPUT_ERROR
    assert "--dedup-radius" in err
