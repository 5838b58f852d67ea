import json
import xml.etree.ElementTree as ET

import pytest

from conftest import CASE1, CASE2
from qnyquist import __version__
from qnyquist.cli import EXIT_INPUT, EXIT_OK, EXIT_OUTPUT, EXIT_STRICT, EXIT_VERIFY, main


def test_analyze_stdout(capsys):
    assert main(["analyze", "--tf", CASE2]) == EXIT_OK
    d = json.loads(capsys.readouterr().out)
    assert d["delta_tables"]["start"]["values"][1] == "-872/315"
    assert d["input"]["source_text"] == CASE2


def test_analyze_out_and_reload(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["analyze", "--tf", CASE1, "--out", str(out), "--order", "3"]) == EXIT_OK
    assert capsys.readouterr().out == ""
    d = json.loads(out.read_text())
    assert len(d["delta_tables"]["start"]["values"]) == 4
    # a report can be fed back as input
    assert main(["analyze", "--input", str(out)]) == EXIT_OK
    again = json.loads(capsys.readouterr().out)
    assert again["input"]["document"] == d["input"]["document"]


def test_input_forms(tmp_path, capsys):
    doc = tmp_path / "d.json"
    doc.write_text(json.dumps({"num": ["1"], "den": ["1", "1"], "origin_poles": 1}))
    assert main(["analyze", "--input", str(doc)]) == EXIT_OK
    expr = tmp_path / "e.json"
    expr.write_text(json.dumps({"expression": "1/(s+2)"}))
    assert main(["analyze", "--input", str(expr)]) == EXIT_OK
    capsys.readouterr()


@pytest.mark.parametrize("argv", [
    ["analyze", "--tf", "(s+1"],
    ["analyze", "--tf", "1/0"],
    ["analyze"],
    ["analyze", "--tf", "s+1", "--order", "0"],
    ["analyze", "--input", "/nonexistent/file.json"],
    ["sketch", "--tf", "s+1", "--out", "x.svg", "--omega-range", "5:1"],
])
def test_input_errors(argv, capsys):
    assert main(argv) == EXIT_INPUT
    assert capsys.readouterr().err


def test_parse_error_shows_caret(capsys):
    main(["analyze", "--tf", "s+*2"])
    assert "^" in capsys.readouterr().err


def test_bad_json(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    assert main(["analyze", "--input", str(p)]) == EXIT_INPUT


def test_strict(capsys):
    assert main(["analyze", "--tf", "3"]) == EXIT_OK
    assert main(["analyze", "--tf", "3", "--strict"]) == EXIT_STRICT
    assert "constant" in capsys.readouterr().err
    assert main(["analyze", "--tf", CASE1, "--strict"]) == EXIT_OK  # caveats do not trip it


def test_sketch_outputs(tmp_path, capsys):
    svg, csv_path, rep = tmp_path / "p.svg", tmp_path / "p.csv", tmp_path / "p.json"
    code = main(["sketch", "--tf", CASE2, "--out", str(svg), "--table", str(csv_path),
                 "--report", str(rep), "--samples-per-decade", "20"])
    assert code == EXIT_OK
    ET.parse(svg)
    assert csv_path.read_text().startswith("omega,re,im,modulus,phase_unwrapped")
    assert json.loads(rep.read_text())["asymptote"]["abscissa"] == "-872/81"
    assert "wrote" in capsys.readouterr().out


def test_sketch_unwritable(capsys):
    assert main(["sketch", "--tf", CASE1, "--out", "/nonexistent/dir/p.svg"]) == EXIT_OUTPUT


def test_verify_single(capsys):
    assert main(["verify", "--tf", CASE1]) == EXIT_OK
    assert "all checks passed" in capsys.readouterr().out


def test_verify_fault(capsys):
    assert main(["verify", "--tf", CASE2, "--inject-fault", "delta_table"]) == EXIT_VERIFY
    assert "FAIL" in capsys.readouterr().out
    assert main(["verify", "--trials", "5", "--inject-fault", "delta_table"]) == EXIT_VERIFY


def test_verify_corpus(capsys):
    assert main(["verify", "--trials", "25", "--seed", "3"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "25 random transfer functions, seed 3: all checks passed" in out


def test_version(capsys):
    with pytest.raises(SystemExit) as info:
        main(["--version"])
    assert info.value.code == 0
    assert __version__ in capsys.readouterr().out
