import io
import json

import pytest

from ryser.cli import run
from ryser.design import catalog_entry, format_design, parse_design


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def fano_file(tmp_path):
    path = tmp_path / "fano.des"
    assert call("build", "--name", "fano", "-o", str(path))[0] == 0
    return path


@pytest.fixture
def star_file(tmp_path, fano_file):
    path = tmp_path / "r.des"
    assert call("complement", "-i", str(fano_file), "--block", "0", "-o", str(path))[0] == 0
    return path


def test_catalog_lists_entries():
    code, out = call("catalog")
    assert code == 0
    assert out.splitlines()[0] == "fano v=7 k=3 lambda=1 base=1,2,4"


def test_build_round_trip(fano_file):
    text = fano_file.read_text()
    assert text == format_design(catalog_entry("fano").build())
    assert format_design(parse_design(text)) == text


def test_build_from_difference_set():
    code, out = call("build", "--ds", "7:1,2,4")
    assert code == 0
    assert out == format_design(catalog_entry("fano").build())


@pytest.mark.parametrize(
    "argv",
    [
        ("build",),
        ("build", "--name", "nope"),
        ("build", "--ds", "7-1,2"),
        ("build", "--ds", "3:0,1,2"),
        ("frobnicate",),
        ("scan", "--lam-max", "1", "--r-max", "3"),
        ("verify", "-i", "/nonexistent/file.des"),
    ],
)
def test_usage_errors_exit_2(argv):
    assert call(*argv)[0] == 2


def test_parse_error_exit_2(tmp_path):
    bad = tmp_path / "bad.des"
    bad.write_text("v=7\n0 1 2\n")
    assert call("verify", "-i", str(bad))[0] == 2


def test_verify(fano_file, star_file):
    assert call("verify", "-i", str(fano_file)) == (0, "Symmetric(k=3, lambda=1)\n")
    assert call("verify", "-i", str(star_file)) == (0, "Ryser(lambda=2)\n")


def test_verify_invalid_exit_1(tmp_path):
    path = tmp_path / "x.des"
    path.write_text("v=4\n0 1\n1 2\n2 3\n0 3\n")
    code, out = call("verify", "-i", str(path))
    assert code == 1
    assert out.startswith("Invalid(")


def test_complement_bad_block(fano_file):
    assert call("complement", "-i", str(fano_file), "--block", "9")[0] == 2


def test_params(star_file):
    code, out = call("params", "-i", str(star_file))
    assert code == 0
    lines = out.splitlines()
    assert "rho=2" in lines and "D=0" in lines
    assert "block 0: size=3 t=-1 tau1=3 tau2=0 small" in lines
    assert "eq1 sum 1/(k-lambda): 4 = 4 [pass]" in lines
    assert not any("FAIL" in line for line in lines)


def test_params_on_symmetric_design_exit_1(fano_file):
    assert call("params", "-i", str(fano_file)) == (1, "Symmetric(k=3, lambda=1)\n")


def test_invert(star_file):
    code, out = call("invert", "-i", str(star_file))
    assert code == 0
    assert "det(A^T A): pass (closed=576 direct=576)" in out.splitlines()
    code, out = call("invert", "-i", str(star_file), "--dump")
    lines = out.splitlines()
    header = lines.index("# rows: blocks 0..v-1; columns: points 1 2 4 0 3 5 6")
    assert len(lines[header + 1:]) == 7
    assert lines[header + 1] == "1/3 1/3 1/3 -1/3 -1/3 -1/3 -1/3"


def test_classify(star_file):
    code, out = call("classify", "-i", str(star_file))
    assert code == 0
    assert "type1_by_columns=yes" in out.splitlines()
    assert "D=0" in out.splitlines()
    code, out = call("classify", "-i", str(star_file), "--json")
    assert json.loads(out)["type1_by_columns"] == "yes"


def test_scan_json_and_table():
    code, out = call("scan", "--lam-max", "2", "--r-max", "2", "--type1-only", "--json")
    assert code == 0
    assert out.splitlines() == [
        '{"v": 7, "lambda": 2, "r": 2, "D": 0, "rho": "2/1", "e1": 3, "e2": 4, '
        '"x": 1, "y": 1, "conjecture_ok": true}'
    ]
    code, out = call("scan", "--lam-max", "3", "--r-max", "6")
    assert code == 0
    assert out.splitlines()[0].split()[:4] == ["v", "lambda", "r", "D"]


def test_outputs_are_repeatable(star_file):
    for argv in (("params", "-i", str(star_file)), ("classify", "-i", str(star_file)),
                 ("invert", "-i", str(star_file), "--dump"),
                 ("scan", "--lam-max", "5", "--r-max", "8", "--json")):
        assert call(*argv) == call(*argv)
