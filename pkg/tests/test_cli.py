import io
import json
import re
import subprocess
import sys

import pytest

from arithdyn.cli import load_config, main, parse_map_document, to_document
from arithdyn.cli.config import parse_height_bound
from arithdyn.errors import InvalidParameterError, ParseError
from arithdyn.zoo import zoo_get


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run(*argv, "--format", "json")
    assert code == 0, err
    return json.loads(out)


def test_degseq_gs02():
    doc = run_json("degseq", "--zoo", "gs02", "--param", "d=2", "--nmax", "3")
    assert [r["degree"] for r in doc["rows"]] == [3, 9, 27]
    code, out, _ = run("degseq", "--zoo", "gs02", "--param", "d=2", "--nmax", "3")
    assert code == 0 and re.search(r"^3\s+27$", out, re.M)


def test_lemma_command():
    doc = run_json("lemma", "3", "1", "1", "1")
    vals = {r["quantity"]: r["value"] for r in doc["rows"]}
    assert abs(vals["alpha"] - 2.61803398875) < 1e-10 and vals["alpha"] == vals["beta"]
    assert all(v < 1e-9 for k, v in vals.items() if k.startswith("residual"))


def test_orbit_command():
    code, out, _ = run("orbit", "--zoo", "henon", "--param", "a=1,b=0",
                       "--point", "(1,2)", "--nmax", "3")
    assert code == 0
    rows = [ln for ln in out.splitlines() if re.match(r"^\d", ln)]
    assert len(rows) == 4 and "(27, 734)" in rows[-1]


def test_zoo_listing_command():
    doc = run_json("zoo")
    assert "henon" in [r["name"] for r in doc["rows"]]


def test_other_commands_run():
    assert run_json("dyndeg", "--zoo", "henon", "--nmax", "4")["meta"]["delta1_exact"] == 2
    top = run_json("topdeg", "--zoo", "monomial", "--param", "matrix=[[1,1],[1,0]]")
    assert top["meta"]["value"] == 1
    arith = run_json("arithdeg", "--zoo", "henon", "--point", "(1,2)", "--nmax", "12",
                     "--lemma", "2.5", "2", "2", "1")
    assert 1.9 < arith["meta"]["lower"]["ratio"] <= 2.0
    assert "ell" in arith["meta"]
    per = run_json("periodic", "--zoo", "henon", "--param", "a=1,b=-1",
                   "--height-bound", "log(3)", "--period-bound", "2")
    assert len(per["rows"]) == 4
    dml = run_json("dml", "--zoo", "shift", "--point", "(-3)", "--poly", "x", "--nmax", "10")
    assert [r["n"] for r in dml["rows"]] == [3] and dml["meta"]["residual"] == [3]
    dens = run_json("density", "--zoo", "monomial", "--param", "matrix=[[2,0],[0,2]]",
                    "--point", "(2,4)", "--nmax", "5", "--degree", "2")
    assert dens["rows"][0]["status"] == "curve"
    full = run_json("orbit", "--zoo", "swap", "--point", "(1,2)", "--nmax", "2", "--full")
    assert [r["n"] for r in full["rows"]] == [-2, -1, 0, 1, 2]


def test_byte_identical_json_for_fixed_seed():
    args = ["topdeg", "--zoo", "monomial", "--param", "matrix=[[1,1],[1,0]]",
            "--method", "fiber-sampling", "--prime-count", "2",
            "--samples-per-prime", "5", "--format", "json"]
    a = run(*args, "--seed", "4")
    b = run(*args, "--seed", "4")
    assert a[0] == 0 and a[1] == b[1]
    assert json.loads(a[1])["meta"]["value"] == 1


_NUM = re.compile(r"-?\d+(?:\.\d+)?(?:e[-+]?\d+)?(?:/\d+)?")


@pytest.mark.parametrize("argv", [
    ("orbit", "--zoo", "henon", "--point", "(1,2)", "--nmax", "5"),
    ("arithdeg", "--zoo", "henon", "--point", "(1,2)", "--nmax", "8"),
    ("dyndeg", "--zoo", "cremona", "--nmax", "4"),
    ("lemma", "3", "2", "1", "1")])
def test_json_and_table_carry_same_numbers(argv):
    code, table, _ = run(*argv)
    doc = run_json(*argv)
    body = [ln for ln in table.splitlines()[2:] if not ln.startswith("#")]
    table_nums = _NUM.findall("\n".join(body))
    json_nums = []
    for row in doc["rows"]:
        for col in doc["columns"]:
            v = row[col]
            json_nums += _NUM.findall(v if isinstance(v, str) else json.dumps(v))
    assert table_nums == json_nums


def test_csv_output():
    code, out, _ = run("degseq", "--zoo", "henon", "--nmax", "3", "--format", "csv")
    assert out == "n,degree\n1,2\n2,4\n3,8\n"


# -- map documents ------------------------------------------------------------------

ROUND_TRIP = [("henon", {}), ("henon", {"a": "2/3", "b": -1}), ("gs02", {"d": 2}),
              ("monomial", {"matrix": [[1, 1], [1, 0]]}),
              ("monomial", {"matrix": [[2, -1], [1, 0]]}), ("cremona", {}),
              ("shift", {"n": 2}), ("swap", {}), ("identity", {"n": 2})]


@pytest.mark.parametrize("name,params", ROUND_TRIP)
def test_zoo_round_trip_through_document(name, params):
    zm = zoo_get(name, **params)
    text = to_document(zm).to_yaml()
    doc, back = parse_map_document(text)
    assert back.projective == zm.projective
    assert back.forward == zm.forward
    if zm.forward is not None:
        assert back.inverse == zm.inverse
    else:
        assert back.projective_inverse == zm.projective_inverse
    assert to_document(back).to_yaml() == text


def test_zoo_reference_document():
    doc, zm = parse_map_document("zoo: {name: henon, params: {a: 1, b: -1}}\n")
    assert zm.projective == zoo_get("henon", a=1, b=-1).projective


def test_document_errors_have_line_and_column():
    text = 'name: bad\nvariables: [x, y]\ncomponents:\n  - "y"\n  - "x + * y"\n'
    with pytest.raises(ParseError) as info:
        parse_map_document(text)
    assert (info.value.line, info.value.column) == (5, 10)
    with pytest.raises(ParseError) as info:
        parse_map_document("components: [x, y\n")
    assert info.value.line is not None
    with pytest.raises(ParseError) as info:
        parse_map_document("zoo: {name: henon}\ncomponents: [y, x]\n")
    assert "mutually exclusive" in str(info.value)
    with pytest.raises(ParseError) as info:
        parse_map_document("name: m\nfoo: 1\ncomponents: [y, x]\n")
    assert info.value.line == 2


def test_document_inverse_is_checked():
    text = "variables: [x, y]\ncomponents: ['y', 'y^2 + x']\ninverse_components: ['x', 'y']\n"
    with pytest.raises(InvalidParameterError):
        parse_map_document(text)


def test_map_file_flag(tmp_path):
    path = tmp_path / "h.yaml"
    path.write_text("name: h\ndimension: 2\nvariables: [x, y]\n"
                    "components: ['y', 'y^2 + x']\ninverse_components: ['y - x^2', 'x']\n")
    doc = run_json("topdeg", "--map", str(path))
    assert doc["meta"]["method"] == "birational-unit"


# -- errors and configuration -----------------------------------------------------------

def test_structured_errors_and_exit_codes(tmp_path):
    code, out, err = run("orbit", "--zoo", "nope", "--point", "(1)")
    assert code == 2 and out == ""
    assert json.loads(err)["error"]["type"] == "InvalidParameterError"
    code, _, err = run("periodic", "--zoo", "henon", "--height-bound", "log(1000)")
    assert code == 4 and json.loads(err)["error"]["cap_name"] == "max_points"
    bad = tmp_path / "bad.yaml"
    bad.write_text("components:\n  - 'y'\n  - 'x +* y'\n")
    code, _, err = run("orbit", "--map", str(bad), "--point", "(1,2)")
    e = json.loads(err)["error"]
    assert code == 2 and e["line"] == 3 and e["column"] == 9
    code, _, _ = run("lemma", "2", "1", "1", "1")
    assert code == 2
    code, _, _ = run("bogus")
    assert code == 2


def test_config_file_and_env(tmp_path, monkeypatch):
    cfg = tmp_path / "run.yaml"
    cfg.write_text("n_max: 2\nformat: csv\n")
    monkeypatch.setenv("ARITHDYN_CONFIG", str(cfg))
    code, out, _ = run("degseq", "--zoo", "henon")
    assert out == "n,degree\n1,2\n2,4\n"
    code, out, _ = run("degseq", "--zoo", "henon", "--nmax", "3", "--format", "csv")
    assert out.endswith("3,8\n")
    assert load_config().n_max == 2
    monkeypatch.delenv("ARITHDYN_CONFIG")
    assert load_config().n_max == 5


def test_config_validation():
    with pytest.raises(InvalidParameterError):
        load_config(overrides={"n_max": 0})
    with pytest.raises(InvalidParameterError):
        load_config(overrides={"format": "xml"})
    assert abs(parse_height_bound("log(100)") - 4.605170185988092) < 1e-15
    assert parse_height_bound("log 3") == parse_height_bound("log(3)")
    assert parse_height_bound("1.5") == 1.5


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "arithdyn", "degseq", "--zoo", "henon",
                           "--nmax", "2", "--format", "csv"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout == "n,degree\n1,2\n2,4\n"
