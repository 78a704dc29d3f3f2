import json

import pytest

from aperiodica import cli
from aperiodica import rudin_shapiro


FIB_RULE = {"alphabet": ["a", "b"], "images": {"a": "ab", "b": "a"}, "seed": "a"}
RS_RULE = {
    "alphabet": ["a", "b", "c", "d"],
    "images": {"a": "ab", "b": "ac", "c": "db", "d": "dc"},
    "seed": "a",
}
FIB_SPEC = {"d": 5, "omega": "golden", "window": {"lo": "1/3", "hi": "4/3"}, "R": "200"}


@pytest.fixture
def files(tmp_path):
    def write(name, payload):
        path = tmp_path / name
        path.write_text(json.dumps(payload))
        return str(path)

    return write


def run_json(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_atlas_both_methods(files, capsys):
    rule = files("fib.json", FIB_RULE)
    code, data = run_json(capsys, ["atlas", "--rule", rule, "-N", "2", "--method", "both"])
    assert code == 0
    assert data["count"] == 3
    assert data["words"] == ["aa", "ab", "ba"]
    assert data["methods_agree"] is True


def test_atlas_rs_row_eight(files, capsys):
    rule = files("rs.json", RS_RULE)
    code, data = run_json(capsys, ["atlas", "--rule", rule, "-N", "8"])
    assert code == 0
    assert data["count"] == 56


def test_atlas_malformed_json(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"alphabet": [')
    assert cli.main(["atlas", "--rule", str(bad), "-N", "2"]) == 2
    assert "error:" in capsys.readouterr().err


def test_atlas_missing_file(capsys):
    assert cli.main(["atlas", "--rule", "/nonexistent.json", "-N", "2"]) == 2


def test_atlas_nonprimitive_rule(files, capsys):
    rule = files("perm.json", {"alphabet": ["a", "b"], "images": {"a": "b", "b": "a"}})
    assert cli.main(["atlas", "--rule", rule, "-N", "2"]) == 1
    assert "Wielandt bound 2" in capsys.readouterr().err


def test_atlas_prefix_cap(files, capsys, monkeypatch):
    monkeypatch.setenv("APERIODICA_MAX_PREFIX", "128")
    rule = files("rs.json", RS_RULE)
    assert cli.main(["atlas", "--rule", rule, "-N", "10", "--method", "window"]) == 2
    assert "prefix cap" in capsys.readouterr().err


def test_exclude_phi(files, capsys):
    rule = files("rs.json", RS_RULE)
    code, data = run_json(capsys, ["exclude", "--rule", rule, "--nmax", "16", "--phi"])
    assert code == 0
    assert data["first_excluding_pair"] == 15
    assert data["status"] == "excluded"
    assert data["lengths_with_palindromes"] == [1, 2, 3, 4, 5, 6, 7, 8, 10, 12, 14]


def test_exclude_quaternary(files, capsys):
    rule = files("rs.json", RS_RULE)
    code, data = run_json(capsys, ["exclude", "--rule", rule, "--nmax", "9"])
    assert code == 0
    assert data["first_excluding_pair"] == 8


def test_exclude_fibonacci_undetermined(files, capsys):
    rule = files("fib.json", FIB_RULE)
    code, data = run_json(capsys, ["exclude", "--rule", rule, "--nmax", "30"])
    assert code == 0
    assert data["status"] == "undetermined"
    assert data["lengths_with_palindromes"] == list(range(1, 31))


def test_exclude_phi_needs_four_letters(files, capsys):
    rule = files("fib.json", FIB_RULE)
    assert cli.main(["exclude", "--rule", rule, "--nmax", "5", "--phi"]) == 2


def test_rs_table_golden(capsys):
    assert cli.main(["rs-table", "--nmax", "20", "--golden"]) == 0


def test_rs_table_golden_mismatch(capsys, monkeypatch):
    rows = rudin_shapiro.golden_table1()
    rows[4] = rudin_shapiro.Table1Row(5, 33, "yes", 24, "yes")
    monkeypatch.setattr(cli.rudin_shapiro, "golden_table1", lambda: rows)
    assert cli.main(["rs-table", "--nmax", "20", "--golden"]) == 1
    err = capsys.readouterr().err
    assert "row 5 count4" in err


def test_rs_table_tsv_prefix(capsys):
    code = cli.main(["rs-table", "--nmax", "5", "--format", "tsv"])
    out = capsys.readouterr().out
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "n\tcount4\tpal4\tcount2\tpal2"
    assert len(lines) == 6
    assert lines[1] == "1\t4\tyes\t2\tyes"


def test_rs_table_rejects_zero(capsys):
    with pytest.raises(SystemExit) as err:
        cli.main(["rs-table", "--nmax", "0"])
    assert err.value.code == 2


def test_modelset_check_window_failing(files, capsys):
    spec = files("bad.json", {**FIB_SPEC, "window": {"lo": "0", "hi": "1"}})
    code, data = run_json(capsys, ["modelset", "--spec", spec, "--action", "check-window"])
    assert code == 0
    assert data["W1"] and data["W2"] and data["W3"]
    assert data["W4"] is False
    assert "0" in data["witnesses"]
    assert data["suggested_shift"] == "1/16"


def test_modelset_check_window_generic(files, capsys):
    spec = files("fib.json", FIB_SPEC)
    code, data = run_json(capsys, ["modelset", "--spec", spec, "--action", "check-window"])
    assert code == 0
    assert data["W4"] is True
    assert data["witnesses"] == []


def test_modelset_generate(files, capsys):
    spec = files("fib.json", FIB_SPEC)
    code, data = run_json(capsys, ["modelset", "--spec", spec, "-R", "100"])
    assert code == 0
    assert data["count"] == len(data["points"])
    assert [entry["letter"] for entry in data["legend"]] == ["a", "b"]
    assert len(data["sequence"]) == data["count"] - 1
    assert "warning" not in data


def test_modelset_generate_nongeneric_warns(files, capsys):
    spec = files("bad.json", {**FIB_SPEC, "window": {"lo": "0", "hi": "1"}})
    code, data = run_json(capsys, ["modelset", "--spec", spec, "-R", "50"])
    assert code == 0
    assert "warning" in data
    assert data["suggested_shift"] == "1/16"
    assert data["count"] > 0


def test_modelset_symmetry(files, capsys):
    spec = files("sym.json", {**FIB_SPEC, "window": {"lo": "-1/2", "hi": "1/2"}})
    code, data = run_json(capsys, ["modelset", "--spec", spec, "--action", "symmetry"])
    assert code == 0
    assert data["centro_symmetry_center"] == "0"
    assert data["inversion_witness"] == {"m": 0, "n": 0, "value": "0"}


def test_modelset_palindromes(files, capsys):
    spec = files("fib.json", FIB_SPEC)
    code, data = run_json(capsys, ["modelset", "--spec", spec, "--action", "palindromes"])
    assert code == 0
    assert data["max_palindrome_length"] >= data["sequence_length"] / 50
    assert data["palindromes"][0]["length"] == data["max_palindrome_length"]


def test_modelset_window_object_endpoints(files, capsys):
    # tau' - 1/2 = 0 + (-1/2)*sqrt(5), tau' + 1/2 = 1 + (-1/2)*sqrt(5)
    spec = files(
        "irr.json",
        {
            "d": 5,
            "omega": "golden",
            "window": {"lo": {"p": "0", "q": "-1/2"}, "hi": {"p": "1", "q": "-1/2"}},
            "R": "150",
        },
    )
    code, data = run_json(capsys, ["modelset", "--spec", spec, "--action", "symmetry"])
    assert code == 0
    assert data["inversion_witness"] is not None


def test_spectrum_free_case(capsys):
    code, data = run_json(capsys, ["spectrum", "--size", "3"])
    assert code == 0
    eigs = data["eigenvalues"]
    assert len(eigs) == 3
    assert eigs[0] == pytest.approx(-(2**0.5), abs=1e-9)
    assert eigs[1] == pytest.approx(0.0, abs=1e-9)
    assert eigs[2] == pytest.approx(2**0.5, abs=1e-9)


def test_spectrum_fibonacci(files, capsys):
    rule = files("fib.json", FIB_RULE)
    code, data = run_json(
        capsys,
        ["spectrum", "--rule", rule, "--values", "a=0,b=1", "--lambda", "2", "--size", "100"],
    )
    assert code == 0
    assert len(data["eigenvalues"]) == 100
    assert data["eigenvalues"] == sorted(data["eigenvalues"])
    assert data["ids"][0][1] == 0.0
    assert data["ids"][-1][1] == 1.0


def test_spectrum_rejects_repeated_values(files, capsys):
    rule = files("fib.json", FIB_RULE)
    code = cli.main(
        ["spectrum", "--rule", rule, "--values", "a=1,b=1", "--lambda", "2", "--size", "5"]
    )
    assert code == 2
    assert "pairwise different" in capsys.readouterr().err


def test_spectrum_rejects_zero_size(capsys):
    with pytest.raises(SystemExit) as err:
        cli.main(["spectrum", "--size", "0"])
    assert err.value.code == 2


def test_spectrum_tsv(capsys):
    code = cli.main(["spectrum", "--size", "4", "--format", "tsv"])
    out = capsys.readouterr().out
    assert code == 0
    assert out.splitlines()[0] == "E\tids"
    assert len(out.splitlines()) == 202


def test_output_file_and_determinism(files, capsys, tmp_path):
    spec = files("fib.json", FIB_SPEC)
    target = tmp_path / "patch.json"
    assert cli.main(["modelset", "--spec", spec, "-R", "80", "-o", str(target)]) == 0
    first = target.read_bytes()
    assert cli.main(["modelset", "--spec", spec, "-R", "80", "-o", str(target)]) == 0
    assert target.read_bytes() == first
    assert json.loads(first)["count"] > 0
