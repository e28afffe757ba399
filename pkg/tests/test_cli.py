import csv
import io
import json

import pytest

from knsub.cli import main

KEYS = {"command", "inputs", "result", "witnesses", "timing"}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    doc = json.loads(out)
    assert set(doc) == KEYS
    return code, doc


def test_spectrum_zero_in_z8(capsys):
    code, doc = run_json(capsys, "spectrum", "--ring", "zmod:8", "--factors", "8", "--gens", "", "--kmax", "4")
    assert code == 0
    grid = doc["result"]["grid"]
    assert grid[2][2] and not grid[2][1]
    assert doc["witnesses"]["3,2"] == {"r": 2, "x": "1"}


def test_spectrum_table_marks(capsys):
    code, out, _ = run(capsys, "spectrum", "--ring", "zmod:36", "--gens", "12", "--kmax", "3")
    assert code == 0
    assert "✗ r=2 x=3" in out and "✓" in out


def test_spectrum_z36_12(capsys):
    _, doc = run_json(capsys, "spectrum", "--ring", "zmod:36", "--factors", "36", "--gens", "12", "--kmax", "3")
    assert doc["result"]["grid"][1][1] is False


def test_spectrum_improper_is_usage_error(capsys):
    code, _, err = run(capsys, "spectrum", "--ring", "zmod:12", "--gens", "1")
    assert code == 2 and "submodule not proper" in err


@pytest.mark.parametrize("argv", [
    ["spectrum", "--ring", "12"],
    ["spectrum", "--ring", "zmod:1"],
    ["spectrum", "--ring", "zmod:12", "--factors", "8"],
    ["spectrum", "--ring", "zmod:12", "--gens", "1,2"],
])
def test_spectrum_bad_input(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_classify_counts(capsys):
    code, doc = run_json(capsys, "classify", "--ring", "zmod:12", "--factors", "12")
    assert code == 0 and len(doc["result"]["rows"]) == 5
    _, doc = run_json(capsys, "classify", "--ring", "zmod:4", "--factors", "4,2")
    assert len(doc["result"]["rows"]) == 7
    _, doc = run_json(capsys, "classify", "--ring", "zmod:4", "--factors", "")
    assert doc["result"]["rows"] == []


def test_classify_csv(capsys):
    code, out, _ = run(capsys, "classify", "--ring", "zmod:12", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0][0] == "generators" and len(rows) == 6


def test_classify_cap(capsys, monkeypatch):
    monkeypatch.setenv("KNSUB_MAX_MODULE_SIZE", "8")
    assert run(capsys, "classify", "--ring", "zmod:12")[0] == 2


def test_zint_examples(capsys):
    code, doc = run_json(capsys, "zint", "--c", "30", "--k", "2", "--n", "2", "--predicate", "semi-n")
    assert code == 0 and doc["result"]["holds"] is True
    _, doc = run_json(capsys, "zint", "--c", "8", "--k", "2", "--n", "2", "--predicate", "kn-closed")
    assert doc["result"]["holds"] is False and doc["witnesses"] == {"r": 2, "m": 2}
    _, doc = run_json(capsys, "zint", "--c", "6", "--k", "2", "--n", "1", "--predicate", "ideal-kn")
    assert doc["result"]["holds"] is True
    _, doc = run_json(capsys, "zint", "--c", "8", "--k", "2", "--n", "2", "--predicate", "tkn-condition")
    assert doc["result"]["holds"] is False


@pytest.mark.parametrize("argv", [
    ["zint", "--c", "1", "--k", "1", "--n", "1"],
    ["zint", "--c", "6", "--k", "2"],
    ["zint", "--c", "12", "--k", "2", "--n", "2", "--predicate", "tkn-condition"],
])
def test_zint_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_hunt(capsys):
    code, doc = run_json(capsys, "hunt", "--property", "converse-of-T-t0", "--bound", "100")
    assert code == 0 and doc["witnesses"] == {"c": 6, "k": 2, "n": 1, "r": 2, "m": 9}
    _, doc = run_json(capsys, "hunt", "--property", "intersection-of-semi-n-not-semi-n", "--bound", "100")
    assert (doc["witnesses"]["c"], doc["witnesses"]["n"]) == (36, 2)
    code, out, _ = run(capsys, "hunt", "--property", "monotonicity")
    assert code == 0 and "none within bound" in out
    assert run(capsys, "hunt", "--property", "nope")[0] == 2


def test_verify_small_catalog(capsys, tmp_path):
    p = tmp_path / "cat.json"
    p.write_text(json.dumps([{"ring": {"zmod": 6}, "factors": [6]}, {"ring": {"zmod": 8}, "factors": [8]}]))
    code, doc = run_json(capsys, "verify", "--catalog", str(p), "--tier", "all")
    assert code == 0 and doc["result"]["status"] == "PASS"
    assert "T-t1-1[n=1]" in doc["witnesses"]
    code, out, _ = run(capsys, "verify", "--catalog", str(p), "--tier", "scrutiny")
    assert code == 0 and "T-t1-1[n=1]" in out


def test_verify_missing_catalog(capsys, tmp_path):
    code, _, err = run(capsys, "verify", "--catalog", str(tmp_path / "nope.json"))
    assert code == 2 and "cannot read catalog" in err


def test_verify_exit_one_on_verified_failure(capsys, tmp_path, monkeypatch):
    from knsub.harness import suite

    real = suite._run_one

    def sabotaged(name, *args):
        tally = real(name, *args)
        if tally.tier == "verified" and tally.holds:
            tally.fails += 1
        return tally

    monkeypatch.setattr(suite, "_run_one", sabotaged)
    p = tmp_path / "cat.json"
    p.write_text(json.dumps([{"ring": {"zmod": 4}, "factors": [4]}]))
    assert run(capsys, "verify", "--catalog", str(p), "--tier", "verified")[0] == 1


def test_argparse_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["spectrum"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["zint", "--c", "6", "--n", "0"])
    assert exc.value.code == 2
