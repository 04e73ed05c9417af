import csv
import json
import os

import pytest

import dqc.census as census
from dqc.cli import log10_decimal, main, mask_bits


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_log10_decimal_matches_math_log10():
    import math

    for x in (1, 5, 81, 6561, 10**20, 3**200, 19**128):
        assert abs(log10_decimal(x) - len(str(x)) + 1) < 1.0
        if x < 10**15:
            assert abs(log10_decimal(x) - math.log10(x)) < 1e-9


def test_mask_bits_orders_qubit_zero_first():
    assert mask_bits(0b01, 2) == "10"  # bit 0 set -> qubit 0 separable
    assert mask_bits(0b10, 2) == "01"
    assert mask_bits(0b101, 3) == "101"


def test_verify_single_cell(capsys):
    code, out, err = run(capsys, "verify", "--p", "3", "--n", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc["p"] == 3 and doc["n"] == 1 and doc["D"] == 2
    assert doc["total"] == "81"
    assert doc["unit_norm"] == "24"
    assert doc["irreducible"] == "6"
    assert doc["verified"] is True
    assert doc["enumerated"]["irreducible"] == "6"


def test_verify_multiple_cells_gives_array(capsys):
    code, out, _ = run(capsys, "verify", "--p-list", "3,7", "--n", "1")
    assert code == 0
    docs = json.loads(out)
    assert [d["p"] for d in docs] == [3, 7]
    assert all(d["verified"] for d in docs)


def test_verify_rejects_bad_prime(capsys):
    code, _, err = run(capsys, "verify", "--p", "5", "--n", "1")
    assert code == 2
    assert "usage error" in err
    code, _, err = run(capsys, "verify", "--p", "9", "--n", "1")
    assert code == 2


def test_verify_budget_note_and_success(capsys):
    code, out, err = run(capsys, "verify", "--p", "19", "--n", "4", "--budget", "1000")
    assert code == 0
    assert "enumeration skipped" in err
    doc = json.loads(out)
    assert doc["verified"] is True
    assert doc["enumerated"] == {}


def test_verify_mismatch_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(census, "count_irreducible", lambda *a, **k: 1)
    code, _, err = run(capsys, "verify", "--p", "3", "--n", "1")
    assert code == 1
    assert "verification failed" in err


def test_enumerate_budget_exit_code(capsys):
    code, out, err = run(
        capsys, "enumerate", "--p", "19", "--n", "3", "--budget", "100"
    )
    assert code == 3
    assert "budget exceeded" in err
    assert out == ""  # not even a header before the failure


def test_classify_budget_failure_writes_nothing(tmp_path, capsys):
    target = tmp_path / "rows.csv"
    code, _, err = run(
        capsys, "classify", "--p", "19", "--n", "3",
        "--budget", "100", "--out", str(target),
    )
    assert code == 3
    assert "budget exceeded" in err
    assert not target.exists()


def test_budget_env_var(capsys, monkeypatch):
    monkeypatch.setenv("DQC_BUDGET", "100")
    code, _, err = run(capsys, "enumerate", "--p", "19", "--n", "3")
    assert code == 3
    # explicit flag overrides the environment
    monkeypatch.setenv("DQC_BUDGET", "100")
    code, out, _ = run(capsys, "enumerate", "--p", "3", "--n", "1", "--budget", "1000")
    assert code == 0


def test_tables_defaults(capsys):
    code, out, _ = run(capsys, "tables")
    assert code == 0
    lines = out.strip().split("\n")
    rows = list(csv.reader(lines))
    assert rows[0] == [
        "p", "n", "total", "unit_norm", "irreducible",
        "log10_total", "log10_unit_norm", "log10_irreducible",
    ]
    assert len(rows) == 1 + 6 * 4  # six default primes, n = 1..4
    first = rows[1]
    assert first[:5] == ["3", "1", "81", "24", "6"]
    assert first[5] == "1.908"  # log10(81)
    # big cells never overflow to floats: exact digits survive
    last = rows[-1]
    assert last[0] == "31" and last[1] == "4"
    assert last[2] == str(31**32)


def test_tables_json_format(capsys):
    code, out, _ = run(capsys, "tables", "--p", "3", "--n", "2", "--format", "json")
    assert code == 0
    docs = json.loads(out)
    assert docs == [
        {
            "p": 3,
            "n": 2,
            "total": "6561",
            "unit_norm": "2160",
            "irreducible": "540",
            "log10_total": "3.817",
            "log10_unit_norm": "3.334",
            "log10_irreducible": "2.732",
        }
    ]


def test_bloch_export_row_counts(capsys):
    code, out, _ = run(capsys, "bloch", "--p", "7")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "p,X,Y,Z,ex,ey,ez,degenerate_flag"
    assert len(lines) == 1 + 42
    rows = list(csv.reader(lines[1:]))
    for row in rows:
        p, x, y, z = int(row[0]), int(row[1]), int(row[2]), int(row[3])
        assert p == 7
        assert (x * x + y * y + z * z) % 7 == 1
        assert row[7] == "0"
        length = sum(float(row[k]) ** 2 for k in (4, 5, 6))
        assert abs(length - 1.0) < 1e-9


def test_enumerate_irreducible_frozen(capsys):
    code, out, _ = run(
        capsys, "enumerate", "--p", "3", "--n", "1", "--class", "irreducible"
    )
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "p,n,norm_class,amplitudes"
    assert len(lines) == 1 + 6
    assert lines[1] == "3,1,irreducible,0+0i;0+1i"
    amps = [line.split(",")[3] for line in lines[1:]]
    assert amps == sorted(amps)


def test_enumerate_zero_class(capsys):
    code, out, _ = run(capsys, "enumerate", "--p", "3", "--n", "1", "--class", "zero")
    assert code == 0
    lines = out.strip().split("\n")
    assert len(lines) == 1 + 33


def test_classify_summary_to_stdout(capsys):
    code, out, _ = run(capsys, "classify", "--p", "3", "--n", "2")
    assert code == 0
    assert (
        "p=3 n=2 irreducible=540 "
        "{Maximal: 216, Partial: 288, Unentangled: 36}" in out
    )
    assert "p=3 n=2 purity-1-without-factorization: 0" in out


def test_classify_rows_to_file(tmp_path, capsys):
    target = tmp_path / "rows.csv"
    code, _, _ = run(
        capsys, "classify", "--p", "3", "--n", "2", "--out", str(target)
    )
    assert code == 0
    rows = list(csv.reader(target.read_text().strip().split("\n")))
    assert rows[0] == [
        "p", "n", "state", "class", "sum_sq", "reduced_purity", "separable_mask",
    ]
    assert len(rows) == 1 + 540
    kinds = {}
    for row in rows[1:]:
        kinds[row[3]] = kinds.get(row[3], 0) + 1
        assert row[6] in ("00", "10", "01", "11")
    assert kinds == {"Unentangled": 36, "Partial": 288, "Maximal": 216}
    # product rows carry reduced purity 1 and a full mask
    unent = [row for row in rows[1:] if row[3] == "Unentangled"]
    assert all(row[5] == "1" and row[6] == "11" for row in unent)


def test_outputs_byte_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run(capsys, "classify", "--p", "3", "--n", "2", "--out", str(a))
    run(capsys, "classify", "--p", "3", "--n", "2", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_summary_thread_invariant(capsys):
    _, one, _ = run(capsys, "classify", "--p", "3", "--n", "2", "--threads", "1")
    _, four, _ = run(capsys, "classify", "--p", "3", "--n", "2", "--threads", "4")
    assert one == four


def test_verify_output_deterministic(capsys):
    _, first, _ = run(capsys, "verify", "--p", "7", "--n", "1", "--threads", "1")
    _, second, _ = run(capsys, "verify", "--p", "7", "--n", "1", "--threads", "3")
    assert first == second


def test_usage_errors_exit_2():
    for argv in (
        ["verify", "--n", "1"],  # missing prime
        ["verify", "--p", "3"],  # missing qubit count
        ["verify", "--p", "3", "--p-list", "3,7", "--n", "1"],
        ["verify", "--p", "3", "--n", "1", "--n-max", "2"],
        ["verify", "--p", "3", "--n", "1", "--budget", "0"],
        ["verify", "--p", "3", "--n", "0"],
        ["enumerate", "--p", "3", "--n", "1", "--class", "bogus"],
    ):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2


def test_verify_out_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run(
        capsys, "verify", "--p", "3", "--n", "2", "--out", str(target)
    )
    assert code == 0
    assert out == ""
    doc = json.loads(target.read_text())
    assert doc["verified"] is True
    assert doc["enumerated"]["maxent_irreducible"] == "216"
