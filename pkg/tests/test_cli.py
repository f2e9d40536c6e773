"""Command-line surface: flags, formats, file outputs, exit codes."""

import json
from fractions import Fraction

from d3c.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    lines = text.strip().splitlines()
    header = lines[0].split(",")
    return header, [line.split(",") for line in lines[1:]]


def test_tradeoff_curve_csv(capsys):
    code, out, _ = run(capsys, "tradeoff", "--K", "3", "--r", "2")
    assert code == 0
    header, rows = parse_csv(out)
    assert header == ["c", "L", "segment_kind"]
    expected = [
        (1.0, float(Fraction(1, 3)), "corner"),
        (float(Fraction(4, 3)), float(Fraction(1, 6)), "corner"),
        (2.0, float(Fraction(1, 6)), "flat"),
    ]
    assert len(rows) == len(expected)
    for (c, L, kind), (ec, eL, ekind) in zip(rows, expected):
        assert abs(float(c) - ec) < 1e-11
        assert abs(float(L) - eL) < 1e-11
        assert kind == ekind


def test_tradeoff_resolution_adds_samples(capsys):
    code, out, _ = run(capsys, "tradeoff", "--K", "3", "--r", "2", "--resolution", "4")
    _, rows = parse_csv(out)
    kinds = [row[2] for row in rows]
    assert kinds.count("chord") == 4
    assert kinds.count("flat") == 5


def test_tradeoff_json(capsys):
    code, out, _ = run(capsys, "tradeoff", "--K", "10", "--r", "4.5", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["flat_load"] == "11/90"
    assert len(doc["points"]) == 5


def test_tradeoff_saturation_sweep(capsys):
    code, out, _ = run(capsys, "tradeoff", "--K", "4", "--cstar-sweep")
    assert code == 0
    header, rows = parse_csv(out)
    assert header == ["r", "c_star", "c_equals_r"]
    assert len(rows) == 60  # r = 1.00, 1.05, ..., 3.95
    for r, cs, line in rows:
        assert float(cs) <= float(r) + 1e-12
        assert line == r


def test_tradeoff_requires_r_or_sweep(capsys):
    code, _, err = run(capsys, "tradeoff", "--K", "4")
    assert code == 1
    assert "--r" in err


def test_tradeoff_rejects_bad_r(capsys):
    code, _, err = run(capsys, "tradeoff", "--K", "4", "--r", "4")
    assert code == 1


def test_simulate_golden(tmp_path, capsys):
    out_file = tmp_path / "report.json"
    code, _, _ = run(
        capsys,
        "simulate", "--K", "3", "--N", "6", "--r", "2", "--c", "4/3",
        "--T", "8", "--out", str(out_file),
    )
    assert code == 0
    doc = json.loads(out_file.read_text())
    assert doc["measured"]["storage_space"]["exact"] == "2"
    assert doc["measured"]["computation_load"]["exact"] == "4/3"
    assert doc["measured"]["communication_load"]["exact"] == "1/6"
    assert doc["verification"]["passed"] is True
    assert doc["audit"]["violations"] == []


def test_simulate_cdc(capsys):
    code, out, _ = run(
        capsys, "simulate", "--K", "3", "--N", "6", "--r", "2", "--cdc", "--T", "8"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["measured"]["computation_load"]["exact"] == "2"
    assert doc["measured"]["communication_load"]["exact"] == "1/6"


def test_simulate_direct_g(capsys):
    code, out, _ = run(
        capsys, "simulate", "--K", "4", "--N", "24", "--r", "2", "--g", "1", "--T", "8"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["measured"]["communication_load"]["exact"] == "1/2"


def test_simulate_flag_conflicts(capsys):
    code, _, err = run(capsys, "simulate", "--K", "3", "--N", "6", "--r", "2")
    assert code == 1 and "exactly one" in err
    code, _, err = run(
        capsys, "simulate", "--K", "3", "--N", "6", "--r", "2", "--c", "1", "--g", "1"
    )
    assert code == 1 and "exactly one" in err
    code, _, err = run(
        capsys, "simulate", "--K", "3", "--N", "6", "--r", "2", "--cdc", "--g", "2"
    )
    assert code == 1


def test_simulate_infeasible_exit(capsys):
    code, _, err = run(capsys, "simulate", "--K", "3", "--N", "5", "--r", "2", "--c", "4/3")
    assert code == 2
    assert "smallest admissible file count is 3" in err


def test_usage_errors_exit_one(capsys):
    assert run(capsys, "nonsense")[0] == 1
    assert run(capsys, "tradeoff")[0] == 1  # missing --K
    assert run(capsys, "tradeoff", "--K", "x")[0] == 1
    assert run(capsys)[0] == 1


def test_compare_table(capsys):
    code, out, _ = run(
        capsys,
        "compare", "--K", "3", "--N", "6", "--r", "2", "--g", "2", "--cdc", "--T", "8",
    )
    assert code == 0
    header, rows = parse_csv(out)
    assert header == ["name", "r", "c", "L", "predicted_c", "predicted_L", "verified"]
    assert [row[0] for row in rows] == ["d3c-r2-g2", "cdc-r2"]
    assert [row[6] for row in rows] == ["true", "true"]
    assert abs(float(rows[0][2]) - float(Fraction(4, 3))) < 1e-11
    assert float(rows[1][2]) == 2.0


def test_verify_small(capsys):
    code, out, _ = run(capsys, "verify", "--K", "3")
    assert code == 0
    header, rows = parse_csv(out)
    assert header[:4] == ["K", "r", "g", "N"]
    assert [(row[0], row[1], row[2]) for row in rows] == [
        ("2", "1", "1"),
        ("3", "1", "1"),
        ("3", "2", "1"),
        ("3", "2", "2"),
    ]
    assert all(row[-1] == "true" for row in rows)


def test_sweep_row_count_and_flat_region(capsys):
    code, out, _ = run(
        capsys, "sweep", "--K", "10", "--r", "2,4.5,7", "--resolution", "20"
    )
    assert code == 0
    _, rows = parse_csv(out)
    assert len(rows) == 60
    flat = [row for row in rows if row[0] == "4.5" and float(row[1]) >= 2.9]
    assert len({row[2] for row in flat}) == 1  # constant load past saturation


def test_sweep_with_execution(capsys):
    code, out, _ = run(
        capsys, "sweep", "--K", "4", "--r", "2.5", "--c", "1,5/4", "--execute",
    )
    assert code == 0
    _, rows = parse_csv(out)
    for row in rows:
        assert row[3] == row[2]  # measured equals predicted in this range
        assert row[4] == "true"


def test_inspect_schema(capsys):
    code, out, _ = run(
        capsys, "inspect", "--K", "3", "--N", "6", "--r", "2", "--g", "2", "--T", "8"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["kind"] == "d3c"
    assert doc["params"]["N"] == 6
    assert doc["batches"][0]["files"] == [1, 2]
    code, out, _ = run(capsys, "inspect", "--K", "3", "--N", "6", "--r", "2", "--cdc")
    assert json.loads(out)["kind"] == "cdc"


def test_outputs_byte_identical_across_runs(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for target in (a, b):
        code, _, _ = run(
            capsys,
            "simulate", "--K", "3", "--N", "6", "--r", "2", "--c", "4/3",
            "--T", "8", "--seed", "7", "--out", str(target),
        )
        assert code == 0
    assert a.read_bytes() == b.read_bytes()
