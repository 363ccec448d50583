"""CLI surface: row serialization, determinism, exit codes, sweeps."""

import csv
import io
import json
from contextlib import redirect_stderr, redirect_stdout

import pytest

from landaulab import cli_report, landau_estimators


def run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = cli_report.run(argv)
    return code, out.getvalue(), err.getvalue()


def parse_csv(text):
    return list(csv.reader(io.StringIO(text)))


# ---------------------------------------------------------------------------
# row mechanics


def test_round12_and_ratio_invariant():
    row = cli_report.make_row("x", {"n": 3}, 7, 3.14159265358979323, None)
    assert row.predicted == float(f"{3.14159265358979323:.12g}")
    # exact recomputability, comfortably inside the 1e-12 relative budget
    assert row.ratio == row.empirical / row.predicted


def test_json_round_trip_identity():
    code, text, _ = run_cli(["goldbach", "--n", "100", "--cutoff", "1e5", "--format", "json", "--deterministic"])
    assert code == 0
    rows = cli_report.rows_from_json(text)
    assert cli_report.rows_to_json(rows) == text
    obj = json.loads(text)
    assert isinstance(obj, list) and obj[0]["schema_version"] == "1"
    # nulls are explicit, never omitted
    code, text, _ = run_cli(["residue", "--x", "100", "--format", "json", "--deterministic"])
    obj = json.loads(text)[0]
    assert obj["empirical"] is None and "empirical" in obj


def test_csv_header_and_quoting():
    code, text, _ = run_cli(["twin", "--limit", "100", "--cutoff", "1e5", "--deterministic"])
    assert code == 0
    rows = parse_csv(text)
    assert rows[0] == cli_report.CSV_HEADER
    assert rows[1][0] == "1"  # schema_version
    assert rows[1][3] == "8"  # empirical twin count to 100


# ---------------------------------------------------------------------------
# representative commands with oracle-known outputs


def test_goldbach_command_empirical():
    code, text, _ = run_cli(["goldbach", "--n", "100", "--cutoff", "1e5", "--deterministic"])
    assert code == 0
    assert parse_csv(text)[1][3] == "6"


def test_mertens_product_command():
    code, text, _ = run_cli(["mertens", "--kind", "product", "--x", "1000000", "--deterministic"])
    assert code == 0
    row = parse_csv(text)[1]
    ratio = float(row[5])
    assert ratio == pytest.approx(1.0, abs=0.01)


def test_progression_and_residue_commands():
    code, text, _ = run_cli(["progression", "--l", "1", "--d", "4", "--x", "100", "--deterministic"])
    assert code == 0
    assert parse_csv(text)[1][3] == "11"
    code, text, _ = run_cli(["residue", "--x", "1000", "--a", "1", "--deterministic"])
    assert code == 0
    assert float(parse_csv(text)[1][5]) < 1  # ratio against the sqrt(x) log^3 scale


def test_interval_and_products_commands():
    code, text, _ = run_cli(["interval", "--n", "10", "--deterministic"])
    assert code == 0
    assert parse_csv(text)[1][3] == "5"
    code, text, _ = run_cli(
        ["products", "--kind", "window", "--theta", "1", "--w", "3", "--z", "100", "--deterministic"]
    )
    assert code == 0
    aux = dict(kv.split("=", 1) for kv in parse_csv(text)[1][6].split(";"))
    assert "ratio_to_logw_over_logz" in aux and "ratio_to_logz_over_logw" in aux


# ---------------------------------------------------------------------------
# determinism


def test_byte_determinism_fixed_commands():
    for argv in (
        ["goldbach", "--n", "100", "--cutoff", "1e5", "--deterministic"],
        ["mertens", "--kind", "logsum", "--x", "10000", "--deterministic"],
        ["quadratic", "--limit", "1e4", "--cutoff", "1e5", "--format", "json", "--deterministic"],
    ):
        _, first, _ = run_cli(argv)
        _, second, _ = run_cli(argv)
        assert first.encode() == second.encode(), argv


def test_runtime_aux_suppressed_only_when_deterministic():
    _, with_runtime, _ = run_cli(["interval", "--n", "5"])
    assert "runtime_ms" in with_runtime
    _, without, _ = run_cli(["interval", "--n", "5", "--deterministic"])
    assert "runtime_ms" not in without


# ---------------------------------------------------------------------------
# sweeps


def test_sweep_colon_range_row_count():
    code, text, _ = run_cli(["sweep", "goldbach", "--n", "10:30:2", "--cutoff", "1e5", "--deterministic"])
    assert code == 0
    assert len(parse_csv(text)) == 1 + 11


def test_sweep_interval_all_nonempty():
    code, text, _ = run_cli(["sweep", "interval", "--n", "1:100:1", "--deterministic"])
    assert code == 0
    rows = parse_csv(text)[1:]
    assert len(rows) == 100
    assert all(int(r[3]) >= 1 for r in rows)


def test_sweep_comma_list():
    code, text, _ = run_cli(
        ["sweep", "quadratic", "--limit", "1e4,1e5,1e6", "--cutoff", "1e5", "--deterministic"]
    )
    assert code == 0
    rows = parse_csv(text)[1:]
    assert len(rows) == 3
    assert all(r[5] for r in rows)  # ratio column populated


def test_sweep_empty_range_usage_error():
    code, _, err = run_cli(["sweep", "goldbach", "--n", "30:10:2", "--cutoff", "1e5"])
    assert code == 2
    assert "empty sweep range" in err


# ---------------------------------------------------------------------------
# exit codes


def test_unknown_subcommand_exits_2():
    code, _, err = run_cli(["frobnicate"])
    assert code == 2
    assert "usage" in err.lower() or "invalid" in err.lower()


def test_parameter_error_exits_2():
    code, _, err = run_cli(["goldbach", "--n", "101"])  # odd N
    assert code == 2
    assert "error" in err


def test_internal_error_exits_1(monkeypatch):
    def boom(n):
        raise RuntimeError("synthetic failure")

    monkeypatch.setattr(landau_estimators, "square_interval_count", boom)
    code, _, err = run_cli(["interval", "--n", "5"])
    assert code == 1
    assert "internal error" in err


def test_missing_required_flag_exits_2():
    code, _, _ = run_cli(["goldbach"])
    assert code == 2


def test_scientific_notation_int_flags():
    code, text, _ = run_cli(["twin", "--limit", "1e2", "--cutoff", "1e5", "--deterministic"])
    assert code == 0
    assert parse_csv(text)[1][3] == "8"
