import json

import pytest

from triorbit.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_bell_command(capsys):
    assert run_cli(capsys, "bell", "--n", "4") == (0, "15\n")
    assert run_cli(capsys, "bell", "--n", "1") == (0, "1\n")
    assert run_cli(capsys, "bell", "--n", "5") == (0, "52\n")


def test_bell_rejects_out_of_range(capsys):
    code, _ = run_cli(capsys, "bell", "--n", "501")
    assert code == 2


def test_bad_flags_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["bell", "--n", "four"])
    assert exc.value.code == 2


def test_enumerate_counts(capsys):
    code, out = run_cli(capsys, "enumerate", "--n", "2")
    assert code == 0
    assert out.startswith("count 2\n")
    code, out = run_cli(capsys, "enumerate", "--n", "3")
    assert out.startswith("count 5\n")


def test_enumerate_rejects_n1(capsys):
    code, _ = run_cli(capsys, "enumerate", "--n", "1")
    assert code == 2


def test_enumerate_structured_with_partitions(capsys):
    code, out = run_cli(capsys, "enumerate", "--n", "4",
                        "--with-partitions", "--format", "structured")
    assert code == 0
    doc = json.loads(out)
    assert doc["count"] == 15
    assert len(doc["pairs"]) == 15
    labels = {entry["partition"] for entry in doc["pairs"]}
    assert "{1}{2}{3}{4}" in labels
    assert "{1,2,3,4}" in labels


def test_enumerate_deterministic(capsys):
    first = run_cli(capsys, "enumerate", "--n", "4", "--with-partitions")
    second = run_cli(capsys, "enumerate", "--n", "4", "--with-partitions")
    assert first == second


def test_canonicalize_fixed_point(tmp_path, capsys):
    f = tmp_path / "pair.txt"
    f.write_text("2 2\n1 0\n0 0\n\n0 0\n1 0\n")
    code, out = run_cli(capsys, "canonicalize", "--input", str(f))
    assert code == 0
    assert out == "2 2\n1 0\n0 0\n\n0 0\n1 0\n"


def test_canonicalize_with_certificate_and_trace(tmp_path, capsys):
    f = tmp_path / "pair.txt"
    f.write_text("2 5\n3 0\n1 2\n\n1 0\n4 2\n")
    code, out = run_cli(capsys, "canonicalize", "--input", str(f),
                        "--certificate", "--trace")
    assert code == 0
    assert "U:" in out and "Q.X:" in out and "trace (" in out


def test_canonicalize_structured(tmp_path, capsys):
    f = tmp_path / "pair.json"
    f.write_text(json.dumps({"n": 2, "p": 5, "A": [[3, 0], [1, 2]],
                             "B": [[1, 0], [4, 2]]}))
    code, out = run_cli(capsys, "canonicalize", "--input", str(f),
                        "--format", "structured", "--certificate", "--trace")
    assert code == 0
    doc = json.loads(out)
    assert "canonical" in doc and "certificate" in doc
    assert all(set(stage) == {"label", "side", "pair"} for stage in doc["trace"])
    assert "pivots" in doc and "search_steps" in doc


def test_canonicalize_non_free_exits_1(tmp_path, capsys):
    f = tmp_path / "pair.txt"
    f.write_text("2 2\n0 0\n0 0\n\n0 0\n0 0\n")
    code, out = run_cli(capsys, "canonicalize", "--input", str(f))
    assert code == 1
    assert "not free" in out


def test_canonicalize_parse_error_exits_2(tmp_path, capsys):
    f = tmp_path / "pair.txt"
    f.write_text("hello world\n")
    code, _ = run_cli(capsys, "canonicalize", "--input", str(f))
    assert code == 2
    code, _ = run_cli(capsys, "canonicalize", "--input", str(tmp_path / "missing.txt"))
    assert code == 2


def test_canonicalize_p_mismatch(tmp_path, capsys):
    f = tmp_path / "pair.txt"
    f.write_text("2 2\n1 0\n0 0\n\n0 0\n1 0\n")
    code, _ = run_cli(capsys, "canonicalize", "--input", str(f), "--p", "5")
    assert code == 2


def test_canonicalize_unreachable_orbit_exits_1(tmp_path, capsys):
    f = tmp_path / "pair.txt"
    f.write_text("4 2\n"
                 "0 0 0 0\n1 0 0 0\n0 0 0 0\n0 1 0 0\n\n"
                 "1 0 0 0\n0 0 0 0\n0 1 0 0\n0 0 0 0\n")
    code, out = run_cli(capsys, "canonicalize", "--input", str(f))
    assert code == 1
    assert "without a canonical form" in out


def test_convert_pair_to_partition(tmp_path, capsys):
    f = tmp_path / "pair.txt"
    f.write_text("6 2\n"
                 "1 0 0 0 0 0\n0 1 0 0 0 0\n0 0 0 0 0 0\n"
                 "0 0 0 1 0 0\n0 0 0 0 0 0\n0 0 0 0 0 0\n\n"
                 "0 0 0 0 0 0\n0 0 0 0 0 0\n0 1 0 0 0 0\n"
                 "0 0 0 0 0 0\n0 0 0 1 0 0\n0 0 1 0 0 0\n")
    code, out = run_cli(capsys, "convert", "pair-to-partition", "--input", str(f))
    assert code == 0
    assert out.strip() == "{1}{2,3,6}{4,5}"


def test_convert_partition_to_pair(capsys):
    code, out = run_cli(capsys, "convert", "partition-to-pair",
                        "--n", "6", "--partition", "{1}{2,3,6}{4,5}")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "6 2"
    rows = [line.split() for line in lines[1:7]]
    assert rows[0][0] == "1" and rows[1][1] == "1" and rows[3][3] == "1"


def test_convert_identity_pair(tmp_path, capsys):
    f = tmp_path / "pair.txt"
    f.write_text("3 2\n1 0 0\n0 1 0\n0 0 1\n\n0 0 0\n0 0 0\n0 0 0\n")
    code, out = run_cli(capsys, "convert", "pair-to-partition", "--input", str(f))
    assert code == 0
    assert out.strip() == "{1}{2}{3}"


def test_convert_non_canonical_exits_1(tmp_path, capsys):
    f = tmp_path / "pair.txt"
    f.write_text("2 2\n1 0\n1 1\n\n0 0\n0 0\n")
    code, _ = run_cli(capsys, "convert", "pair-to-partition", "--input", str(f))
    assert code == 1


def test_convert_bad_partition_exits_2(capsys):
    code, _ = run_cli(capsys, "convert", "partition-to-pair",
                      "--n", "4", "--partition", "{1,2")
    assert code == 2
    code, _ = run_cli(capsys, "convert", "partition-to-pair",
                      "--n", "4", "--partition", "{1,2}")
    assert code == 2


def test_verify_passing_configuration(capsys):
    code, out = run_cli(capsys, "verify", "--n", "2", "--p", "3", "--exhaustive")
    assert code == 0
    assert "orbits:           2" in out
    assert "overall: pass" in out


def test_verify_structured_output(capsys):
    code, out = run_cli(capsys, "verify", "--n", "2", "--p", "2",
                        "--format", "structured")
    assert code == 0
    doc = json.loads(out)
    assert doc["orbit_count"] == 2 and doc["passed"] is True


def test_verify_with_samples_flags(capsys):
    code, out = run_cli(capsys, "verify", "--n", "3", "--p", "2",
                        "--samples", "50", "--seed", "7")
    assert code == 0
    assert "50 sampled, seed 7" in out


def test_verify_non_prime_exits_2(capsys):
    code, _ = run_cli(capsys, "verify", "--n", "2", "--p", "4")
    assert code == 2


def test_verify_over_budget_exits_2(capsys):
    code, out = run_cli(capsys, "verify", "--n", "5", "--p", "2")
    assert code == 2
    assert "error" in out


def test_verify_determinism(capsys):
    first = run_cli(capsys, "verify", "--n", "2", "--p", "2")
    second = run_cli(capsys, "verify", "--n", "2", "--p", "2")
    assert first == second


def test_budget_env_override(capsys, monkeypatch):
    monkeypatch.setenv("TRIORBIT_BUDGET", "100")
    code, out = run_cli(capsys, "verify", "--n", "2", "--p", "3")
    assert code == 2
    assert "exceed" in out
    monkeypatch.setenv("TRIORBIT_BUDGET", "1000000")
    code, _ = run_cli(capsys, "verify", "--n", "2", "--p", "3")
    assert code == 0


def test_verify_exclusive_flags(capsys):
    code, out = run_cli(capsys, "verify", "--n", "2", "--p", "2",
                        "--exhaustive", "--samples", "10")
    assert code == 2
    assert "mutually exclusive" in out
