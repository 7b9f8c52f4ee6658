import json
import subprocess
import sys

import pytest

from exactlu import RATIONALS, Matrix, multiply_factors, parse_factor_blocks, parse_matrix_text
from exactlu.cli import main

COUNTEREXAMPLE_TEXT = "2 2 Q\n0 1\n1 0\n"
IDENTITY_TEXT = "2 2 Q\n1 0\n0 1\n"


@pytest.fixture
def counterexample(tmp_path):
    path = tmp_path / "counterexample.txt"
    path.write_text(COUNTEREXAMPLE_TEXT)
    return str(path)


@pytest.fixture
def identity(tmp_path):
    path = tmp_path / "identity.txt"
    path.write_text(IDENTITY_TEXT)
    return str(path)


def test_check_counterexample(counterexample, capsys):
    code = main(["check", counterexample])
    out = capsys.readouterr().out
    assert code == 1
    assert "verdict: no LU factorization" in out
    assert "failure degree: 1" in out
    assert "rank A[{1..k}]" in out


def test_check_json(counterexample, capsys):
    code = main(["check", "--json", counterexample])
    body = json.loads(capsys.readouterr().out)
    assert code == 1
    assert set(body) == {"verdict", "failure_degree", "per_k"}
    assert body["failure_degree"] == 1
    assert body["per_k"][0]["deficiency"] == 1


def test_lu_identity_and_verify(identity, tmp_path, capsys):
    code = main(["lu", identity])
    out = capsys.readouterr().out
    assert code == 0
    assert out.count("---") == 1
    factors = tmp_path / "factors.txt"
    factors.write_text(out)
    blocks = parse_factor_blocks(out)
    assert multiply_factors(blocks) == Matrix.identity(RATIONALS, 2)

    code = main(["verify", identity, str(factors)])
    assert code == 0
    assert capsys.readouterr().out.strip() == "verified"


def test_lu_counterexample_fails_with_report(counterexample, capsys):
    code = main(["lu", counterexample])
    out = capsys.readouterr().out
    assert code == 1
    assert "verdict: no factorization" in out
    assert "failure degree: 1" in out


def test_kw_counterexample(counterexample, capsys):
    code = main(["kw", "--extra", "1", counterexample])
    out = capsys.readouterr().out
    assert code == 0
    blocks = parse_factor_blocks(out)
    assert blocks[0] == Matrix.identity(RATIONALS, 2)
    assert blocks[1] == Matrix(RATIONALS, [[0, 1], [1, 0]])


def test_kw_zero_extra_fails(counterexample, capsys):
    code = main(["kw", "--extra", "0", counterexample])
    assert code == 1
    assert "failure degree: 1" in capsys.readouterr().out


def test_hv_round_trip(counterexample, tmp_path, capsys):
    code = main(["hv", "--extra", "1", counterexample])
    out = capsys.readouterr().out
    assert code == 0
    blocks = parse_factor_blocks(out)
    assert blocks[0].rows == 2 and blocks[0].cols == 3
    factors = tmp_path / "factors.txt"
    factors.write_text(out)
    assert main(["verify", counterexample, str(factors)]) == 0
    capsys.readouterr()

    assert main(["hv", "--extra", "0", counterexample]) == 1
    assert "failure degree: 1" in capsys.readouterr().out


def test_kw_requires_extra(counterexample, capsys):
    with pytest.raises(SystemExit) as info:
        main(["kw", counterexample])
    assert info.value.code == 2


def test_lu_rejects_extra(identity):
    with pytest.raises(SystemExit) as info:
        main(["lu", "--extra", "1", identity])
    assert info.value.code == 2


def test_negative_extra_rejected(counterexample):
    with pytest.raises(SystemExit) as info:
        main(["kw", "--extra", "-1", counterexample])
    assert info.value.code == 2


def test_trace_lines(counterexample, capsys):
    code = main(["kw", "--extra", "1", "--trace", counterexample])
    out = capsys.readouterr().out
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "k=1 pivot=(1,2) priority=2"
    assert lines[1] == "k=2 pivot=(2,1) priority=2"
    # traced output still parses as a factor stream
    blocks = parse_factor_blocks(out)
    assert len(blocks) == 2


def test_trace_pivot_none(tmp_path, capsys):
    path = tmp_path / "zero.txt"
    path.write_text("2 2 Q\n0 0\n0 0\n")
    main(["lu", "--trace", str(path)])
    out = capsys.readouterr().out
    assert "k=1 pivot=none" in out


@pytest.mark.parametrize("verb", ["ulu", "lul", "plu", "lup"])
def test_decomposition_verbs_round_trip(verb, counterexample, tmp_path, capsys):
    code = main([verb, counterexample])
    out = capsys.readouterr().out
    assert code == 0
    factors = tmp_path / "factors.txt"
    factors.write_text(out)
    assert main(["verify", counterexample, str(factors)]) == 0
    capsys.readouterr()


def test_plu_emits_permutation_line(counterexample, capsys):
    main(["plu", counterexample])
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "[2 1]"


def test_verify_mismatch(counterexample, identity, capsys):
    code = main(["verify", counterexample, identity])
    out = capsys.readouterr().out
    assert code == 1
    assert "mismatch at (1,1): expected 0, actual 1" in out


def test_parse_error_exit_2(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("2 2 Q\n0 1\n1\n")
    code = main(["check", str(path)])
    err = capsys.readouterr().err
    assert code == 2
    assert "line 3" in err


def test_missing_file_exit_2(capsys):
    code = main(["check", "/nonexistent/matrix.txt"])
    assert code == 2
    assert "error:" in capsys.readouterr().err


def test_json_factors_round_trip(counterexample, capsys):
    code = main(["kw", "--extra", "1", "--json", counterexample])
    body = json.loads(capsys.readouterr().out)
    assert code == 0
    assert set(body) == {"verdict", "factors"}
    k, w = body["factors"]
    product = Matrix(RATIONALS, k) @ Matrix(RATIONALS, w)
    assert product == parse_matrix_text(COUNTEREXAMPLE_TEXT)


def test_json_trace_key_present_with_trace(counterexample, capsys):
    main(["kw", "--extra", "1", "--trace", "--json", counterexample])
    body = json.loads(capsys.readouterr().out)
    assert "trace" in body
    assert body["trace"][0]["pivot"] == [1, 2]


def test_json_permutation_factors_expand(counterexample, capsys):
    main(["plu", "--json", counterexample])
    body = json.loads(capsys.readouterr().out)
    assert body["factors"][0] == [["0", "1"], ["1", "0"]]


def test_output_is_deterministic(counterexample, capsys):
    main(["check", counterexample])
    first = capsys.readouterr().out
    main(["check", counterexample])
    second = capsys.readouterr().out
    assert first == second


def test_selftest_cli(capsys):
    code = main(["selftest"])
    out = capsys.readouterr().out
    assert code == 0
    assert "selftest: passed" in out
    assert out.count("failures") == 3


def test_stdin_input(counterexample, capsys, monkeypatch):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO(COUNTEREXAMPLE_TEXT))
    code = main(["check", "-"])
    assert code == 1
    assert "failure degree: 1" in capsys.readouterr().out


def test_console_entry_point_subprocess(tmp_path):
    path = tmp_path / "m.txt"
    path.write_text(IDENTITY_TEXT)
    proc = subprocess.run(
        [sys.executable, "-m", "exactlu", "lu", str(path)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.count("---") == 1
