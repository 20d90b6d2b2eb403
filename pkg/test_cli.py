# test_cli.py

import json
from pathlib import Path

import numpy as np
import pytest

import cli
from polytransform.matrix_io import parse_matrix, read_matrix
from polytransform.transforms import named_transform

SPECS = Path(__file__).parent / "specs"


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_every_command_is_discovered():
    assert sorted(cli.load_commands()) == ["bench", "derive", "emit", "verify"]


def test_usage_errors(capsys):
    assert run(capsys, "transmogrify")[0] == 2
    assert run(capsys)[0] == 2


# --- emit ---

def test_emit(capsys):
    code, out, _ = run(capsys, "emit", "dft", 1)
    assert (code, out) == (0, "1+0i\n")

    code, out, _ = run(capsys, "emit", "dft", 4)
    assert code == 0
    assert out.splitlines()[1] == "1+0i, 0-1i, -1+0i, 0+1i"

    code, out, _ = run(capsys, "emit", "dct1", 3)
    assert out.splitlines() == ["1+0i, 1+0i, 1+0i", "1+0i, 0+0i, -1+0i", "1+0i, -1+0i, 1+0i"]


def test_emit_to_file(capsys, tmp_path):
    path = tmp_path / "dct4.txt"
    code, out, _ = run(capsys, "emit", "dct4", 8, path)
    assert (code, out) == (0, "")
    np.testing.assert_array_equal(read_matrix(path), named_transform("dct4", 8))


@pytest.mark.parametrize("argv", [("emit", "fft", 4), ("emit", "dft", -1), ("emit", "dct2", 0), ("emit", "dft", "four")])
def test_emit_rejects(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""


# --- verify ---

@pytest.mark.parametrize("algorithm, k, m, factors", [
    ("britanak-rao", 1, 2, 8), ("cooley-tukey", 2, 2, 4), ("wang", 2, 3, 7),
])
def test_verify_single_split(capsys, algorithm, k, m, factors):
    code, out, _ = run(capsys, "verify", algorithm, k, m)
    assert code == 0
    assert f"{factors} factors" in out
    assert "PASS" in out


def test_verify_grid(capsys):
    code, out, _ = run(capsys, "verify", "wang", "--grid")
    assert code == 0
    assert "FAIL" not in out


def test_verify_reports_numerical_failure(capsys):
    code, out, _ = run(capsys, "verify", "britanak-rao", 3, 4, "--tol", "1e-30")
    assert code == 1
    assert "FAIL" in out


@pytest.mark.parametrize("argv", [
    ("verify", "britanak-rao", 2), ("verify", "fftw", 2, 2), ("verify", "wang", 0, 3), ("verify", "wang", 1, 1, "--tol", "0"),
])
def test_verify_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_verify_log_dir(capsys, tmp_path):
    assert run(capsys, "verify", "cooley-tukey", 3, 5, "--log-dir", tmp_path)[0] == 0
    (run_dir,) = list(tmp_path.iterdir())
    events = [json.loads(line) for line in (run_dir / "run.raw.jsonl").read_text().splitlines()]
    assert [e["event"] for e in events][0] == "setup"
    assert [e["event"] for e in events].count("factor") == 4
    assert events[-2]["exit_code"] == 0
    assert (run_dir / "run.readable.log").exists()


# --- bench ---

def test_bench(capsys):
    code, out, _ = run(capsys, "bench", "cooley-tukey", "--sizes", "8", "--reps", 1)
    assert code == 0
    assert "78" in out

    code, out, _ = run(capsys, "bench", "wang", "--sizes", "1,16", "--reps", 1)
    assert code == 0


@pytest.mark.parametrize("argv", [
    ("bench", "cooley-tukey", "--sizes", "0"),
    ("bench", "cooley-tukey", "--sizes", "eight"),
    ("bench", "britanak-rao", "--sizes", "9"),
    ("bench", "cooley-tukey", "--reps", "0"),
])
def test_bench_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


# --- derive ---

def test_derive_to_stdout(capsys):
    code, out, _ = run(capsys, "derive", SPECS / "dft4-radix2.spec")
    assert code == 0
    headers = [line for line in out.splitlines() if line.startswith("#")]
    assert headers == ["# 0 M-part", "# 1 PT direct sum", "# 2 base change B", "# product"]
    product = parse_matrix(out.split("# product\n")[1])
    np.testing.assert_allclose(product, named_transform("dft", 4), atol=1e-12)


def test_derive_emit_factors(capsys, tmp_path):
    code, _, _ = run(capsys, "derive", SPECS / "dft4-britanak.spec", "--emit-factors", tmp_path)
    assert code == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == [
        "00_m-part.txt", "01_pt-direct-sum.txt", "02_base-change-b.txt", "product.txt",
    ]
    np.testing.assert_allclose(read_matrix(tmp_path / "02_base-change-b.txt"), [
        [1, 0, 0, 0],
        [0, 1, 0, 1],
        [0, 0, 1, 0],
        [0, 1, 0, -1],
    ], atol=1e-12)
    np.testing.assert_allclose(read_matrix(tmp_path / "product.txt"), named_transform("dft", 4), atol=1e-12)


def test_derive_polynomial_dct4(capsys):
    code, out, _ = run(capsys, "derive", SPECS / "dct4-wang.spec")
    assert code == 0
    product = parse_matrix(out.split("# product\n")[1])
    np.testing.assert_allclose(product, named_transform("pol-dct4", 4), atol=1e-12)


def test_derive_rejects_a_duplicated_transversal(capsys, tmp_path):
    code, out, _ = run(capsys, "derive", SPECS / "dft4-duplicated.spec", "--emit-factors", tmp_path)
    assert code == 3
    assert out == ""
    assert not list(tmp_path.iterdir())


def test_derive_parse_errors(capsys, tmp_path):
    path = tmp_path / "broken.spec"
    path.write_text("[alpha]\nroots-of-unity 4\n[generator]\n0, 0, one\n[transversal]\n1\n")
    code, _, err = run(capsys, "derive", path)
    assert code == 2
    assert "line 4" in err
    assert run(capsys, "derive", tmp_path / "missing.spec")[0] == 2


def test_derive_log_dir(capsys, tmp_path):
    code, _, _ = run(capsys, "derive", SPECS / "dft4-trivial-transversal.spec", "--log-dir", tmp_path)
    assert code == 0
    (run_dir,) = list(tmp_path.iterdir())
    events = [json.loads(line) for line in (run_dir / "run.raw.jsonl").read_text().splitlines()]
    assert events[0]["event"] == "setup"
    assert events[-1]["event"] == "run_end"
    checks = {e["name"]: e["passed"] for e in events if e["event"] == "check"}
    assert checks == {"transversal": True, "ones-count": True, "reconstruction": True}


def test_derive_rejects_a_dependent_basis(capsys, tmp_path):
    path = tmp_path / "dependent.spec"
    path.write_text(
        "[alpha]\nroots-of-unity 4\n[basis]\n1\n0, 1\n0, 1\n0, 0, 0, 1\n"
        "[generator]\n0, 0, 1\n[transversal]\n1\n0, 1\n"
    )
    code, out, err = run(capsys, "derive", path)
    assert code == 2
    assert out == ""
    assert "line 3" in err


def test_derive_reports_a_numerical_failure(capsys, tmp_path):
    # the Chebyshev target forces a Vandermonde solve that leaves rounding error
    path = tmp_path / "real-points.spec"
    path.write_text("[alpha]\n0.3, 0.7, 1.1, 1.9\n[basis]\nchebyshev-T\n[generator]\n0, 1\n[transversal]\n1\n")
    code, _, _ = run(capsys, "derive", path, "--tol", "1e-30", "--emit-factors", tmp_path / "factors")
    assert code == 1
    assert (tmp_path / "factors" / "product.txt").exists()
    assert run(capsys, "derive", path, "--emit-factors", tmp_path / "factors")[0] == 0
