import pytest

from rqobj import cli
from rqobj.errors import NumericalFailureError
from rqobj.harness.selftest import Check


def test_sample_to_stdout(capsys):
    assert cli.main(["sample", "--object", "rpv", "--dim", "3", "--samples", "2", "--seed", "7"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("# rqobj ")
    assert lines[2] == "p1,p2,p3"
    assert len(lines) == 5


def test_sample_file_byte_identical(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (a, b):
        assert cli.main(["sample", "--object", "rdm", "--dim", "3", "--samples", "5",
                         "--seed", "9", "--out", str(out)]) == 0
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize("argv", [
    ["sample", "--object", "ru", "--method", "zhsl", "--dim", "2"],
    ["sample", "--object", "ket", "--dim", "2"],
    ["sample", "--dim", "2", "--rng", "netlib"],
    ["experiment", "fidelity", "--dims", "2", "--samples", "200"],
    ["experiment", "ppt", "--dims", "5", "--samples", "1000", "--seed", "1"],
    ["experiment", "coherence", "--samples", "1000", "--seed", "1"],
    ["experiment", "nonsense", "--dims", "2", "--seed", "1"],
    ["sample", "--dim", "2", "--out", "/nonexistent-dir/x.csv"],
    [],
])
def test_usage_errors_exit_one(argv, capsys):
    assert cli.main(argv) == 1
    assert capsys.readouterr().err


def test_experiment_to_file(tmp_path):
    out = tmp_path / "ppt.csv"
    assert cli.main(["experiment", "ppt", "--dims", "4", "--samples", "1000", "--seed", "3",
                     "--method", "ginibre", "--out", str(out)]) == 0
    text = out.read_text()
    assert "d,d_b,ppt_fraction,se,samples" in text


def test_numerical_failure_exit_two(monkeypatch, capsys):
    def boom(cfg):
        raise NumericalFailureError("Jacobi did not converge")

    monkeypatch.setitem(cli.EXPERIMENTS, "fidelity", ("rsv", boom))
    assert cli.main(["experiment", "fidelity", "--dims", "2", "--samples", "100", "--seed", "1"]) == 2
    assert "numerical failure" in capsys.readouterr().err


def test_selftest_exit_codes(monkeypatch):
    monkeypatch.setattr(cli, "run_selftest", lambda: [Check("x", 0.0, 1.0, True)])
    assert cli.main(["selftest"]) == 0
    monkeypatch.setattr(cli, "run_selftest", lambda: [Check("x", 2.0, 1.0, False)])
    assert cli.main(["selftest"]) == 3
