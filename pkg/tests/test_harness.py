import math

import numpy as np
import pytest

from rqobj.errors import UsageError
from rqobj.harness import ExperimentConfig, dumps, read_table
from rqobj.harness.experiments import (
    cyclic_spacings,
    fit_exponential,
    moment_standard_errors,
    run_coherence_exp,
    run_eigenphase_exp,
    run_fidelity_exp,
    run_moments,
    run_ppt_exp,
    run_sample,
)
from rqobj.harness.selftest import format_report, run_selftest
from rqobj.linalg import unitary_eigenphases
from rqobj.rng import seed_source
from rqobj.unitary import sample_ru


def test_sample_rpv_rows_sum_to_one():
    t = run_sample(ExperimentConfig(object="rpv", method="zhsl", dims=(4,), samples=2, seed=7))
    assert t.columns == ["p1", "p2", "p3", "p4"]
    assert len(t.rows) == 2
    for row in t.rows:
        assert abs(sum(row) - 1.0) < 1e-12


def test_sample_ru_shape():
    t = run_sample(ExperimentConfig(object="ru", method="gso", dims=(2,), samples=1, seed=1))
    assert len(t.rows) == 1 and len(t.rows[0]) == 8
    assert t.columns[:2] == ["u_1_1_re", "u_1_1_im"]


def test_sample_values_round_trip(tmp_path):
    out = tmp_path / "rdm.csv"
    cfg = ExperimentConfig(object="rdm", method="bures", dims=(3,), samples=4, seed=3, out=str(out))
    table = run_sample(cfg)
    back = read_table(out)
    assert back.columns == table.columns
    got = np.array([[float(v) for v in row] for row in back.rows])
    np.testing.assert_array_equal(got, np.array(table.rows))
    assert any("object=rdm" in h and "seed=3" in h for h in back.header)
    assert back.header[0].startswith("rqobj ")


def test_sample_deterministic():
    cfg = ExperimentConfig(object="rsv", method="std", dims=(5,), samples=10, seed=11)
    assert dumps(run_sample(cfg)) == dumps(run_sample(cfg))


def test_invalid_method_lists_options():
    with pytest.raises(UsageError, match="gso, hhr, hurwitz"):
        ExperimentConfig(object="ru", method="zhsl")


@pytest.mark.parametrize("rng", ["mt", "gnu"])
def test_moments_within_five_sigma(rng):
    t = run_moments(ExperimentConfig(object="rn", rng=rng, samples=10**6, seed=5489))
    last = t.rows[-1]
    assert last[0] == 10**6
    se = moment_standard_errors(10**6)
    for name, value in zip(t.columns[1:], last[1:]):
        assert abs(value) < 5 * se[name], name


def test_moments_differ_between_rngs():
    a = run_moments(ExperimentConfig(object="rn", rng="mt", samples=1000, seed=1))
    b = run_moments(ExperimentConfig(object="rn", rng="gnu", samples=1000, seed=1))
    assert a.rows != b.rows


def test_moment_standard_errors_match_simulation():
    # empirical spread of the lag-1 statistic over independent runs
    n, reps = 2000, 400
    vals = []
    for r in range(reps):
        x = seed_source("mt", 1000 + r).u01(n)
        vals.append(np.mean(x[:-1] * x[1:]) - 0.25)
    se = moment_standard_errors(n)["eps11"]
    assert abs(np.std(vals) / se - 1.0) < 0.15


def test_fidelity_dimension_one_exact():
    t = run_fidelity_exp([1], 100, "gauss", seed=3)
    assert t.rows[0][1] == 1.0


def test_fidelity_reproducible():
    assert dumps(run_fidelity_exp([2, 4], 200, "ru", seed=5)) == dumps(
        run_fidelity_exp([2, 4], 200, "ru", seed=5))


def test_fidelity_requires_seed_and_samples():
    with pytest.raises(UsageError):
        run_fidelity_exp([2], 200, "std", seed=None)
    with pytest.raises(UsageError):
        run_fidelity_exp([2], 99, "std", seed=1)


def test_sharding_invariance():
    one = run_fidelity_exp([4], 2000, "std", seed=21, shards=1)
    four = run_fidelity_exp([4], 2000, "std", seed=21, shards=4)
    m1, s1 = one.rows[0][1:3]
    m4, s4 = four.rows[0][1:3]
    assert m1 != m4
    assert abs(m1 - m4) < 3 * math.hypot(s1, s4)


def test_jobs_do_not_change_output():
    serial = run_ppt_exp([2], 1000, "ginibre", seed=8, shards=3, jobs=1)
    parallel = run_ppt_exp([2], 1000, "ginibre", seed=8, shards=3, jobs=2)
    assert dumps(serial) == dumps(parallel)


def test_two_cyclic_spacings_cover_circle():
    src = seed_source("mt", 2)
    for _ in range(50):
        theta = unitary_eigenphases(sample_ru(src, 2, "gso"))
        s = cyclic_spacings(theta)
        assert abs(s.sum() * 2 * math.pi / 2 - 2 * math.pi) < 1e-12
        assert np.all(s >= 0)


def test_eigenphase_table_and_determinism():
    t = run_eigenphase_exp(6, 200, "hhr", seed=4, bins=10)
    phase = [r for r in t.rows if r[0] == "phase"]
    spacing = [r for r in t.rows if r[0] == "spacing"]
    assert len(phase) == 10 and len(spacing) == 50
    assert sum(r[3] for r in phase) == 200 * 6
    assert any(f.startswith("phase_chi2=") for f in t.footer)
    assert dumps(t) == dumps(run_eigenphase_exp(6, 200, "hhr", seed=4, bins=10))


def test_eigenphase_needs_dimension_two():
    with pytest.raises(UsageError):
        run_eigenphase_exp(1, 10, "gso", seed=1)


def test_ppt_table_and_fit_footer():
    t = run_ppt_exp([2, 3], 1000, "std", seed=9)
    assert t.column("d") == [4, 6]
    assert t.footer[0].startswith("fit p=alpha*exp(-beta*d): alpha=")


def test_fit_exponential_recovers_parameters():
    d = np.array([4, 6, 8, 10])
    alpha, beta = fit_exponential(d, 3.0 * np.exp(-0.5 * d))
    assert abs(alpha - 3.0) < 1e-12 and abs(beta - 0.5) < 1e-12
    assert fit_exponential([4, 6], [0.1, 0.0]) is None


def test_ppt_rejects_unknown_method_and_small_samples():
    with pytest.raises(UsageError):
        run_ppt_exp([2], 1000, "hs", seed=1)
    with pytest.raises(UsageError):
        run_ppt_exp([2], 999, "std", seed=1)


def test_coherence_diagonal_only_is_zero():
    t = run_coherence_exp([3, 4], 1000, "ginibre", seed=2, diagonal_only=True)
    for row in t.rows:
        assert row[1] == 0.0 and row[2] == 0.0


def test_selftest_passes_and_is_stable():
    first = format_report(run_selftest())
    assert "FAIL" not in first
    assert first == format_report(run_selftest())


def test_selftest_detects_missing_phase_fix():
    failed = [c for c in run_selftest(hhr_phase_fix=False) if not c.passed]
    assert [c.name for c in failed] == ["ru hhr Haar first-entry marginal KS d=8"]
