from freqop.verify import run_all


def test_all_suites_pass_at_defaults():
    results = run_all(seed=42)
    assert len(results) == 9
    assert all(r.failures == 0 for r in results)
    assert all(r.cases > 0 for r in results)


def test_runs_are_deterministic():
    assert run_all(seed=11) == run_all(seed=11)


def test_overtight_tolerance_reports_failures():
    results = run_all(seed=42, tolerance=1e-16)
    assert sum(r.failures for r in results) > 0
