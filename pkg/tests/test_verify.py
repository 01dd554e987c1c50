import dataclasses

import numpy as np
import pytest

from primecurtains import verify
from primecurtains.verify import CriterionResult, VerifyContext


@pytest.fixture(scope="module")
def sabotaged_ctx(big_table):
    sums = np.asarray(big_table.prefix_sums, dtype=object) + np.arange(len(big_table), dtype=np.int64)
    bad = dataclasses.replace(big_table, prefix_sums=sums.astype(big_table.prefix_sums.dtype))
    return VerifyContext(table=bad)


def test_sabotaged_prefix_sums_fail_gap_identity(sabotaged_ctx):
    res = verify.check_gap_identity(sabotaged_ctx, samples=10**4)
    assert not res.passed
    assert res.line().startswith("[FAIL]  3.")


def test_sabotaged_series_suite_fails(sabotaged_ctx, capsys):
    results = verify.run_suite("series", sabotaged_ctx)
    by_number = {r.number: r for r in results}
    assert not by_number[3].passed


def test_clean_table_passes_gap_identity(big_table):
    res = verify.check_gap_identity(VerifyContext(table=big_table), samples=10**4)
    assert res.passed, res.line()


def test_report_format():
    results = [
        CriterionResult(1, "alpha", True, "m=1", "t<2", 0.25),
        CriterionResult(12, "beta", False, "m=3", "t<2", 1.0),
    ]
    text = verify.format_report(results)
    lines = text.splitlines()
    assert lines[0] == "[PASS]  1. alpha: measured m=1; required t<2 (0.2s)"
    assert lines[1].startswith("[FAIL] 12. beta")
    assert lines[-1] == "1/2 criteria passed"


def test_unknown_suite():
    with pytest.raises(ValueError):
        verify.run_suite("nope")


def test_suite_membership():
    numbers = []
    ctx = VerifyContext()
    for check in verify.SUITES["numerics"]:
        numbers.append(check(ctx).number)
    assert numbers == [14]
    assert sum(len(v) for v in verify.SUITES.values()) == 14


def test_round_trip_grid_spans_range():
    grid = list(verify.round_trip_grid())
    assert grid[0] == 0 and max(grid) == pytest.approx(1e5) and len(grid) > 30


def test_cli_verify_with_sabotaged_table_exits_nonzero(sabotaged_ctx, monkeypatch, capsys):
    from primecurtains import cli

    monkeypatch.setattr(verify.primes, "table_with_count", lambda count: sabotaged_ctx.prime_table)
    assert cli.main(["verify", "series"]) == 1
    assert "[FAIL]  3." in capsys.readouterr().out
