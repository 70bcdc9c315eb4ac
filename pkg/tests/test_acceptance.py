"""Acceptance criteria, each at its stated tolerance and time limit.

Run with ``pytest tests/test_acceptance.py -s`` to see one PASS/FAIL line per
criterion.
"""
import pytest

from klein_actions.verify import SUITES, run_suite


@pytest.mark.parametrize("case", sorted(SUITES), ids=[SUITES[c][0] for c in sorted(SUITES)])
def test_criterion(case, capsys):
    r = run_suite(case, seed=0)
    with capsys.disabled():
        print(f"\n[{'PASS' if r['pass'] else 'FAIL'}] criterion {case:2d} {r['name']}: "
              f"{r['elapsed']:.2f}s (limit {r['time_limit']:.0f}s)")
    assert r["checks_pass"], r["report"]
    assert r["within_time_limit"], f"{r['elapsed']:.1f}s over {r['time_limit']}s"
