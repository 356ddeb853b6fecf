from collections import Counter
from itertools import combinations_with_replacement

import pytest

ACCEPTANCE_LINES: list[str] = []


def brute_sumset(A, h):
    return sorted({sum(c) for c in combinations_with_replacement(A, h)})


def brute_histogram(A, h):
    return dict(Counter(sum(c) for c in combinations_with_replacement(A, h)))


@pytest.fixture
def record_criterion():
    """Record one PASS/FAIL line per acceptance criterion, even when the test fails."""
    def record(label, passed, detail=""):
        line = f"{'PASS' if passed else 'FAIL'}  {label}" + (f"  [{detail}]" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
