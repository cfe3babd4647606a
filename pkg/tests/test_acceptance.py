"""Acceptance checks: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v`` or as a script with
``python3 tests/test_acceptance.py``.
"""
import sys

import pytest

from rbca.repro import run_suite

# (suite, criterion number, runtime limit in seconds or None)
CRITERIA = [
    ("table2", 1, 1),
    ("gsets", 2, 60),
    ("dichotomy", 3, 10),
    ("bsets", 4, 300),
    ("absorbing", 5, 60),
    ("sigma6", 6, 1800),
    ("sigma100", 7, 300),
    ("closed", 8, None),
    ("rule6", 9, 60),
    ("affine", 10, 120),
    ("shift101", 11, 60),
    ("walls", 12, 600),
    ("oracle", 13, 60),
]


def evaluate(name, criterion, limit):
    res = run_suite(name)
    in_time = limit is None or res.seconds < limit
    ok = res.passed and in_time
    budget = "" if limit is None else f" (limit {limit}s)"
    line = f"criterion {criterion:2d} [{name}]: {'PASS' if ok else 'FAIL'} in {res.seconds:.2f}s{budget}"
    return ok, line, res


@pytest.fixture
def report(pytestconfig):
    tr = pytestconfig.pluginmanager.get_plugin("terminalreporter")

    def write(line):
        if tr is not None:
            tr.write_line("")
            tr.write_line(line)
        else:
            print(line)
    return write


@pytest.mark.parametrize("name,criterion,limit", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(name, criterion, limit, report):
    ok, line, res = evaluate(name, criterion, limit)
    report(line)
    for detail in res.lines:
        report("    " + detail)
    assert ok, "\n".join(res.lines)


if __name__ == "__main__":
    failed = 0
    for name, criterion, limit in CRITERIA:
        ok, line, _ = evaluate(name, criterion, limit)
        print(line, flush=True)
        failed += not ok
    sys.exit(1 if failed else 0)
