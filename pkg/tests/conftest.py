import pathlib
import sys
import time

import pytest

sys.path.insert(0, str(pathlib.Path(__file__).parent))

_results: dict[int, list[bool]] = {}
_start = time.monotonic()


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    for name, args in getattr(report, "criteria", ()):
        _results.setdefault(args, []).append(report.passed)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    rep.criteria = [("criterion", m.args[0]) for m in item.iter_markers("criterion")]


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(_results):
        status = "PASS" if all(_results[num]) else "FAIL"
        tr.write_line(f"criterion {num:2d}: {status} ({len(_results[num])} checks)")
    elapsed = time.monotonic() - _start
    tr.write_line(f"session wall time: {elapsed:.1f}s (limit 300s): "
                  f"{'PASS' if elapsed < 300 else 'FAIL'}")
