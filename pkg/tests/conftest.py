import time
from contextlib import contextmanager

import numpy as np
import pytest

# criterion number -> (title, verdict, seconds, limit, detail)
ACCEPTANCE = {}


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@contextmanager
def criterion(number, title, limit):
    """Time an acceptance criterion, record PASS/FAIL, and enforce its runtime limit."""
    start = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        elapsed = time.perf_counter() - start
        ACCEPTANCE[number] = (title, "FAIL", elapsed, limit, f"{type(exc).__name__}: {exc}".splitlines()[0][:120])
        print(f"criterion {number:2d} {title}: FAIL ({elapsed:.2f} s)")
        raise
    elapsed = time.perf_counter() - start
    verdict = "PASS" if elapsed <= limit else "FAIL"
    detail = "" if verdict == "PASS" else f"runtime {elapsed:.2f} s exceeds {limit} s"
    ACCEPTANCE[number] = (title, verdict, elapsed, limit, detail)
    print(f"criterion {number:2d} {title}: {verdict} ({elapsed:.2f} s of {limit} s)")
    assert elapsed <= limit, detail


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, verdict, elapsed, limit, detail = ACCEPTANCE[number]
        line = f"criterion {number:2d} {verdict}  {title}  ({elapsed:.2f} s, limit {limit} s)"
        terminalreporter.write_line(line + (f"  {detail}" if detail else ""))
