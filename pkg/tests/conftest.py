import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from discguard import PolygonSet, Ring, unit_square  # noqa: E402


@pytest.fixture
def square():
    return unit_square()


@pytest.fixture
def holed_square():
    return PolygonSet([([(0, 0), (1, 0), (1, 1), (0, 1)], [[(0.25, 0.25), (0.75, 0.25), (0.75, 0.75), (0.25, 0.75)]])])


@pytest.fixture
def corners():
    return np.array([(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])


@pytest.fixture
def triangle():
    return PolygonSet([Ring([(0, 0), (3, 0), (0, 4)])])


# One line per acceptance criterion, printed after the run.
ACCEPTANCE = {}


class _Criterion:
    def __init__(self, number, title, limit_s):
        self.number, self.title, self.limit_s = number, title, limit_s
        self.detail = ""

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        over = exc_type is None and elapsed > self.limit_s
        ok = exc_type is None and not over
        note = self.detail
        if over:
            note = f"{note}; over time limit {self.limit_s:g} s".lstrip("; ")
        elif exc_type is not None:
            note = f"{note}; {exc_type.__name__}: {str(exc).splitlines()[0] if str(exc) else ''}".lstrip("; ")
        line = f"criterion {self.number} ({self.title}): {'PASS' if ok else 'FAIL'} [{elapsed:.1f} s] {note}"
        ACCEPTANCE[self.number] = line
        print(line)
        if over:
            pytest.fail(f"criterion {self.number} took {elapsed:.1f} s, limit {self.limit_s:g} s")
        return False


@pytest.fixture
def criterion():
    return _Criterion


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
