import numpy as np
import pytest

from cbiframe import AlgebraDescriptor
from cbiframe.corpus import worked_example


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def worked():
    return worked_example()


@pytest.fixture
def cc():
    """The commutative algebra C (+) C."""
    return AlgebraDescriptor((1, 1))


@pytest.fixture(params=[(1,), (2,), (1, 1), (1, 2), (2, 2)], ids=lambda b: "blocks" + "x".join(map(str, b)))
def desc(request):
    return AlgebraDescriptor(request.param)


def random_positive(desc, rng):
    a = desc.random(rng)
    return a.H * a


# ---------------------------------------------------------- acceptance summary

_CRITERIA = {}


def _criterion(nodeid):
    name = nodeid.rsplit("::", 1)[-1]
    if "test_acceptance.py" in nodeid and name.startswith("test_criterion_"):
        return int(name.split("_")[2])
    return None


def pytest_runtest_logreport(report):
    n = _criterion(report.nodeid)
    if n is None or (report.when != "call" and not report.failed):
        return
    entry = _CRITERIA.setdefault(n, {"passed": True, "tests": []})
    entry["passed"] = entry["passed"] and not report.failed
    if report.when == "call":
        entry["tests"].append((report.nodeid.rsplit("::", 1)[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        entry = _CRITERIA[n]
        verdict = "PASS" if entry["passed"] else "FAIL"
        failing = [t for t, outcome in entry["tests"] if outcome != "passed"]
        suffix = f"  (failing: {', '.join(failing)})" if failing else ""
        terminalreporter.write_line(f"criterion {n:2d}: {verdict}{suffix}")
